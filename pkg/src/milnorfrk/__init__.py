"""Exact mod 2 cohomology computations for Milnor manifolds and their free 2-rank."""

from .algebra import (
    AlgebraElement,
    GradedEndomorphism,
    MilnorFactor,
    PresentedAlgebra,
    complex_milnor,
    endomorphism_from_assignment,
    euler_characteristic,
    involutive_automorphism_search,
    milnor_product,
    poincare_series,
    projective_space,
    real_milnor,
    ring_from_json,
    ring_to_json,
    tensor,
)
from .bounds import (
    NOT_APPLICABLE,
    adem_yalcin_check,
    complex_exact_rank,
    complex_rank_bound,
    cusick_context,
    eta,
    euler_obstruction,
    khare_nonbounding,
    real_rank_bound,
    theta,
)
from .polynomial import F2Poly, parse_poly
from .spectral import (
    DifferentialAssignment,
    derivation_extend,
    e2_page,
    free_action_obstruction,
    parity_forced_vanishing,
    total_dimension_above,
)
from .steenrod import ideal_steenrod_closed, sq, total_sq
from .zeros import common_zero, restriction

__version__ = "0.1.0"
