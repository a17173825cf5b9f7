"""
Borel pages and the free-action obstruction
===========================================

For a trivial-action (Z/2)^r on a Milnor manifold the first possible
differential is fixed by the images of the generators.  This walks through
which images are even consistent, which are forced to vanish, and which are
ruled out because they share a common zero.
"""

import numpy as np

from milnorfrk.algebra import real_milnor
from milnorfrk.polynomial import parse_poly
from milnorfrk.spectral import (
    DifferentialAssignment,
    consistent_assignment_space,
    derivation_extend,
    e2_page,
    free_action_obstruction,
    obstruction_census,
    page_rows,
    parity_forced_vanishing,
    random_consistent_assignment,
)

fiber = real_milnor(2, 1)

# b^3 = 0 with 3 odd forces d(b) = 0
for c in parity_forced_vanishing(fiber):
    print(c.generator, "nilpotency", c.nilpotency, "forced zero" if c.forced_zero else "free")

# linear algebra on the relation defects: only the zero assignment survives here
print("consistent assignments for RH_{2,1}:", 2 ** len(consistent_assignment_space(fiber, 2)))

# the census counts every parity-consistent assignment and the obstruction's verdict
for rank in (2, 3):
    census = obstruction_census(fiber, rank)
    print(f"rank {rank}: {census.inadmissible}/{census.assignments} inadmissible")

# RH_{3,3} has a 3-dimensional space of consistent differentials at rank 2
fiber = real_milnor(3, 3)
space = consistent_assignment_space(fiber, 2)
print("RH_{3,3}: consistent space has dimension", len(space))
rng = np.random.default_rng(5)
assignment = random_consistent_assignment(fiber, 2, rng)
print("sampled images:", [str(p) for p in assignment.images])
print(free_action_obstruction(fiber, 2, assignment).reason)

# images sharing the zero (0, 1) collapse on that subgroup
shared = DifferentialAssignment((parse_poly("x1^2", 2), parse_poly("x1^2", 2)), 2)
verdict = free_action_obstruction(fiber, 2, shared)
print(verdict.verdict.value, "-", verdict.reason)

# the page itself, row by row
dmap = derivation_extend(e2_page(fiber, 2), shared)
for row in page_rows(dmap)[:6]:
    print(row)
