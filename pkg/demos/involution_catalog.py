"""
Free involutions on Milnor hypersurfaces
========================================

Every construction is a monomial map, so all checks are exact: projective
well-definedness, preservation of the defining form, the involution property
and freeness via cycle structure.
"""

from collections import Counter

from milnorfrk import geometry as geo

# S1 on RP^5 pairs coordinates with sign -1: three 2-cycles, no real eigenvalue
print(geo.s1(5).describe(), geo.free_on_projective(geo.s1(5)).free)

# the identity fixes everything; the verdict carries a witness point
print(geo.free_on_projective(geo.identity(3)).witness)

# two commuting constructions on RH_{3,3} generate a rank-two group
a1, form = geo.construction_a1(3, 3)
a2, _ = geo.construction_a2(3, 3)
report = geo.commuting_rank([a1, a2], form)
print("rank", report.rank, "elements", report.elements, "all free:", report.all_free)

# the full catalogue at every claimed parameter
entries = geo.construction_catalog()
print(Counter(e.status for e in entries))

# the even-r complex map mixes z and conj(z) as written; conjugating every
# coordinate makes it well defined but it no longer squares to the identity
pm, _ = geo.construction_b2(4, 1)
print(pm.first.describe(), "well defined:", geo.verify_well_defined(pm.first))
pm, _ = geo.construction_b2(4, 1, conjugated=True)
print(geo.verify_involution_on_hypersurface(pm).detail)

# RH_{4,3} does not bound, and the monomial search agrees: nothing free
print("monomial free involutions on RH_{4,3}:", geo.monomial_free_involutions(4, 3))
