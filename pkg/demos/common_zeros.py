"""
Common zeros of forms over F2
=============================

Exhaustive search for non-zero common zeros, the degree-count guarantee, and
restriction to the cyclic subgroup through a point.
"""

from milnorfrk.polynomial import parse_poly
from milnorfrk.zeros import common_zero, fuzz_zero_guarantee, guaranteed_zero, restriction

# x1^2 vanishes at (0, 1); the anisotropic quadric has no non-zero zero at all
print(common_zero([parse_poly("x1^2", 2)], 2))
print(common_zero([parse_poly("x1^2 + x1*x2 + x2^2", 2)], 2))

# two quadrics in five variables always share a zero since 5 > 2 * 2
system = [parse_poly("x1^2 + x2*x3 + x4*x5", 5), parse_poly("x1*x2 + x3^2 + x5^2", 5)]
print("guaranteed:", guaranteed_zero(2, 2, 5), "found:", common_zero(system, 5).witness)

# random systems above the degree count: the search should never come back empty
report = fuzz_zero_guarantee(200, 2, 2, 5, seed=1)
print(f"fuzz: {report.passed}/{report.trials} systems had a witness")

# restricting x1*x2 along the subgroup at (1, 1) gives t^2; x1 + x2 dies there
print(restriction(parse_poly("x1*x2", 2), (1, 1)), restriction(parse_poly("x1 + x2", 2), (1, 1)))
