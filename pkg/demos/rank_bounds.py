"""
Free 2-rank bounds
==================

Closed-form upper bounds for products of Milnor manifolds, the exact value in
the complex case where it is known, and the obstructions that give rank 0.
"""

from milnorfrk.bounds import (
    adem_yalcin_check,
    bound_row,
    complex_exact_rank,
    cusick_context,
    eta,
    factor,
    khare_nonbounding,
    parse_factor_list,
    real_rank_bound,
    table_csv,
    theta,
)

print("eta:", [eta(n) for n in range(8)])
print("theta:", [theta(n) for n in range(8)])

# the sharper bound needs every parameter away from 3 mod 4
print(real_rank_bound([factor("real", 5, 5), factor("real", 2, 1)]))
print(real_rank_bound([factor("real", 3, 3)]).part2)

# exact complex value; the lower bound rests on an involution that does not verify
print(complex_exact_rank([factor("complex", 4, 1), factor("complex", 2, 1)]))

# odd Euler characteristic or non-bounding rules out free involutions outright
print("RH_{4,3} does not bound:", khare_nonbounding(4, 3))
print(adem_yalcin_check([factor("real", 3, 2)] * 3))
print("projective-space context:", cusick_context("rp", [3, 3]), cusick_context("cp", [1, 2, 3]))

rows = [bound_row(parse_factor_list(t)) for t in ("real:3,2", "real:5,5;real:2,1", "complex:2,1", "complex:3,1")]
print(table_csv(rows))
