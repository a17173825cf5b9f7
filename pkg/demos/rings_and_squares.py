"""
Milnor rings and Steenrod squares
=================================

Build the mod 2 cohomology of a few Milnor manifolds, read off Poincare
series and Euler characteristics, then push classes through the total square.
"""

from milnorfrk.algebra import complex_milnor, euler_characteristic, poincare_series, real_milnor, tensor
from milnorfrk.polynomial import parse_poly
from milnorfrk.steenrod import ideal_steenrod_closed, membership, sq, total_sq

# RH_{3,2}: generators a, b in degree 1, basis a^i b^j with i <= 2, j < 3
ring = real_milnor(3, 2)
print(ring, "dimension", ring.dimension)
print("relations:", [label for label, _ in ring.relations()])
print("poincare series:", poincare_series(ring))
print("euler characteristic:", euler_characteristic(ring))

# multiplication reduces to the normal form a^i b^j
a, b = ring.gens()
print("b^3 =", b ** 3)
print("a^2 b^2 =", a ** 2 * b ** 2)

# the complex version doubles every degree
print("complex (3,2) poincare:", poincare_series(complex_milnor(3, 2)))

# tensor products are built factor by factor
pair = tensor(real_milnor(2, 1), real_milnor(2, 1))
print(pair, "dimension", pair.dimension)

# Sq^1 is a derivation on degree-1 classes; the total square is multiplicative
big = real_milnor(3, 3)
a, b = big.gens()
print("Sq^1(ab) in RH_{3,3}:", sq(1, a * b))
print("Sq(a b^2) =", total_sq(a * b ** 2))

# ideals in F2[x1, x2] and closure under the squares
x1, x2 = parse_poly("x1", 2), parse_poly("x2", 2)
print("x1^3 in <x1^2>:", membership(x1 ** 3, (x1 ** 2,)))
print("x2^3 in <x1^2>:", membership(x2 ** 3, (x1 ** 2,)))
u = x1 ** 2 + x1 * x2 + x2 ** 2
verdict = ideal_steenrod_closed([u])
print(f"<{u}> closed under squares: {verdict.closed}; Sq^1 leaves residue {verdict.residue}")
