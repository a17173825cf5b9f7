"""Steenrod squares on the Milnor rings and on F2[x1..xr], and ideal closure.

The total square ``Sq = Sq^0 + Sq^1 + ...`` is a ring homomorphism, so it is
fixed by its values on generators; ``Sq^k`` of a homogeneous element is the
degree ``deg + k`` part of the total square.  Default generator rules:

* degree one ``x``: ``Sq(x) = x + x^2``;
* degree two ``y`` (the complex Milnor classes): ``Sq(y) = y + y^2``
  with ``Sq^1 y = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from . import gf2
from .algebra import AlgebraElement, PresentedAlgebra
from .polynomial import F2Poly, monomials_of_degree


class NonHomogeneous(ValueError):
    pass


@dataclass(frozen=True)
class PolynomialRing:
    nvars: int


def default_rules(degree: int, gen):
    """``[Sq^0 g, Sq^1 g, ...]`` for a generator of the given degree."""
    square = gen * gen
    if degree == 1:
        return [gen, square]
    if degree == 2:
        return [gen, gen - gen, square]
    raise ValueError(f"no default Steenrod rule for generators of degree {degree}")


@dataclass
class SteenrodContext:
    """Steenrod action on a Milnor ring or on a polynomial ring.

    ``generator_rules`` maps generator index to ``[Sq^0 g, Sq^1 g, ...]``;
    missing entries default to :func:`default_rules`.
    """

    target: PresentedAlgebra | PolynomialRing
    generator_rules: Dict[int, list] = field(default_factory=dict)
    _cache: Dict[tuple, object] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        gens, degrees = self._generators()
        rules = {}
        for i, (g, d) in enumerate(zip(gens, degrees)):
            rule = list(self.generator_rules.get(i, default_rules(d, g)))
            for k, img in enumerate(rule):
                if img and (not img.is_homogeneous() or img.degree != d + k):
                    raise ValueError(f"rule Sq^{k} of generator {i} has the wrong degree")
            rules[i] = rule
        self.generator_rules = rules
        self._totals = [_sum(rule, self._zero()) for rule in (rules[i] for i in range(len(gens)))]

    def _generators(self):
        if isinstance(self.target, PresentedAlgebra):
            return self.target.gens(), self.target.generator_degrees
        n = self.target.nvars
        return [F2Poly.var(i, n) for i in range(n)], (1,) * n

    def _zero(self):
        if isinstance(self.target, PresentedAlgebra):
            return self.target.zero
        return F2Poly.zero(self.target.nvars)

    def _one(self):
        if isinstance(self.target, PresentedAlgebra):
            return self.target.one
        return F2Poly.one(self.target.nvars)

    def _terms(self, x):
        return x.terms if isinstance(x, AlgebraElement) else x.monomials

    def _total_monomial(self, mono: Tuple[int, ...]):
        if mono not in self._cache:
            out = self._one()
            for tot, e in zip(self._totals, mono):
                if e:
                    out = out * tot ** e
            self._cache[mono] = out
        return self._cache[mono]

    def total(self, x):
        """Total square ``Sum_k Sq^k x``."""
        out = self._zero()
        for mono in self._terms(x):
            out = out + self._total_monomial(mono)
        return out

    def sq(self, k: int, x):
        if k < 0:
            raise ValueError("k must be >= 0")
        if not x:
            return x
        if not x.is_homogeneous():
            raise NonHomogeneous(f"{x} is not homogeneous")
        return self.total(x).component(x.degree + k)


def _sum(items, zero):
    out = zero
    for it in items:
        out = out + it
    return out


_CONTEXTS: Dict[object, SteenrodContext] = {}


def context_for(x) -> SteenrodContext:
    key = x.owner if isinstance(x, AlgebraElement) else PolynomialRing(x.nvars)
    if key not in _CONTEXTS:
        _CONTEXTS[key] = SteenrodContext(key)
    return _CONTEXTS[key]


def sq(k: int, x):
    """``Sq^k x`` with the default generator rules of ``x``'s ring."""
    if isinstance(x, F2Poly):
        return _poly_sq(k, x)
    return context_for(x).sq(k, x)


@lru_cache(maxsize=1 << 16)
def _poly_sq(k: int, x: F2Poly) -> F2Poly:
    return context_for(x).sq(k, x)


def total_sq(x):
    return context_for(x).total(x)


# ---------------------------------------------------------------------------
# ideals in F2[x1..xr]


def _vector(p: F2Poly, index: Dict[tuple, int]) -> int:
    v = 0
    for m in p.monomials:
        v |= 1 << index[m]
    return v


@lru_cache(maxsize=1 << 16)
def _generator_rows(g: F2Poly, degree: int) -> Tuple[int, ...]:
    """Bitsets of ``m * g`` for every monomial ``m`` completing ``g`` to ``degree``."""
    monos = monomials_of_degree(g.nvars, degree)
    index = {m: i for i, m in enumerate(monos)}
    return tuple(
        _vector(F2Poly(g.nvars, frozenset({m})) * g, index)
        for m in monomials_of_degree(g.nvars, degree - g.degree)
    )


def _ideal_component(gens: Sequence[F2Poly], nvars: int, degree: int):
    """Spanning rows (bitsets) of the degree part of the ideal, plus the index."""
    monos = monomials_of_degree(nvars, degree)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in gens:
        if not g:
            continue
        if not g.is_homogeneous():
            raise NonHomogeneous(f"ideal generator {g} is not homogeneous")
        if g.degree <= degree:
            rows.extend(_generator_rows(g, degree))
    return rows, monos, index


def ideal_residue(f: F2Poly, gens: Sequence[F2Poly]) -> F2Poly:
    """Canonical representative of ``f`` modulo the ideal, degree by degree."""
    out: set = set()
    for d in sorted(f.degrees):
        comp = f.component(d)
        rows, monos, index = _ideal_component(gens, f.nvars, d)
        res = gf2.reduce(_vector(comp, index), gf2.echelon(rows))
        out |= {monos[i] for i in gf2.bits(res)}
    return F2Poly(f.nvars, frozenset(out))


def membership(f: F2Poly, gens: Sequence[F2Poly]) -> bool:
    """Whether ``f`` lies in the ideal generated by the homogeneous ``gens``."""
    if not f.is_homogeneous():
        raise NonHomogeneous(f"{f} is not homogeneous")
    return not ideal_residue(f, gens)


@dataclass(frozen=True)
class ClosureVerdict:
    closed: bool
    witness: Tuple[F2Poly, int] | None = None
    residue: F2Poly | None = None

    def __bool__(self) -> bool:
        return self.closed


def ideal_steenrod_closed(gens: Sequence[F2Poly], nvars: int | None = None) -> ClosureVerdict:
    """Check ``Sq^k f`` lies in the ideal for each generator ``f`` and ``0 < k < deg f``.

    Larger ``k`` need no check: ``Sq^(deg f) f = f^2`` and higher squares vanish.
    """
    gens = [g for g in gens if g]
    if nvars is not None and any(g.nvars != nvars for g in gens):
        raise ValueError("generators do not live in the stated ring")
    for f in gens:
        if not f.is_homogeneous():
            raise NonHomogeneous(f"ideal generator {f} is not homogeneous")
    pieces: Dict[int, tuple] = {}
    for f in gens:
        for k in range(1, f.degree):
            h = sq(k, f)
            if not h:
                continue
            d = f.degree + k
            if d not in pieces:
                rows, monos, index = _ideal_component(gens, f.nvars, d)
                pieces[d] = (gf2.echelon(rows), monos, index)
            pivots, monos, index = pieces[d]
            res = gf2.reduce(_vector(h, index), pivots)
            if res:
                residue = F2Poly(f.nvars, frozenset(monos[i] for i in gf2.bits(res)))
                return ClosureVerdict(False, (f, k), residue)
    return ClosureVerdict(True)
