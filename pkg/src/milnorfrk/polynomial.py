"""Polynomials over F2 in ``r`` degree-one variables ``x1..xr``.

These model ``H*(B(Z/2)^r) = F2[x1, ..., xr]``.  Monomials keep full exponents
(the ring element); :meth:`F2Poly.squarefree` gives the reduction that governs
evaluation on points of ``{0,1}^r``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Tuple

Exponents = Tuple[int, ...]


class PolynomialParseError(ValueError):
    pass


@dataclass(frozen=True)
class F2Poly:
    nvars: int
    monomials: FrozenSet[Exponents] = frozenset()

    def __post_init__(self):
        for m in self.monomials:
            if len(m) != self.nvars or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for {self.nvars} variables")

    # -- construction ----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "F2Poly":
        return cls(nvars, frozenset())

    @classmethod
    def one(cls, nvars: int) -> "F2Poly":
        return cls(nvars, frozenset({(0,) * nvars}))

    @classmethod
    def var(cls, i: int, nvars: int) -> "F2Poly":
        """The variable ``x_(i+1)`` (0-based index ``i``)."""
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, frozenset({tuple(exps)}))

    @classmethod
    def from_terms(cls, nvars: int, terms: Iterable[Exponents]) -> "F2Poly":
        acc: set = set()
        for t in terms:
            acc ^= {tuple(t)}
        return cls(nvars, frozenset(acc))

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "F2Poly") -> None:
        if not isinstance(other, F2Poly):
            raise TypeError(f"cannot combine F2Poly with {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ValueError("polynomials in different numbers of variables")

    def __add__(self, other: "F2Poly") -> "F2Poly":
        self._check(other)
        return F2Poly(self.nvars, self.monomials ^ other.monomials)

    __sub__ = __add__

    def __mul__(self, other: "F2Poly") -> "F2Poly":
        self._check(other)
        acc: set = set()
        for m in self.monomials:
            for n in other.monomials:
                acc ^= {tuple(p + q for p, q in zip(m, n))}
        return F2Poly(self.nvars, frozenset(acc))

    def __pow__(self, n: int) -> "F2Poly":
        result, base = F2Poly.one(self.nvars), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.monomials)

    def __iter__(self) -> Iterator[Exponents]:
        return iter(sorted(self.monomials, reverse=True))

    # -- grading -----------------------------------------------------------

    @cached_property
    def degrees(self) -> frozenset:
        return frozenset(sum(m) for m in self.monomials)

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int | None:
        degs = self.degrees
        if not degs:
            return None
        return max(degs)

    def component(self, degree: int) -> "F2Poly":
        return F2Poly(self.nvars, frozenset(m for m in self.monomials if sum(m) == degree))

    # -- evaluation --------------------------------------------------------

    def squarefree(self) -> "F2Poly":
        """Replace every positive exponent by 1 (agrees with ``self`` on {0,1}^r)."""
        return F2Poly.from_terms(self.nvars, (tuple(min(e, 1) for e in m) for m in self.monomials))

    def support_masks(self) -> List[int]:
        """Bitmask of the variables in each monomial (bit ``r-1-i`` for ``x_(i+1)``)."""
        r = self.nvars
        return [
            sum(1 << (r - 1 - i) for i, e in enumerate(m) if e) for m in self.monomials
        ]

    def __call__(self, point: Sequence[int]) -> int:
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        val = 0
        for m in self.monomials:
            if all(point[i] or not e for i, e in enumerate(m)):
                val ^= 1
        return val

    def substitute(self, images: Sequence["F2Poly"]) -> "F2Poly":
        """Replace ``x_(i+1)`` by ``images[i]`` (all in a common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        target = images[0].nvars
        total = F2Poly.zero(target)
        for m in self.monomials:
            term = F2Poly.one(target)
            for img, e in zip(images, m):
                if e:
                    term = term * img ** e
            total = total + term
        return total

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"F2Poly({self.nvars}, {format_poly(self)!r})"


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, degree: int) -> Tuple[Exponents, ...]:
    """All exponent vectors of total degree ``degree``, in descending lex order."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return tuple(sorted(set(out), reverse=True))


def format_poly(p: F2Poly) -> str:
    parts = []
    for m in sorted(p.monomials, key=lambda m: (-sum(m), tuple(-e for e in m))):
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e > 1:
                factors.append(f"x{i + 1}^{e}")
        parts.append("*".join(factors) or "1")
    return " + ".join(parts) or "0"


_FACTOR = re.compile(r"^(?:x(\d+)(?:\^(\d+))?|1)$")


def parse_poly(text: str, nvars: int | None = None) -> F2Poly:
    """Parse ``"x1^2*x3 + x2*x3"``; ``nvars`` defaults to the largest index seen."""
    text = text.strip()
    if not text:
        raise PolynomialParseError("empty polynomial")
    terms: List[dict] = []
    top = 0
    for raw in text.split("+"):
        raw = raw.strip()
        if not raw:
            raise PolynomialParseError(f"dangling '+' in {text!r}")
        if raw == "0":
            continue
        exps: dict = {}
        for fac in raw.replace(" ", "").split("*"):
            m = _FACTOR.match(fac)
            if not m:
                raise PolynomialParseError(f"cannot parse factor {fac!r}")
            if fac == "1":
                continue
            idx = int(m.group(1))
            if idx < 1:
                raise PolynomialParseError("variables are numbered from x1")
            exps[idx] = exps.get(idx, 0) + int(m.group(2) or 1)
            top = max(top, idx)
        terms.append(exps)
    if nvars is None:
        nvars = top
    elif top > nvars:
        raise PolynomialParseError(f"variable x{top} exceeds r={nvars}")
    return F2Poly.from_terms(
        nvars, (tuple(t.get(i + 1, 0) for i in range(nvars)) for t in terms)
    )
