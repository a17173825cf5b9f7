"""Mod-2 cohomology rings of Milnor manifolds and their tensor products.

A real Milnor factor ``(r, s)`` is ``F2[a, b] / (a^(s+1), b^r + a b^(r-1) + ... + a^s b^(r-s))``
with ``a, b`` in degree one; the complex factor is the same ring with the
generators (called ``g, h``) in degree two.  Elements are kept in normal form
with respect to the terminating rewrite rules

    a^(s+1) -> 0,        b^r -> a b^(r-1) + ... + a^s b^(r-s),

so the canonical basis of a factor is ``{a^i b^j : i <= s, j < r}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

Monomial = Tuple[int, ...]


class AlgebraError(ValueError):
    pass


class InvalidParameters(AlgebraError):
    pass


class OwnerMismatch(AlgebraError):
    pass


class DegreeMismatch(AlgebraError):
    pass


class RelationViolation(AlgebraError):
    """An assignment of generator images does not kill some relation."""

    def __init__(self, relation: str, image: "AlgebraElement"):
        super().__init__(f"relation {relation} maps to {image}, not 0")
        self.relation = relation
        self.image = image


class SearchSpaceTooLarge(AlgebraError):
    pass


# ---------------------------------------------------------------------------
# factors


@dataclass(frozen=True)
class MilnorFactor:
    """One Milnor-manifold tensor factor; ``kind`` is ``"real"`` or ``"complex"``."""

    kind: str
    r: int
    s: int

    def __post_init__(self):
        if self.kind not in ("real", "complex"):
            raise InvalidParameters(f"unknown Milnor kind {self.kind!r}")
        if not (isinstance(self.r, int) and isinstance(self.s, int)):
            raise InvalidParameters("r and s must be integers")
        if not 1 <= self.s <= self.r:
            raise InvalidParameters(f"need 1 <= s <= r, got r={self.r}, s={self.s}")

    @property
    def gen_degree(self) -> int:
        return 1 if self.kind == "real" else 2

    @property
    def base_names(self) -> Tuple[str, ...]:
        return ("a", "b") if self.kind == "real" else ("g", "h")

    @property
    def top_degree(self) -> int:
        return self.gen_degree * (self.r + self.s - 1)

    def basis(self) -> List[Monomial]:
        return [(i, j) for i in range(self.s + 1) for j in range(self.r)]

    def reduce(self, exps: Monomial) -> FrozenSet[Monomial]:
        return _milnor_reduce(self.r, self.s, exps[0], exps[1])

    def relations(self) -> List[FrozenSet[Monomial]]:
        return [
            frozenset({(self.s + 1, 0)}),
            frozenset((k, self.r - k) for k in range(self.s + 1)),
        ]

    def to_json(self) -> dict:
        return {"kind": self.kind, "r": self.r, "s": self.s}


@dataclass(frozen=True)
class TruncatedFactor:
    """``F2[x]/(x^(n+1))``: the cohomology of RP^n (kind ``"rp"``) or CP^n (``"cp"``)."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in ("rp", "cp"):
            raise InvalidParameters(f"unknown projective kind {self.kind!r}")
        if not isinstance(self.n, int) or self.n < 0:
            raise InvalidParameters(f"need n >= 0, got {self.n}")

    @property
    def gen_degree(self) -> int:
        return 1 if self.kind == "rp" else 2

    @property
    def base_names(self) -> Tuple[str, ...]:
        return ("x",)

    @property
    def top_degree(self) -> int:
        return self.gen_degree * self.n

    def basis(self) -> List[Monomial]:
        return [(i,) for i in range(self.n + 1)]

    def reduce(self, exps: Monomial) -> FrozenSet[Monomial]:
        return frozenset({exps}) if exps[0] <= self.n else frozenset()

    def relations(self) -> List[FrozenSet[Monomial]]:
        return [frozenset({(self.n + 1,)})]

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n}


Factor = MilnorFactor | TruncatedFactor


@lru_cache(maxsize=None)
def _milnor_reduce(r: int, s: int, i: int, j: int) -> FrozenSet[Monomial]:
    if i > s:
        return frozenset()
    if j < r:
        return frozenset({(i, j)})
    out: set = set()
    for k in range(1, s + 1):
        out ^= _milnor_reduce(r, s, i + k, j - k)
    return frozenset(out)


def milnor_reduce_stepwise(r: int, s: int, i: int, j: int) -> FrozenSet[Monomial]:
    """Normal form of ``a^i b^j`` computed by multiplying in one ``b`` at a time.

    Independent of the memoised block rewrite; used to check confluence.
    """
    state = {(i, 0)} if i <= s else set()
    for _ in range(j):
        nxt: set = set()
        for (p, q) in state:
            if q + 1 < r:
                nxt ^= {(p, q + 1)}
            else:
                for k in range(1, s + 1):
                    if p + k <= s:
                        nxt ^= {(p + k, r - k)}
        state = nxt
    return frozenset(state)


def milnor_reduce_lazy(r: int, s: int, i: int, j: int) -> FrozenSet[Monomial]:
    """Normal form applying the ``b^r`` rule exhaustively before ``a^(s+1) -> 0``."""
    pending = {(i, j)}
    done: set = set()
    while pending:
        nxt: set = set()
        for (p, q) in pending:
            if q >= r:
                for k in range(1, s + 1):
                    nxt ^= {(p + k, q - k)}
            else:
                done ^= {(p, q)}
        pending = nxt
    return frozenset(m for m in done if m[0] <= s)


# ---------------------------------------------------------------------------
# the algebra


@dataclass(frozen=True)
class PresentedAlgebra:
    """Graded-commutative F2-algebra: a tensor product of presented factors."""

    factors: Tuple[Factor, ...]

    # -- structure --------------------------------------------------------

    @cached_property
    def _offsets(self) -> Tuple[int, ...]:
        out, pos = [], 0
        for f in self.factors:
            out.append(pos)
            pos += len(f.base_names)
        return tuple(out)

    @cached_property
    def generators(self) -> Tuple[Tuple[str, int], ...]:
        single = len(self.factors) == 1
        gens = []
        for idx, f in enumerate(self.factors):
            for name in f.base_names:
                gens.append((name if single else f"{name}{idx + 1}", f.gen_degree))
        return tuple(gens)

    @property
    def generator_names(self) -> Tuple[str, ...]:
        return tuple(n for n, _ in self.generators)

    @cached_property
    def generator_degrees(self) -> Tuple[int, ...]:
        return tuple(d for _, d in self.generators)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def top_degree(self) -> int:
        return sum(f.top_degree for f in self.factors)

    def degree_of(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.generator_degrees))

    def _split(self, mono: Monomial) -> List[Monomial]:
        return [
            tuple(mono[o:o + len(f.base_names)])
            for o, f in zip(self._offsets, self.factors)
        ]

    @cached_property
    def basis(self) -> Tuple[Monomial, ...]:
        prods = itertools.product(*(f.basis() for f in self.factors))
        monos = [tuple(itertools.chain.from_iterable(p)) for p in prods]
        return tuple(sorted(monos, key=lambda m: (self.degree_of(m), m)))

    @cached_property
    def basis_index(self) -> Dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.basis)}

    @property
    def dimension(self) -> int:
        n = 1
        for f in self.factors:
            n *= len(f.basis())
        return n

    def basis_in_degree(self, degree: int) -> List[Monomial]:
        return [m for m in self.basis if self.degree_of(m) == degree]

    def relations(self) -> List[Tuple[str, FrozenSet[Monomial]]]:
        """Defining relations as polynomials in the generators (exponent sets)."""
        out = []
        width = self.ngens
        for o, f in zip(self._offsets, self.factors):
            for rel in f.relations():
                full = frozenset(
                    tuple(m[k - o] if o <= k < o + len(m) else 0 for k in range(width))
                    for m in rel
                )
                out.append((self.format_terms(full), full))
        return out

    # -- elements ---------------------------------------------------------

    def element(self, terms: Iterable[Monomial] = ()) -> "AlgebraElement":
        """Element from basis monomials (given with F2 multiplicity)."""
        acc: set = set()
        for m in terms:
            m = tuple(m)
            if m not in self.basis_index:
                raise AlgebraError(f"{m} is not a canonical basis monomial")
            acc ^= {m}
        return AlgebraElement(self, frozenset(acc))

    def monomial(self, mono: Monomial) -> "AlgebraElement":
        """Normal form of an arbitrary monomial in the generators."""
        if len(mono) != self.ngens or any(e < 0 for e in mono):
            raise AlgebraError(f"bad exponent vector {mono}")
        return AlgebraElement(self, _reduce_product(self, tuple(mono)))

    @property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, frozenset())

    @property
    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, frozenset({(0,) * self.ngens}))

    def gen(self, name: str) -> "AlgebraElement":
        idx = self.generator_names.index(name)
        exps = [0] * self.ngens
        exps[idx] = 1
        return self.monomial(tuple(exps))

    def gens(self) -> List["AlgebraElement"]:
        return [self.gen(n) for n in self.generator_names]

    def evaluate(self, poly: FrozenSet[Monomial], images: Sequence["AlgebraElement"]) -> "AlgebraElement":
        """Substitute generator images into a polynomial in the generators."""
        total = self.zero
        for mono in poly:
            term = self.one
            for img, e in zip(images, mono):
                if e:
                    term = term * img ** e
            total = total + term
        return total

    def format_terms(self, terms: Iterable[Monomial]) -> str:
        names = self.generator_names
        parts = []
        for m in sorted(terms, key=lambda m: (self.degree_of(m), m)):
            factors = []
            for n, e in zip(names, m):
                if e == 1:
                    factors.append(n)
                elif e > 1:
                    factors.append(f"{n}^{e}")
            parts.append("*".join(factors) or "1")
        return " + ".join(parts) or "0"

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{f.kind}({f.r},{f.s})" if isinstance(f, MilnorFactor) else f"{f.kind}({f.n})"
            for f in self.factors
        )
        return f"PresentedAlgebra[{inner}]"


@lru_cache(maxsize=1 << 16)
def _reduce_product(alg: PresentedAlgebra, mono: Monomial) -> FrozenSet[Monomial]:
    per_factor = [f.reduce(part) for f, part in zip(alg.factors, alg._split(mono))]
    out: set = set()
    for combo in itertools.product(*per_factor):
        out ^= {tuple(itertools.chain.from_iterable(combo))}
    return frozenset(out)


@dataclass(frozen=True)
class AlgebraElement:
    owner: PresentedAlgebra
    terms: FrozenSet[Monomial] = field(default_factory=frozenset)

    def _check(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"cannot combine AlgebraElement with {type(other).__name__}")
        if other.owner != self.owner:
            raise OwnerMismatch("elements belong to different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.owner, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return multiply(self, other)

    def __pow__(self, n: int) -> "AlgebraElement":
        if n < 0:
            raise ValueError("negative power")
        result, base = self.owner.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degrees(self) -> set:
        return {self.owner.degree_of(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a homogeneous element; None for zero."""
        degs = self.degrees
        if not degs:
            return None
        if len(degs) > 1:
            raise AlgebraError(f"{self} is not homogeneous")
        return degs.pop()

    def component(self, degree: int) -> "AlgebraElement":
        return AlgebraElement(
            self.owner, frozenset(m for m in self.terms if self.owner.degree_of(m) == degree)
        )

    def __repr__(self) -> str:
        return self.owner.format_terms(self.terms)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Product reduced to the canonical basis."""
    if x.owner != y.owner:
        raise OwnerMismatch("elements belong to different algebras")
    alg = x.owner
    out: set = set()
    for m in x.terms:
        for n in y.terms:
            out ^= _reduce_product(alg, tuple(p + q for p, q in zip(m, n)))
    return AlgebraElement(alg, frozenset(out))


# ---------------------------------------------------------------------------
# constructors


def real_milnor(r: int, s: int) -> PresentedAlgebra:
    return PresentedAlgebra((MilnorFactor("real", r, s),))


def complex_milnor(r: int, s: int) -> PresentedAlgebra:
    return PresentedAlgebra((MilnorFactor("complex", r, s),))


def projective_space(kind: str, n: int) -> PresentedAlgebra:
    """Truncated polynomial ring of RP^n (``"rp"``) or CP^n (``"cp"``)."""
    return PresentedAlgebra((TruncatedFactor(kind, n),))


def tensor(*algebras: PresentedAlgebra) -> PresentedAlgebra:
    return PresentedAlgebra(tuple(f for alg in algebras for f in alg.factors))


def milnor_product(specs: Iterable[Tuple[str, int, int]]) -> PresentedAlgebra:
    """Tensor product of Milnor factors given as ``(kind, r, s)`` triples."""
    return PresentedAlgebra(tuple(MilnorFactor(k, r, s) for k, r, s in specs))


# ---------------------------------------------------------------------------
# numerical invariants


def _factor_series(f: Factor) -> List[int]:
    coeffs = [0] * (f.top_degree + 1)
    for m in f.basis():
        coeffs[sum(m) * f.gen_degree] += 1
    return coeffs


def poincare_series(alg: PresentedAlgebra, max_degree: int | None = None) -> List[int]:
    """Coefficients ``[dim H^0, ..., dim H^max_degree]``; default up to the top degree."""
    if max_degree is None:
        max_degree = alg.top_degree
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    series = [1]
    for f in alg.factors:
        fs = _factor_series(f)
        prod = [0] * (len(series) + len(fs) - 1)
        for i, c in enumerate(series):
            if c:
                for j, d in enumerate(fs):
                    prod[i + j] += c * d
        series = prod
    series = series[: max_degree + 1]
    return series + [0] * (max_degree + 1 - len(series))


def euler_characteristic(alg: PresentedAlgebra) -> int:
    return sum((-1) ** k * c for k, c in enumerate(poincare_series(alg)))


# ---------------------------------------------------------------------------
# endomorphisms


@dataclass(frozen=True)
class GradedEndomorphism:
    """Ring endomorphism given by degree-preserving images of the generators."""

    owner: PresentedAlgebra
    images: Tuple[AlgebraElement, ...]

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.owner != self.owner:
            raise OwnerMismatch("element from a different algebra")
        return self.owner.evaluate(x.terms, self.images)

    def image_of(self, name: str) -> AlgebraElement:
        return self.images[self.owner.generator_names.index(name)]

    def compose(self, other: "GradedEndomorphism") -> "GradedEndomorphism":
        """``self`` after ``other``."""
        return GradedEndomorphism(self.owner, tuple(self(img) for img in other.images))

    def is_identity(self) -> bool:
        return all(img == g for img, g in zip(self.images, self.owner.gens()))

    def is_involution(self) -> bool:
        return self.compose(self).is_identity()

    def sends(self, source: str, target: str) -> bool:
        return self.image_of(source) == self.owner.gen(target)

    def matrix(self, degree: int) -> List[List[int]]:
        """Matrix over F2 on the degree component; columns are basis images."""
        basis = self.owner.basis_in_degree(degree)
        index = {m: i for i, m in enumerate(basis)}
        cols = []
        for m in basis:
            col = [0] * len(basis)
            for t in self(AlgebraElement(self.owner, frozenset({m}))).terms:
                col[index[t]] = 1
            cols.append(col)
        return [list(row) for row in zip(*cols)] if cols else []

    def __repr__(self) -> str:
        pairs = ", ".join(f"{n}->{img}" for n, img in zip(self.owner.generator_names, self.images))
        return f"GradedEndomorphism({pairs})"


def endomorphism_from_assignment(
    alg: PresentedAlgebra, images: Mapping[str, AlgebraElement] | Sequence[AlgebraElement]
) -> GradedEndomorphism:
    """Build the endomorphism, checking degrees and that every relation dies."""
    if isinstance(images, Mapping):
        unknown = set(images) - set(alg.generator_names)
        if unknown:
            raise AlgebraError(f"unknown generators {sorted(unknown)}")
        imgs = tuple(images.get(n, alg.gen(n)) for n in alg.generator_names)
    else:
        imgs = tuple(images)
        if len(imgs) != alg.ngens:
            raise AlgebraError(f"expected {alg.ngens} images, got {len(imgs)}")
    for (name, deg), img in zip(alg.generators, imgs):
        if img.owner != alg:
            raise OwnerMismatch(f"image of {name} lives in another algebra")
        if img and (not img.is_homogeneous() or img.degree != deg):
            raise DegreeMismatch(f"image of {name} must be homogeneous of degree {deg}")
    for label, rel in alg.relations():
        value = alg.evaluate(rel, imgs)
        if value:
            raise RelationViolation(label, value)
    return GradedEndomorphism(alg, imgs)


@dataclass(frozen=True)
class InvolutionCandidate:
    endomorphism: GradedEndomorphism
    nontrivial: bool
    a_to_b: bool


def involutive_automorphism_search(
    alg: PresentedAlgebra, limit: int = 2 ** 20
) -> List[InvolutionCandidate]:
    """All generator assignments defining an endomorphism that squares to the identity.

    ``a_to_b`` marks candidates sending some Milnor ``a``-generator to the
    ``b``-generator of the same factor.
    """
    choices = []
    total = 1
    for _, deg in alg.generators:
        space = alg.basis_in_degree(deg)
        total *= 2 ** len(space)
        if total > limit:
            raise SearchSpaceTooLarge(f"more than {limit} candidate assignments")
        elems = [
            AlgebraElement(alg, frozenset(m for k, m in enumerate(space) if (mask >> k) & 1))
            for mask in range(2 ** len(space))
        ]
        choices.append(elems)

    pairs = []
    names = alg.generator_names
    for idx, f in enumerate(alg.factors):
        if isinstance(f, MilnorFactor):
            lo = alg._offsets[idx]
            pairs.append((names[lo], names[lo + 1]))

    found = []
    for imgs in itertools.product(*choices):
        try:
            endo = endomorphism_from_assignment(alg, imgs)
        except RelationViolation:
            continue
        if not endo.is_involution():
            continue
        found.append(
            InvolutionCandidate(
                endo,
                nontrivial=not endo.is_identity(),
                a_to_b=any(endo.sends(a, b) for a, b in pairs),
            )
        )
    return found


# ---------------------------------------------------------------------------
# serialisation


def ring_to_json(alg: PresentedAlgebra) -> dict:
    return {
        "factors": [f.to_json() for f in alg.factors],
        "basis_size": alg.dimension,
        "poincare": poincare_series(alg),
    }


def ring_from_json(doc: Mapping) -> PresentedAlgebra:
    factors: List[Factor] = []
    for f in doc["factors"]:
        if f["kind"] in ("real", "complex"):
            factors.append(MilnorFactor(f["kind"], int(f["r"]), int(f["s"])))
        else:
            factors.append(TruncatedFactor(f["kind"], int(f["n"])))
    alg = PresentedAlgebra(tuple(factors))
    if "basis_size" in doc and doc["basis_size"] != alg.dimension:
        raise AlgebraError("basis_size does not match the factors")
    return alg
