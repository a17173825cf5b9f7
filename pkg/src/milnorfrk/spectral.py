"""Borel-fibration pages ``E = F2[x1..xr] (x) H*(X)`` inside a finite window.

Trivial action on the fibre cohomology makes the E2 page a tensor product.
The first possibly non-zero differential ``d_t`` (``t = 2`` for the real
Milnor rings, ``t = 3`` for the complex ones) is a derivation vanishing on the
base, so it is fixed by the images of the fibre generators.  Those images are
degree-``t`` polynomials in the base.

Two versions of ``d`` are exposed.  :meth:`DifferentialMap.apply` uses the
formal Leibniz rule on canonical basis monomials; it always squares to zero.
:meth:`DifferentialMap.apply_free` differentiates an arbitrary monomial in the
generators and reduces afterwards, which is what replaying an argument like
"``d(b^(r+1)) = (r+1) v (x) b^r``" needs.  The two agree on every product
exactly when the assignment kills the defining relations
(:meth:`DifferentialMap.relation_defects`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from math import comb
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from . import gf2
from .algebra import AlgebraElement, PresentedAlgebra
from .polynomial import F2Poly, monomials_of_degree
from .zeros import ZeroReport, common_zero, restriction

Term = Tuple[Tuple[int, ...], Tuple[int, ...]]  # (base exponents, fibre monomial)


class SpectralError(ValueError):
    pass


class WindowTooSmall(SpectralError):
    pass


class DegreeMismatch(SpectralError):
    pass


# ---------------------------------------------------------------------------
# pages


@dataclass(frozen=True)
class SpectralPage:
    base_rank: int
    fiber: PresentedAlgebra
    window: Tuple[int, int]

    def __post_init__(self):
        k, l = self.window
        if k < 0 or l < 0:
            raise SpectralError("window bounds must be non-negative")
        if self.base_rank < 1:
            raise SpectralError("base rank must be >= 1")

    @property
    def max_base(self) -> int:
        return self.window[0]

    @property
    def max_fiber(self) -> int:
        return self.window[1]

    def in_window(self, k: int, l: int) -> bool:
        return 0 <= k <= self.max_base and 0 <= l <= self.max_fiber

    @cached_property
    def _fiber_by_degree(self) -> Dict[int, List[Tuple[int, ...]]]:
        out: Dict[int, List[Tuple[int, ...]]] = {}
        for m in self.fiber.basis:
            out.setdefault(self.fiber.degree_of(m), []).append(m)
        return out

    def basis(self, k: int, l: int) -> List[Term]:
        if k < 0 or l < 0:
            return []
        return [
            (b, f)
            for b in monomials_of_degree(self.base_rank, k)
            for f in self._fiber_by_degree.get(l, [])
        ]

    def dim(self, k: int, l: int) -> int:
        if k < 0 or l < 0:
            return 0
        return comb(k + self.base_rank - 1, self.base_rank - 1) * len(self._fiber_by_degree.get(l, []))

    def element(self, terms: Iterable[Term] = ()) -> "PageElement":
        acc: set = set()
        for t in terms:
            acc ^= {(tuple(t[0]), tuple(t[1]))}
        return PageElement(self, frozenset(acc))

    def tensor(self, base: F2Poly, fib: AlgebraElement) -> "PageElement":
        if base.nvars != self.base_rank:
            raise SpectralError("base polynomial has the wrong number of variables")
        if fib.owner != self.fiber:
            raise SpectralError("fibre element from another algebra")
        return self.element((b, f) for b in base.monomials for f in fib.terms)

    @property
    def zero(self) -> "PageElement":
        return PageElement(self, frozenset())

    def bidegree(self, term: Term) -> Tuple[int, int]:
        return sum(term[0]), self.fiber.degree_of(term[1])


def e2_page(fiber: PresentedAlgebra, r: int, window: Tuple[int, int] | None = None) -> SpectralPage:
    """E2 page of the Borel fibration for a trivial-action ``(Z/2)^r``.

    Default window ``(dim X + r + t, dim X)`` with ``t`` the first differential's
    page, so the total degree just above ``dim X`` and its differentials fit.
    """
    if window is None:
        top = fiber.top_degree
        t = fiber.generator_degrees[0] + 1 if fiber.ngens else 2
        window = (top + r + t, top)
    return SpectralPage(r, fiber, tuple(window))


@dataclass(frozen=True)
class PageElement:
    page: SpectralPage
    terms: FrozenSet[Term] = frozenset()

    def __add__(self, other: "PageElement") -> "PageElement":
        return PageElement(self.page, self.terms ^ other.terms)

    def __mul__(self, other: "PageElement") -> "PageElement":
        fib = self.page.fiber
        acc: set = set()
        for b1, f1 in self.terms:
            for b2, f2 in other.terms:
                base = tuple(p + q for p, q in zip(b1, b2))
                for f in fib.monomial(tuple(p + q for p, q in zip(f1, f2))).terms:
                    acc ^= {(base, f)}
        return PageElement(self.page, frozenset(acc))

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def bidegrees(self) -> set:
        return {self.page.bidegree(t) for t in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        groups: Dict[Tuple[int, ...], set] = {}
        for b, f in self.terms:
            groups.setdefault(f, set()).add(b)
        parts = []
        for f in sorted(groups):
            base = F2Poly(self.page.base_rank, frozenset(groups[f]))
            parts.append(f"({base})(x)({self.page.fiber.format_terms([f])})")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# differentials


@dataclass(frozen=True)
class DifferentialAssignment:
    """Images ``d_t(1 (x) g) = image (x) 1`` of the fibre generators, in generator order."""

    images: Tuple[F2Poly, ...]
    page_index: int = 2

    def __post_init__(self):
        if self.page_index < 2:
            raise DegreeMismatch("page index must be >= 2")
        for img in self.images:
            if img and (not img.is_homogeneous() or img.degree != self.page_index):
                raise DegreeMismatch(
                    f"image {img} must be homogeneous of degree {self.page_index}"
                )

    def is_zero(self) -> bool:
        return not any(self.images)


def _check_assignment(page: SpectralPage, assignment: DifferentialAssignment) -> None:
    fib = page.fiber
    if len(assignment.images) != fib.ngens:
        raise DegreeMismatch(f"expected {fib.ngens} generator images, got {len(assignment.images)}")
    for (name, deg), img in zip(fib.generators, assignment.images):
        if deg != assignment.page_index - 1:
            raise DegreeMismatch(
                f"generator {name} has degree {deg}; d_{assignment.page_index} needs degree "
                f"{assignment.page_index - 1}"
            )
        if img.nvars != page.base_rank:
            raise DegreeMismatch(f"image of {name} is not a polynomial in {page.base_rank} variables")


@dataclass(frozen=True)
class DifferentialMap:
    page: SpectralPage
    assignment: DifferentialAssignment

    @property
    def t(self) -> int:
        return self.assignment.page_index

    def target(self, k: int, l: int) -> Tuple[int, int]:
        return k + self.t, l - self.t + 1

    def _d_generator_terms(self, base: Tuple[int, ...], gen: int, rest: FrozenSet) -> set:
        out: set = set()
        for m in self.assignment.images[gen].monomials:
            b = tuple(p + q for p, q in zip(base, m))
            for f in rest:
                out ^= {(b, f)}
        return out

    def apply_free(self, base: Tuple[int, ...], exps: Sequence[int]) -> PageElement:
        """``d(x^base (x) g^exps)`` by Leibniz on the free monomial, then reduced."""
        fib = self.page.fiber
        acc: set = set()
        for g, e in enumerate(exps):
            if e % 2 == 0:
                continue
            lower = list(exps)
            lower[g] -= 1
            acc ^= self._d_generator_terms(tuple(base), g, fib.monomial(tuple(lower)).terms)
        return PageElement(self.page, frozenset(acc))

    def apply(self, x: PageElement) -> PageElement:
        """``d`` on a page element via the formal Leibniz rule on basis monomials."""
        acc: set = set()
        for base, mono in x.terms:
            for g, e in enumerate(mono):
                if e % 2:
                    lower = list(mono)
                    lower[g] -= 1
                    acc ^= self._d_generator_terms(base, g, frozenset({tuple(lower)}))
        return PageElement(self.page, frozenset(acc))

    __call__ = apply

    def relation_defects(self) -> List[Tuple[str, PageElement]]:
        """``d`` of each defining relation; all zero iff ``d`` descends to the quotient."""
        fib = self.page.fiber
        zero_base = (0,) * self.page.base_rank
        out = []
        for label, rel in fib.relations():
            acc = self.page.zero
            for mono in rel:
                acc = acc + self.apply_free(zero_base, mono)
            if acc:
                out.append((label, acc))
        return out

    def is_consistent(self) -> bool:
        return not self.relation_defects()

    def columns(self, k: int, l: int) -> Tuple[List[int], List[Term], List[Term]]:
        """Columns (bitsets over the target basis) of ``d`` at bidegree ``(k, l)``."""
        src = self.page.basis(k, l)
        tk, tl = self.target(k, l)
        tgt = self.page.basis(tk, tl)
        index = {t: i for i, t in enumerate(tgt)}
        cols = []
        for term in src:
            v = 0
            for t in self.apply(PageElement(self.page, frozenset({term}))).terms:
                v ^= 1 << index[t]
            cols.append(v)
        return cols, src, tgt

    def rank(self, k: int, l: int) -> int:
        if not self.page.in_window(k, l) or not self.page.in_window(*self.target(k, l)):
            raise WindowTooSmall(f"d at ({k},{l}) leaves the window {self.page.window}")
        return gf2.rank(self.columns(k, l)[0])

    def squares_to_zero(self) -> bool:
        """``d o d = 0`` on every bidegree whose two targets lie in the window."""
        for k in range(self.page.max_base + 1):
            for l in range(self.page.max_fiber + 1):
                k2, l2 = self.target(*self.target(k, l))
                if not self.page.in_window(k2, l2):
                    continue
                for term in self.page.basis(k, l):
                    x = PageElement(self.page, frozenset({term}))
                    if self.apply(self.apply(x)):
                        return False
        return True

    def is_zero(self) -> bool:
        return self.assignment.is_zero()


def derivation_extend(page: SpectralPage, assignment: DifferentialAssignment) -> DifferentialMap:
    _check_assignment(page, assignment)
    return DifferentialMap(page, assignment)


def zero_assignment(fiber: PresentedAlgebra, r: int, page_index: int | None = None) -> DifferentialAssignment:
    if page_index is None:
        page_index = fiber.generator_degrees[0] + 1 if fiber.ngens else 2
    return DifferentialAssignment(tuple(F2Poly.zero(r) for _ in range(fiber.ngens)), page_index)


def consistent_assignment_space(
    fiber: PresentedAlgebra, r: int, page_index: int | None = None
) -> List[DifferentialAssignment]:
    """Basis of the F2-space of assignments whose derivation kills every relation.

    Relation defects depend linearly on the images, so the consistent
    assignments are the kernel of one matrix.
    """
    if page_index is None:
        page_index = fiber.generator_degrees[0] + 1
    page = e2_page(fiber, r)
    monos = monomials_of_degree(r, page_index)
    unknowns = [(g, m) for g in range(fiber.ngens) for m in monos]
    index: Dict[Term, int] = {}
    cols = []
    for g, m in unknowns:
        imgs = [F2Poly.zero(r)] * fiber.ngens
        imgs[g] = F2Poly(r, frozenset({m}))
        dmap = DifferentialMap(page, DifferentialAssignment(tuple(imgs), page_index))
        v = 0
        for label, rel in fiber.relations():
            acc = page.zero
            for mono in rel:
                acc = acc + dmap.apply_free((0,) * r, mono)
            for term in acc.terms:
                key = (label, term)
                v ^= 1 << index.setdefault(key, len(index))
        cols.append(v)
    out = []
    for combo in gf2.kernel(cols):
        imgs = [set() for _ in range(fiber.ngens)]
        for j in gf2.bits(combo):
            g, m = unknowns[j]
            imgs[g] ^= {m}
        out.append(DifferentialAssignment(tuple(F2Poly(r, frozenset(i)) for i in imgs), page_index))
    return out


def random_consistent_assignment(
    fiber: PresentedAlgebra, r: int, rng, page_index: int | None = None
) -> DifferentialAssignment:
    """Uniform sample from :func:`consistent_assignment_space`; ``rng`` is a numpy Generator."""
    if page_index is None:
        page_index = fiber.generator_degrees[0] + 1
    basis = consistent_assignment_space(fiber, r, page_index)
    imgs = [F2Poly.zero(r)] * fiber.ngens
    for a, pick in zip(basis, rng.integers(0, 2, size=len(basis))):
        if pick:
            imgs = [x + y for x, y in zip(imgs, a.images)]
    return DifferentialAssignment(tuple(imgs), page_index)


def random_assignment(
    fiber: PresentedAlgebra, r: int, rng, page_index: int | None = None
) -> DifferentialAssignment:
    """Independent uniform forms for every generator image (not necessarily consistent)."""
    if page_index is None:
        page_index = fiber.generator_degrees[0] + 1
    monos = monomials_of_degree(r, page_index)
    imgs = []
    for _ in range(fiber.ngens):
        keep = rng.integers(0, 2, size=len(monos))
        imgs.append(F2Poly(r, frozenset(m for m, k in zip(monos, keep) if k)))
    return DifferentialAssignment(tuple(imgs), page_index)


# ---------------------------------------------------------------------------
# cohomology of a page


@dataclass(frozen=True)
class NextPageEntry:
    dim: int
    differential_rank: int
    indeterminate: bool


def next_page(dmap: DifferentialMap) -> Dict[Tuple[int, int], NextPageEntry]:
    """Dimensions of ``E_(t+1) = ker d / im d`` on the window.

    Entries needing a differential that leaves the window are flagged
    ``indeterminate`` and report the E_t dimension.
    """
    page, t = dmap.page, dmap.t
    top = page.fiber.top_degree
    out: Dict[Tuple[int, int], NextPageEntry] = {}
    for k in range(page.max_base + 1):
        for l in range(page.max_fiber + 1):
            dim = page.dim(k, l)
            tk, tl = dmap.target(k, l)
            sk, sl = k - t, l + t - 1
            outgoing_known = tl < 0 or page.in_window(tk, tl)
            incoming_known = sk < 0 or sl > top or page.in_window(sk, sl)
            out_rank = dmap.rank(k, l) if tl >= 0 and page.in_window(tk, tl) else 0
            in_rank = dmap.rank(sk, sl) if sk >= 0 and sl <= top and page.in_window(sk, sl) else 0
            if outgoing_known and incoming_known:
                out[(k, l)] = NextPageEntry(dim - out_rank - in_rank, out_rank, False)
            else:
                out[(k, l)] = NextPageEntry(dim, out_rank, True)
    return out


def page_rows(dmap: DifferentialMap) -> List[dict]:
    """JSON-ready dump: one row per window bidegree."""
    rows = []
    nxt = next_page(dmap)
    for (k, l), entry in sorted(nxt.items()):
        rows.append(
            {
                "bidegree": [k, l],
                "dim": dmap.page.dim(k, l),
                "differential_rank": entry.differential_rank,
                "next_dim": entry.dim,
                "indeterminate": entry.indeterminate,
            }
        )
    return rows


def total_dimension_above(dmap: DifferentialMap, degree: int) -> int:
    """Total dimension of ``E_(t+1)`` in total degree ``degree + 1``."""
    n = degree + 1
    page, t = dmap.page, dmap.t
    top = page.fiber.top_degree
    if n + t > page.max_base or min(n, top) > page.max_fiber:
        raise WindowTooSmall(
            f"total degree {n} needs window at least ({n + t}, {min(n, top)}), have {page.window}"
        )
    total = 0
    for k in range(n + 1):
        l = n - k
        if l > top:
            continue
        dim = page.dim(k, l)
        out_rank = dmap.rank(k, l) if l - t + 1 >= 0 else 0
        sk, sl = k - t, l + t - 1
        in_rank = 0
        if sk >= 0 and sl <= top:
            if sl > page.max_fiber:
                raise WindowTooSmall(f"incoming differential at ({sk},{sl}) leaves the window")
            in_rank = dmap.rank(sk, sl)
        total += dim - out_rank - in_rank
    return total


# ---------------------------------------------------------------------------
# facts about specific classes


def multiplication_injectivity(
    page: SpectralPage,
    cls: AlgebraElement,
    rows: Iterable[int] | None = None,
    source_row: int = 0,
) -> bool:
    """Whether ``- (x) cls`` is injective from ``E^(k, source_row)`` for every ``k`` in ``rows``."""
    if cls.owner != page.fiber:
        raise SpectralError("class from another algebra")
    if not cls:
        return False
    if not cls.is_homogeneous():
        raise SpectralError("class must be homogeneous")
    if rows is None:
        rows = range(page.max_base + 1)
    fib = page.fiber
    target_row = source_row + cls.degree
    for k in rows:
        src = page.basis(k, source_row)
        tgt = page.basis(k, target_row)
        index = {t: i for i, t in enumerate(tgt)}
        cols = []
        for b, f in src:
            prod = fib.element([f]) * cls
            v = 0
            for m in prod.terms:
                v ^= 1 << index[(b, m)]
            cols.append(v)
        if gf2.rank(cols) != len(src):
            return False
    return True


@dataclass(frozen=True)
class ForcedVanishing:
    generator: str
    nilpotency: int
    forced_zero: bool
    violated: bool | None
    reason: str


def nilpotency(x: AlgebraElement) -> int:
    """Least ``N`` with ``x^N = 0``."""
    n, p = 1, x
    while p:
        p = p * x
        n += 1
        if n > 4 * (x.owner.top_degree + 2):
            raise SpectralError(f"{x} is not nilpotent")
    return n


def parity_forced_vanishing(
    fiber: PresentedAlgebra, assignment: DifferentialAssignment | None = None
) -> List[ForcedVanishing]:
    """Which generator images must vanish because ``g^N = 0`` with ``N`` odd.

    For each generator ``g`` with nilpotency ``N``, a probe differential with
    ``d(g) = x1^t`` is applied to the free monomial ``g^N``.  The result is
    ``N x1^t (x) g^(N-1)``; when it is non-zero and ``- (x) g^(N-1)`` is
    injective from the bottom row, every non-zero image of ``g`` contradicts
    ``g^N = 0``.
    """
    page_index = fiber.generator_degrees[0] + 1 if fiber.ngens else 2
    if assignment is not None:
        page_index = assignment.page_index
    out = []
    for idx, (name, deg) in enumerate(fiber.generators):
        g = fiber.gens()[idx]
        n = nilpotency(g)
        page = e2_page(fiber, 1)
        if deg != page_index - 1:
            out.append(ForcedVanishing(name, n, False, None, f"degree {deg} generator not hit by d_{page_index}"))
            continue
        probe = [F2Poly.zero(1)] * fiber.ngens
        probe[idx] = F2Poly(1, frozenset({(page_index,)}))
        dmap = derivation_extend(page, DifferentialAssignment(tuple(probe), page_index))
        exps = [0] * fiber.ngens
        exps[idx] = n
        value = dmap.apply_free((0,), exps)
        injective = multiplication_injectivity(page, g ** (n - 1), rows=range(page_index + 1))
        forced = bool(value) and injective
        if forced:
            reason = f"{name}^{n} = 0 with {n} odd: d({name}^{n}) = image (x) {name}^{n - 1} must vanish"
        else:
            reason = f"{name}^{n} = 0 with {n} even: d({name}^{n}) = 0 automatically"
        violated = None
        if assignment is not None:
            violated = forced and bool(assignment.images[idx])
        out.append(ForcedVanishing(name, n, forced, violated, reason))
    return out


# ---------------------------------------------------------------------------
# the obstruction


class Verdict(str, Enum):
    ADMISSIBLE = "ADMISSIBLE"
    INADMISSIBLE = "INADMISSIBLE"


@dataclass(frozen=True)
class ObstructionVerdict:
    verdict: Verdict
    reason: str
    zero_report: ZeroReport | None = None
    restricted_images: Tuple[F2Poly, ...] | None = None
    surviving_dimension: int | None = None
    derivation_consistent: bool | None = None

    @property
    def admissible(self) -> bool:
        return self.verdict is Verdict.ADMISSIBLE


def free_action_obstruction(
    fiber: PresentedAlgebra,
    r: int,
    assignment: DifferentialAssignment,
    dim_x: int | None = None,
) -> ObstructionVerdict:
    """Rule out differential data incompatible with a free ``(Z/2)^r`` action.

    INADMISSIBLE when every image is zero (the sequence would collapse at E2)
    or when the images share a non-zero zero ``c``: restricting along the
    ``Z/2`` at ``c`` kills every differential, and the restricted page keeps
    classes above ``dim X``.  ``surviving_dimension`` certifies that.
    """
    if dim_x is None:
        dim_x = fiber.top_degree
    if dim_x != fiber.top_degree:
        raise SpectralError("dim_x must equal the top degree of the fibre")
    page = e2_page(fiber, r)
    dmap = derivation_extend(page, assignment)
    consistent = dmap.is_consistent()
    t = assignment.page_index

    if assignment.is_zero():
        cert = total_dimension_above(dmap, dim_x)
        return ObstructionVerdict(
            Verdict.INADMISSIBLE,
            "all generator images vanish: the spectral sequence degenerates at E2",
            surviving_dimension=cert,
            derivation_consistent=consistent,
        )

    report = common_zero(list(assignment.images), r)
    if not report.has_nontrivial_zero:
        return ObstructionVerdict(
            Verdict.ADMISSIBLE,
            "images have no common non-zero zero",
            zero_report=report,
            derivation_consistent=consistent,
        )
    restricted = tuple(restriction(img, report.witness) for img in assignment.images)
    if any(restricted):
        raise AssertionError("restriction at a common zero must vanish")
    sub_page = SpectralPage(1, fiber, (dim_x + 1 + t, fiber.top_degree))
    sub = derivation_extend(sub_page, DifferentialAssignment(restricted, t))
    cert = total_dimension_above(sub, dim_x)
    return ObstructionVerdict(
        Verdict.INADMISSIBLE,
        f"images share the zero {report.witness}: the restricted sequence collapses "
        f"and keeps {cert} classes in total degree {dim_x + 1}",
        zero_report=report,
        restricted_images=restricted,
        surviving_dimension=cert,
        derivation_consistent=consistent,
    )


# ---------------------------------------------------------------------------
# enumeration over assignments


def forms(degree: int, r: int, max_monomials: int | None = None) -> Iterator[F2Poly]:
    """All degree-``degree`` forms in ``r`` variables (optionally capped in size)."""
    monos = monomials_of_degree(r, degree)
    cap = len(monos) if max_monomials is None else min(max_monomials, len(monos))
    for size in range(cap + 1):
        for combo in itertools.combinations(monos, size):
            yield F2Poly(r, frozenset(combo))


def parity_consistent_assignments(
    fiber: PresentedAlgebra, r: int, max_monomials: int | None = None
) -> Iterator[DifferentialAssignment]:
    """Every assignment whose forced-zero generators map to zero."""
    page_index = fiber.generator_degrees[0] + 1
    constraints = parity_forced_vanishing(fiber)
    choices = []
    for c in constraints:
        if c.forced_zero:
            choices.append([F2Poly.zero(r)])
        else:
            choices.append(list(forms(page_index, r, max_monomials)))
    for imgs in itertools.product(*choices):
        yield DifferentialAssignment(tuple(imgs), page_index)


@dataclass
class ObstructionCensus:
    rank: int
    assignments: int = 0
    inadmissible: int = 0
    admissible_examples: List[DifferentialAssignment] = field(default_factory=list)

    @property
    def all_inadmissible(self) -> bool:
        return self.assignments == self.inadmissible


def obstruction_census(
    fiber: PresentedAlgebra,
    r: int,
    max_monomials: int | None = None,
    keep_examples: int = 3,
) -> ObstructionCensus:
    census = ObstructionCensus(r)
    for a in parity_consistent_assignments(fiber, r, max_monomials):
        census.assignments += 1
        verdict = free_action_obstruction(fiber, r, a)
        if verdict.admissible:
            if len(census.admissible_examples) < keep_examples:
                census.admissible_examples.append(a)
        else:
            census.inadmissible += 1
    return census
