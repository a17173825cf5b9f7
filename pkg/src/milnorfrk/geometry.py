"""Exact checks of coordinate involutions on Milnor hypersurfaces.

Maps are monomial: output coordinate ``i`` is ``c_i * z_p(i)`` or
``c_i * conj(z_p(i))`` with ``c_i`` a unit of Z[i].  Units are stored as
exponents ``k`` of ``i**k`` (mod 4), so all arithmetic is exact.

The real hypersurface is ``x0 y0 + ... + xs ys = 0`` in RP^r x RP^s and the
complex one ``z0 conj(w0) + ... + zs conj(ws) = 0`` in CP^r x CP^s; both are
``q(x, y) = x^T E y`` (resp. ``z^T E conj(w)``) with ``E`` the truncated
identity of shape ``(r+1, s+1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

GaussInt = Tuple[int, int]

_UNIT = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}
_UNIT_NAME = {0: "1", 1: "i", 2: "-1", 3: "-i"}


class GeometryError(ValueError):
    pass


class ParityError(GeometryError):
    pass


class NotMonomial(GeometryError):
    pass


class IllDefinedMap(GeometryError):
    pass


class SizeMismatch(GeometryError):
    pass


class NotAnInvolution(GeometryError):
    pass


class NonCommuting(GeometryError):
    pass


def _gmul(a: GaussInt, b: GaussInt) -> GaussInt:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gconj(a: GaussInt) -> GaussInt:
    return (a[0], -a[1])


# ---------------------------------------------------------------------------
# maps on one projective space


@dataclass(frozen=True)
class SignedScaledMap:
    """Monomial map on RP^n (``field="real"``) or CP^n (``field="complex"``)."""

    perm: Tuple[int, ...]
    coeffs: Tuple[int, ...]
    conj: Tuple[bool, ...]
    field: str = "real"
    name: str = ""

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise NotMonomial("perm is not a permutation")
        if len(self.coeffs) != n or len(self.conj) != n:
            raise NotMonomial("perm, coeffs and conj must have equal length")
        if self.field not in ("real", "complex"):
            raise GeometryError(f"unknown field {self.field!r}")
        object.__setattr__(self, "coeffs", tuple(c % 4 for c in self.coeffs))
        if self.field == "real":
            if any(c % 2 for c in self.coeffs):
                raise NotMonomial("real maps take entries +-1 only")
            object.__setattr__(self, "conj", (False,) * n)

    @property
    def size(self) -> int:
        return len(self.perm)

    @property
    def conjugates(self) -> bool:
        """True for a uniformly antilinear map."""
        return all(self.conj)

    @property
    def mixed(self) -> bool:
        return any(self.conj) and not all(self.conj)

    @classmethod
    def from_matrix(cls, matrix, conj=False, field="real", name="") -> "SignedScaledMap":
        """From a square matrix of Gaussian integers given as ``(re, im)`` arrays or a list."""
        if isinstance(matrix, tuple) and len(matrix) == 2 and hasattr(matrix[0], "shape"):
            re, im = (np.asarray(m, dtype=np.int64) for m in matrix)
        else:
            re = np.asarray(matrix, dtype=np.int64)
            im = np.zeros_like(re)
        n = re.shape[0]
        if re.shape != (n, n) or im.shape != (n, n):
            raise NotMonomial("matrix must be square")
        perm, coeffs = [], []
        for i in range(n):
            nz = [j for j in range(n) if re[i, j] or im[i, j]]
            if len(nz) != 1:
                raise NotMonomial(f"row {i} does not have exactly one non-zero entry")
            j = nz[0]
            entry = (int(re[i, j]), int(im[i, j]))
            inv = {v: k for k, v in _UNIT.items()}
            if entry not in inv:
                raise NotMonomial(f"entry {entry} is not a unit of Z[i]")
            perm.append(j)
            coeffs.append(inv[entry])
        if isinstance(conj, bool):
            conj = (conj,) * n
        return cls(tuple(perm), tuple(coeffs), tuple(conj), field, name)

    def matrix(self) -> Tuple[np.ndarray, np.ndarray]:
        n = self.size
        re = np.zeros((n, n), dtype=np.int64)
        im = np.zeros((n, n), dtype=np.int64)
        for i, (j, c) in enumerate(zip(self.perm, self.coeffs)):
            re[i, j], im[i, j] = _UNIT[c]
        return re, im

    def apply(self, z: Sequence[GaussInt]) -> List[GaussInt]:
        out = []
        for i in range(self.size):
            v = z[self.perm[i]]
            if self.conj[i]:
                v = _gconj(v)
            out.append(_gmul(_UNIT[self.coeffs[i]], v))
        return out

    def compose(self, other: "SignedScaledMap") -> "SignedScaledMap":
        """``self o other``."""
        if other.size != self.size or other.field != self.field:
            raise SizeMismatch("cannot compose maps on different spaces")
        perm, coeffs, conj = [], [], []
        for i in range(self.size):
            j = self.perm[i]
            inner = other.coeffs[j]
            if self.conj[i]:
                inner = -inner
            perm.append(other.perm[j])
            coeffs.append(self.coeffs[i] + inner)
            conj.append(self.conj[i] != other.conj[j])
        name = f"{self.name}{other.name}" if self.name and other.name else ""
        return SignedScaledMap(tuple(perm), tuple(coeffs), tuple(conj), self.field, name)

    def projectively_equal(self, other: "SignedScaledMap") -> bool:
        if (self.perm, self.conj, self.field) != (other.perm, other.conj, other.field):
            return False
        diffs = {(a - b) % 4 for a, b in zip(self.coeffs, other.coeffs)}
        return len(diffs) <= 1

    def is_projective_identity(self) -> bool:
        return self.projectively_equal(identity(self.size - 1, self.field))

    def canonical_key(self) -> tuple:
        shift = self.coeffs[0] if self.coeffs else 0
        return (self.perm, tuple((c - shift) % 4 for c in self.coeffs), self.conj)

    def cycles(self) -> List[Tuple[List[int], int]]:
        """Cycles of ``e_j -> c e_j'`` with the exponent of their entry product."""
        inv = {j: i for i, j in enumerate(self.perm)}
        seen, out = set(), []
        for start in range(self.size):
            if start in seen:
                continue
            cyc, prod, j = [], 0, start
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                nxt = inv[j]
                prod += self.coeffs[nxt]
                j = nxt
            out.append((cyc, prod % 4))
        return out

    def describe(self) -> str:
        coords = []
        for i in range(self.size):
            c = _UNIT_NAME[self.coeffs[i]]
            var = f"z{self.perm[i]}" if self.field == "complex" else f"x{self.perm[i]}"
            if self.conj[i]:
                var = f"conj({var})"
            coords.append(var if c == "1" else f"-{var}" if c == "-1" else f"{c}*{var}")
        return "[" + ", ".join(coords) + "]"


def identity(n: int, field: str = "real") -> SignedScaledMap:
    return SignedScaledMap(tuple(range(n + 1)), (0,) * (n + 1), (False,) * (n + 1), field, "id")


def _pair_swap(n: int, field: str, conj: bool, name: str) -> SignedScaledMap:
    perm, coeffs = [], []
    for k in range(0, n + 1, 2):
        perm += [k + 1, k]
        coeffs += [2, 0]
    return SignedScaledMap(tuple(perm), tuple(coeffs), (conj,) * (n + 1), field, name)


def s1(n: int) -> SignedScaledMap:
    """``[x0, x1, ...] -> [-x1, x0, ..., -xn, x(n-1)]`` on RP^n, n odd."""
    if n < 1 or n % 2 == 0:
        raise ParityError(f"s1 needs n odd, got {n}")
    return _pair_swap(n, "real", False, "S1")


def s2(n: int) -> SignedScaledMap:
    """``[x0, x1, x2, x3, ...] -> [-x2, x3, x0, -x1, ...]`` on RP^n, n = 3 mod 4."""
    if n < 3 or n % 4 != 3:
        raise ParityError(f"s2 needs n = 3 mod 4, got {n}")
    perm, coeffs = [], []
    for k in range(0, n + 1, 4):
        perm += [k + 2, k + 3, k, k + 1]
        coeffs += [2, 0, 0, 2]
    return SignedScaledMap(tuple(perm), tuple(coeffs), (False,) * (n + 1), "real", "S2")


def t1(n: int) -> SignedScaledMap:
    """``[z0, z1, ...] -> [-conj z1, conj z0, ...]`` on CP^n, n odd."""
    if n < 1 or n % 2 == 0:
        raise ParityError(f"t1 needs n odd, got {n}")
    return _pair_swap(n, "complex", True, "T1")


def t2(n: int) -> SignedScaledMap:
    """Pairs as in :func:`t1` on the first ``n`` coordinates and ``i * z_n`` (unconjugated) last.

    This is the formula exactly as written for even ``n``; it mixes linear and
    antilinear coordinates.
    """
    if n < 2 or n % 2:
        raise ParityError(f"t2 needs n even, got {n}")
    base = _pair_swap(n - 1, "complex", True, "")
    return SignedScaledMap(
        base.perm + (n,), base.coeffs + (1,), base.conj + (False,), "complex", "T2"
    )


def t2_conjugated(n: int) -> SignedScaledMap:
    """Variant of :func:`t2` with last coordinate ``i * conj(z_n)``."""
    m = t2(n)
    return SignedScaledMap(m.perm, m.coeffs, (True,) * (n + 1), "complex", "T2c")


# ---------------------------------------------------------------------------
# single-factor checks


def verify_well_defined(m: SignedScaledMap) -> bool:
    """Projective well-definedness: rescaling ``z -> mu z`` must rescale every coordinate alike.

    Linear coordinates pick up ``mu`` and conjugated ones ``conj(mu)``; a map
    mixing both kinds fails.
    """
    return m.field == "real" or not m.mixed


@dataclass(frozen=True)
class FreenessVerdict:
    free: bool | None
    method: str
    certificate: dict = field(default_factory=dict)
    witness: Tuple | None = None


def _eigenvector(m: SignedScaledMap, cycle: List[int], lam: int) -> List[GaussInt]:
    """Eigenvector supported on ``cycle`` for eigenvalue ``i**lam`` of a linear map."""
    inv = {j: i for i, j in enumerate(m.perm)}
    vec = [(0, 0)] * m.size
    w = 0  # exponent of the current weight
    for j in cycle:
        vec[j] = _UNIT[w % 4]
        w = w + m.coeffs[inv[j]] - lam
    return vec


def free_on_projective(m: SignedScaledMap) -> FreenessVerdict:
    """Decide whether ``m`` acts without fixed points on its projective space.

    Linear maps: a cycle of length ``l`` and entry product ``sigma`` has
    characteristic polynomial ``x^l - sigma``.  Over R there is a real root
    unless ``sigma = -1`` and ``l`` is even; over C there is always a root.
    Antilinear maps ``J``: a fixed line may be taken with ``J z = z``, and on
    a cycle of length ``l`` the sum ``z = sum_k J^k (mu e)`` works exactly when
    ``J^l (mu e) = mu e``.  Odd cycles always admit such ``mu``; even cycles
    need ``J^l e = e`` (for ``l = 2`` this is ``J^2 = +1``).
    """
    if not verify_well_defined(m):
        raise IllDefinedMap(f"{m.name or m.describe()} mixes linear and antilinear coordinates")
    cycles = m.cycles()
    cert = {"cycles": [{"cycle": c, "length": len(c), "product": _UNIT_NAME[p]} for c, p in cycles]}

    if m.field == "real" or not m.conjugates:
        units = (0, 2) if m.field == "real" else (0, 1, 2, 3)
        for cyc, prod in cycles:
            for lam in units:
                if (lam * len(cyc) - prod) % 4 == 0:
                    vec = _eigenvector(m, cyc, lam)
                    return FreenessVerdict(
                        False, "cycle criterion",
                        {**cert, "eigenvalue": _UNIT_NAME[lam]}, tuple(vec),
                    )
        if m.field == "complex":
            return FreenessVerdict(False, "complex linear maps always have an eigenvector", cert)
        return FreenessVerdict(True, "cycle criterion", cert)

    # antilinear: J^l is a scalar on each cycle's unit vector e.  A fixed line
    # exists iff J^l (mu e) = mu e for some unit-like mu; odd l always has one
    # since J^l is antilinear there, even l needs J^l e = e.
    for cyc, _ in cycles:
        e = [(0, 0)] * m.size
        e[cyc[0]] = (1, 0)
        for mu in ((1, 0), (0, 1), (1, 1), (1, -1)):
            start = [_gmul(mu, c) for c in e]
            orbit = [start]
            for _ in range(len(cyc)):
                orbit.append(m.apply(orbit[-1]))
            if orbit[-1] == start:
                w = [(sum(v[i][0] for v in orbit[:-1]), sum(v[i][1] for v in orbit[:-1])) for i in range(m.size)]
                return FreenessVerdict(
                    False, "antilinear cycle criterion",
                    {**cert, "cycle": cyc, "scale": list(mu)}, tuple(w),
                )
            if len(cyc) % 2 == 0:
                break
    return FreenessVerdict(True, "antilinear cycle criterion", cert)


# ---------------------------------------------------------------------------
# product maps on the hypersurface


@dataclass(frozen=True)
class HypersurfaceForm:
    r: int
    s: int
    field: str = "real"

    def __post_init__(self):
        if not 0 <= self.s <= self.r:
            raise GeometryError(f"need 0 <= s <= r, got r={self.r}, s={self.s}")
        if self.field not in ("real", "complex"):
            raise GeometryError(f"unknown field {self.field!r}")

    def matrix(self) -> np.ndarray:
        e = np.zeros((self.r + 1, self.s + 1), dtype=np.int64)
        for i in range(self.s + 1):
            e[i, i] = 1
        return e

    def value(self, x: Sequence[GaussInt], y: Sequence[GaussInt]) -> GaussInt:
        tot = (0, 0)
        for i in range(self.s + 1):
            yi = _gconj(y[i]) if self.field == "complex" else y[i]
            p = _gmul(x[i], yi)
            tot = (tot[0] + p[0], tot[1] + p[1])
        return tot


@dataclass(frozen=True)
class ProductMap:
    """``(x, y) -> (F x, G y)``, or ``(F y, G x)`` when ``swap``."""

    first: SignedScaledMap
    second: SignedScaledMap
    swap: bool = False
    name: str = ""

    def __post_init__(self):
        if self.first.field != self.second.field:
            raise GeometryError("factor maps live over different fields")
        if self.swap and self.first.size != self.second.size:
            raise SizeMismatch("swap needs factors of equal dimension")

    @property
    def field(self) -> str:
        return self.first.field

    def compose(self, other: "ProductMap") -> "ProductMap":
        """``self o other``."""
        name = f"{self.name}{other.name}" if self.name and other.name else ""
        if not self.swap:
            return ProductMap(self.first.compose(other.first), self.second.compose(other.second), other.swap, name)
        return ProductMap(self.first.compose(other.second), self.second.compose(other.first), not other.swap, name)

    def projectively_equal(self, other: "ProductMap") -> bool:
        return (
            self.swap == other.swap
            and self.first.projectively_equal(other.first)
            and self.second.projectively_equal(other.second)
        )

    def is_identity(self) -> bool:
        return not self.swap and self.first.is_projective_identity() and self.second.is_projective_identity()

    def canonical_key(self) -> tuple:
        return (self.swap, self.first.canonical_key(), self.second.canonical_key())

    def apply(self, x: Sequence[GaussInt], y: Sequence[GaussInt]):
        if self.swap:
            return self.first.apply(y), self.second.apply(x)
        return self.first.apply(x), self.second.apply(y)


def _gm_mul(a, b):
    return (a[0] @ b[0] - a[1] @ b[1], a[0] @ b[1] + a[1] @ b[0])


def _gm_t(a):
    return (a[0].T, a[1].T)


def _gm_conj(a):
    return (a[0], -a[1])


def _as_gm(e: np.ndarray):
    return (e, np.zeros_like(e))


def _scalar_multiple(p, e: np.ndarray) -> GaussInt | None:
    re, im = p
    if re.shape != e.shape:
        return None
    c = (int(re[0, 0]), int(im[0, 0]))
    if c == (0, 0):
        return None
    if np.array_equal(re, c[0] * e) and np.array_equal(im, c[1] * e):
        return c
    return None


def transformed_pairing(pm: ProductMap, form: HypersurfaceForm):
    """Matrix ``P`` and conjugation pattern of ``q`` pulled back along ``pm``.

    Returns ``(P, (eps1, eps2))`` meaning the pulled-back form is
    ``z^(eps1) P w^(eps2)`` (``eps`` = 1 for a conjugated argument), or
    ``None`` when a factor map mixes linear and antilinear coordinates.
    """
    if pm.first.size != form.r + 1 or pm.second.size != form.s + 1:
        raise SizeMismatch(
            f"map sizes ({pm.first.size}, {pm.second.size}) do not fit form ({form.r}, {form.s})"
        )
    if pm.field != form.field:
        raise GeometryError("map and form live over different fields")
    if not (verify_well_defined(pm.first) and verify_well_defined(pm.second)):
        return None
    e = _as_gm(form.matrix())
    m, n = pm.first.matrix(), pm.second.matrix()
    if form.field == "real":
        if pm.swap:
            return _gm_mul(_gm_mul(_gm_t(n), _gm_t(e)), m), (0, 0)
        return _gm_mul(_gm_mul(_gm_t(m), e), n), (0, 0)
    cm, cn = int(pm.first.conjugates), int(pm.second.conjugates)
    if pm.swap:
        return _gm_mul(_gm_mul(_gm_t(_gm_conj(n)), _gm_t(e)), m), (1 - cn, cm)
    return _gm_mul(_gm_mul(_gm_t(m), e), _gm_conj(n)), (cm, 1 - cn)


def preserves_hypersurface(pm: ProductMap, form: HypersurfaceForm) -> bool:
    """Whether the pulled-back defining form is a non-zero multiple of the original."""
    return pairing_scalar(pm, form) is not None


def pairing_scalar(pm: ProductMap, form: HypersurfaceForm) -> GaussInt | None:
    res = transformed_pairing(pm, form)
    if res is None:
        return None
    p, eps = res
    if form.field == "complex" and eps not in ((0, 1), (1, 0)):
        return None
    return _scalar_multiple(p, form.matrix())


@dataclass(frozen=True)
class InvolutionVerdict:
    passed: bool
    composite: ProductMap
    detail: str


def verify_involution_on_hypersurface(pm: ProductMap) -> InvolutionVerdict:
    """``pm o pm`` must be scalar on each factor (projectively the identity)."""
    sq = pm.compose(pm)
    if sq.is_identity():
        return InvolutionVerdict(True, sq, "square is projectively the identity")
    parts = []
    for label, f in (("first", sq.first), ("second", sq.second)):
        if not f.is_projective_identity():
            parts.append(f"{label} factor of the square is {f.describe()}")
    if sq.swap:
        parts.append("square still swaps the factors")
    return InvolutionVerdict(False, sq, "; ".join(parts))


def _real_eigenspaces(m: SignedScaledMap) -> Dict[int, List[Tuple[int, ...]]]:
    out: Dict[int, List[Tuple[int, ...]]] = {0: [], 2: []}
    for cyc, prod in m.cycles():
        for lam in (0, 2):
            if (lam * len(cyc) - prod) % 4 == 0:
                out[lam].append(tuple(v[0] for v in _eigenvector(m, cyc, lam)))
    return out


def _kernel_vector(functional: Sequence[int], basis: List[Tuple[int, ...]]) -> Tuple[int, ...] | None:
    """A non-zero integer vector in ``span(basis)`` annihilated by ``functional``."""
    vals = [sum(f * b for f, b in zip(functional, vec)) for vec in basis]
    for i, vi in enumerate(vals):
        if vi == 0:
            return basis[i]
    if len(basis) >= 2:
        v0, v1 = vals[0], vals[1]
        return tuple(v1 * a - v0 * b for a, b in zip(basis[0], basis[1]))
    return None


def free_on_milnor(pm: ProductMap, form: HypersurfaceForm, max_dim: int = 20) -> FreenessVerdict:
    """Decide freeness of an involution on the hypersurface."""
    inv = verify_involution_on_hypersurface(pm)
    if not inv.passed:
        raise NotAnInvolution(inv.detail)
    if pm.swap:
        if pm.first.is_projective_identity() and pm.second.is_projective_identity():
            kind = "sum of |z_i|^2" if form.field == "complex" else "sum of x_i^2"
            return FreenessVerdict(
                True, "anisotropy",
                {"fixed_points": "[x] = [y]", "restricted_form": kind, "positive_definite": True},
            )
        return FreenessVerdict(None, "undetermined: swap composed with non-trivial factor maps")
    for label, f in (("first", pm.first), ("second", pm.second)):
        v = free_on_projective(f)
        if v.free:
            return FreenessVerdict(True, f"{label} factor free", {"factor": label, **v.certificate})
    if form.field == "real":
        if max(pm.first.size, pm.second.size) > max_dim:
            return FreenessVerdict(None, "undetermined: eigenspace guard exceeded")
        e = form.matrix()
        va, wa = _real_eigenspaces(pm.first), _real_eigenspaces(pm.second)
        for lam, mu in itertools.product((0, 2), repeat=2):
            vs, ws = va[lam], wa[mu]
            if not vs or not ws:
                continue
            for y in ws:
                x = _kernel_vector(e @ np.array(y), vs)
                if x is not None and any(x):
                    return FreenessVerdict(
                        False, "fixed point on hypersurface",
                        {"eigenvalues": (_UNIT_NAME[lam], _UNIT_NAME[mu])},
                        (tuple(int(a) for a in x), tuple(int(b) for b in y)),
                    )
            for x in vs:
                y = _kernel_vector(e.T @ np.array(x), ws)
                if y is not None and any(y):
                    return FreenessVerdict(
                        False, "fixed point on hypersurface",
                        {"eigenvalues": (_UNIT_NAME[lam], _UNIT_NAME[mu])},
                        (tuple(int(a) for a in x), tuple(int(b) for b in y)),
                    )
        return FreenessVerdict(True, "eigenspaces miss the hypersurface")
    return FreenessVerdict(None, "undetermined: no factor is free")


# ---------------------------------------------------------------------------
# group generated by commuting involutions


@dataclass
class RankReport:
    rank: int
    elements: List[str]
    table: List[List[str]]
    all_free: bool
    freeness: Dict[str, FreenessVerdict]


def commuting_rank(maps: Sequence[ProductMap], form: HypersurfaceForm) -> RankReport:
    """Rank of the elementary abelian 2-group generated by commuting free involutions."""
    for pm in maps:
        if not preserves_hypersurface(pm, form):
            raise GeometryError(f"{pm.name} does not preserve the hypersurface")
        inv = verify_involution_on_hypersurface(pm)
        if not inv.passed:
            raise NotAnInvolution(f"{pm.name}: {inv.detail}")
    for p, q in itertools.combinations(maps, 2):
        if not p.compose(q).projectively_equal(q.compose(p)):
            raise NonCommuting(f"{p.name} and {q.name} do not commute")

    ident = ProductMap(identity(form.r, form.field), identity(form.s, form.field), False, "1")
    elements: Dict[tuple, ProductMap] = {ident.canonical_key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for pm in maps:
                h = pm.compose(g)
                key = h.canonical_key()
                if key not in elements:
                    label = pm.name if g.name == "1" else "*".join(sorted(g.name.split("*") + [pm.name]))
                    h = ProductMap(h.first, h.second, h.swap, label)
                    elements[key] = h
                    nxt.append(h)
        frontier = nxt

    group = list(elements.values())
    size = len(group)
    rank = size.bit_length() - 1
    if 1 << rank != size:
        raise GeometryError(f"generated group has order {size}, not a power of 2")
    names = [g.name for g in group]
    by_key = {k: v.name for k, v in elements.items()}
    table = [[by_key[g.compose(h).canonical_key()] for h in group] for g in group]
    freeness = {}
    for g in group:
        if g.is_identity():
            continue
        freeness[g.name] = free_on_milnor(g, form)
    return RankReport(rank, names, table, all(v.free for v in freeness.values()), freeness)


# ---------------------------------------------------------------------------
# the construction catalogue


def construction_a(s: int) -> Tuple[ProductMap, HypersurfaceForm]:
    return ProductMap(identity(s), identity(s), True, "A"), HypersurfaceForm(s, s, "real")


def construction_a1(r: int, s: int) -> Tuple[ProductMap, HypersurfaceForm]:
    return ProductMap(s1(r), s1(s), False, "A1"), HypersurfaceForm(r, s, "real")


def construction_a2(r: int, s: int) -> Tuple[ProductMap, HypersurfaceForm]:
    return ProductMap(s2(r), s2(s), False, "A2"), HypersurfaceForm(r, s, "real")


def construction_b(s: int) -> Tuple[ProductMap, HypersurfaceForm]:
    return (
        ProductMap(identity(s, "complex"), identity(s, "complex"), True, "B"),
        HypersurfaceForm(s, s, "complex"),
    )


def construction_b1(r: int, s: int) -> Tuple[ProductMap, HypersurfaceForm]:
    return ProductMap(t1(r), t1(s), False, "B1"), HypersurfaceForm(r, s, "complex")


def construction_b2(r: int, s: int, conjugated: bool = False) -> Tuple[ProductMap, HypersurfaceForm]:
    first = t2_conjugated(r) if conjugated else t2(r)
    return (
        ProductMap(first, t1(s), False, "B2c" if conjugated else "B2"),
        HypersurfaceForm(r, s, "complex"),
    )


@dataclass
class CatalogEntry:
    name: str
    params: Tuple[int, ...]
    claims: Dict[str, bool]
    verdicts: Dict[str, bool | None]
    certificates: List[dict]
    status: str  # PASS, FINDING or FAIL

    def to_json(self) -> dict:
        key = "n" if len(self.params) == 1 else "r_s"
        return {
            "name": self.name,
            key: self.params[0] if len(self.params) == 1 else list(self.params),
            "claims": self.claims,
            "verdicts": self.verdicts,
            "certificates": self.certificates,
            "status": self.status,
        }


def check_construction(
    pm: ProductMap, form: HypersurfaceForm, params: Tuple[int, ...], expect_finding: bool = False
) -> CatalogEntry:
    """Run every check on one construction and compare against its claims."""
    claims = {"well_defined": True, "preserves_form": True, "involution": True, "free": True}
    verdicts: Dict[str, bool | None] = {}
    certs: List[dict] = []
    wd = verify_well_defined(pm.first) and verify_well_defined(pm.second)
    verdicts["well_defined"] = wd
    if not wd:
        certs.append({"check": "well_defined", "detail": f"{pm.first.describe()} mixes z and conj(z)"})
    scalar = pairing_scalar(pm, form)
    verdicts["preserves_form"] = scalar is not None
    if scalar is not None:
        certs.append({"check": "preserves_form", "scalar": list(scalar)})
    inv = verify_involution_on_hypersurface(pm)
    verdicts["involution"] = inv.passed
    certs.append({"check": "involution", "detail": inv.detail})
    if wd and inv.passed:
        fr = free_on_milnor(pm, form)
        verdicts["free"] = fr.free
        certs.append({"check": "free", "method": fr.method, **_jsonable(fr.certificate)})
    else:
        verdicts["free"] = None
    ok = all(verdicts[k] == claims[k] for k in claims)
    status = "PASS" if ok else ("FINDING" if expect_finding else "FAIL")
    return CatalogEntry(pm.name, params, claims, verdicts, certs, status)


def _jsonable(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        if isinstance(v, tuple):
            v = list(v)
        out[k] = v
    return out


def rank_two_entry(r: int, s: int) -> CatalogEntry:
    a1, form = construction_a1(r, s)
    a2, _ = construction_a2(r, s)
    certs: List[dict] = []
    verdicts: Dict[str, bool | None] = {"distinct": not a1.projectively_equal(a2)}
    try:
        rep = commuting_rank([a1, a2], form)
        verdicts["commute"] = True
        verdicts["free"] = rep.all_free
        verdicts["rank_two"] = rep.rank == 2
        certs.append({"elements": rep.elements, "table": rep.table})
    except NonCommuting as exc:
        verdicts.update(commute=False, free=None, rank_two=False)
        certs.append({"error": str(exc)})
    claims = {"distinct": True, "commute": True, "free": True, "rank_two": True}
    status = "PASS" if all(verdicts[k] == claims[k] for k in claims) else "FAIL"
    return CatalogEntry("A1,A2", (r, s), claims, verdicts, certs, status)


def _pairs(values: Sequence[int]) -> List[Tuple[int, int]]:
    return [(r, s) for r in values for s in values if s <= r]


def construction_catalog() -> List[CatalogEntry]:
    """Every construction at the parameters it is claimed for, checked exactly."""
    out: List[CatalogEntry] = []
    for s in range(1, 10):
        pm, form = construction_a(s)
        out.append(check_construction(pm, form, (s,)))
    for r, s in _pairs((5, 9, 13)):
        pm, form = construction_a1(r, s)
        out.append(check_construction(pm, form, (r, s)))
    for r, s in _pairs((3, 7, 11)):
        pm, form = construction_a1(r, s)
        out.append(check_construction(pm, form, (r, s)))
        pm, form = construction_a2(r, s)
        out.append(check_construction(pm, form, (r, s)))
        out.append(rank_two_entry(r, s))
    for s in range(1, 6):
        pm, form = construction_b(s)
        out.append(check_construction(pm, form, (s,)))
    for r, s in _pairs((1, 3, 5)):
        pm, form = construction_b1(r, s)
        out.append(check_construction(pm, form, (r, s)))
    for r, s in ((2, 1), (4, 1), (4, 3), (6, 1), (6, 5)):
        for conjugated in (False, True):
            pm, form = construction_b2(r, s, conjugated)
            out.append(check_construction(pm, form, (r, s), expect_finding=True))
    return out


def verified_free_involutions(kind: str, r: int, s: int) -> List[str]:
    """Names of catalogued constructions verified free on the given Milnor manifold."""
    found = []
    for entry in construction_catalog():
        if entry.status != "PASS" or entry.name == "A1,A2":
            continue
        is_complex = entry.name.startswith("B")
        if (kind == "complex") != is_complex:
            continue
        params = entry.params if len(entry.params) == 2 else (entry.params[0],) * 2
        if params == (r, s) and entry.verdicts.get("free"):
            found.append(entry.name)
    return found


# ---------------------------------------------------------------------------
# exhaustive search over monomial involutions (real case)


def _signed_projective_involutions(n: int) -> List[SignedScaledMap]:
    size = n + 1
    out = []
    for perm in itertools.permutations(range(size)):
        if any(perm[perm[i]] != i for i in range(size)):
            continue
        for signs in itertools.product((0, 2), repeat=size):
            m = SignedScaledMap(perm, signs, (False,) * size, "real")
            if m.compose(m).is_projective_identity():
                out.append(m)
    return out


def monomial_free_involutions(r: int, s: int, limit: int = 5) -> List[ProductMap]:
    """Free involutions of RH_{r,s} of the form ``F x G`` or a swap, with signed-permutation factors.

    Stops after ``limit`` hits.  Sizes are small (``r <= 5``) in practice.
    """
    form = HypersurfaceForm(r, s, "real")
    firsts = _signed_projective_involutions(r)
    seconds = firsts if r == s else _signed_projective_involutions(s)
    hits: List[ProductMap] = []
    candidates = [ProductMap(f, g, False) for f in firsts for g in seconds]
    if r == s:
        everything = _signed_projective_perms(r)
        candidates += [ProductMap(f, g, True) for f in everything for g in everything]
    for pm in candidates:
        if pm.is_identity() or not preserves_hypersurface(pm, form):
            continue
        if not verify_involution_on_hypersurface(pm).passed:
            continue
        v = free_on_milnor(pm, form)
        if v.free:
            hits.append(pm)
            if len(hits) >= limit:
                break
    return hits


def _signed_projective_perms(n: int) -> List[SignedScaledMap]:
    size = n + 1
    return [
        SignedScaledMap(perm, (0,) + signs, (False,) * size, "real")
        for perm in itertools.permutations(range(size))
        for signs in itertools.product((0, 2), repeat=size - 1)
    ]
