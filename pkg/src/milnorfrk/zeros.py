"""Non-trivial common zeros of homogeneous F2 polynomial systems on (Z/2)^r."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .polynomial import F2Poly, monomials_of_degree

MAX_RANK = 24
_CHUNK = 1 << 18


class RankGuardExceeded(ValueError):
    pass


@dataclass(frozen=True)
class ZeroReport:
    has_nontrivial_zero: bool
    witness: Tuple[int, ...] | None
    points_checked: int


def point_from_index(index: int, r: int) -> Tuple[int, ...]:
    """Point of (Z/2)^r whose coordinates are the bits of ``index``, x1 most significant."""
    return tuple((index >> (r - 1 - i)) & 1 for i in range(r))


def _vanishing_mask(system: Sequence[F2Poly], points: np.ndarray) -> np.ndarray:
    ok = np.ones(points.shape, dtype=bool)
    for f in system:
        val = np.zeros(points.shape, dtype=bool)
        for mask in f.support_masks():
            val ^= (points & mask) == mask
        ok &= ~val
    return ok


def common_zero(system: Sequence[F2Poly], r: int, max_rank: int = MAX_RANK) -> ZeroReport:
    """Decide whether the system has a non-zero common zero, by exhaustion.

    Points are scanned in lexicographic order, so the witness is the least one.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if r > max_rank:
        raise RankGuardExceeded(f"r={r} exceeds the exhaustive-search guard {max_rank}")
    for f in system:
        if f.nvars != r:
            raise ValueError(f"{f} is not a polynomial in {r} variables")
    total = (1 << r) - 1
    start = 1
    while start <= total:
        stop = min(total + 1, start + _CHUNK)
        pts = np.arange(start, stop, dtype=np.int64)
        hits = np.flatnonzero(_vanishing_mask(system, pts))
        if hits.size:
            idx = int(pts[hits[0]])
            return ZeroReport(True, point_from_index(idx, r), idx)
        start = stop
    return ZeroReport(False, None, total)


def restriction(f: F2Poly, point: Sequence[int]) -> F2Poly:
    """Substitute ``x_i -> c_i t``: the pull-back along the inclusion of Z/2 at ``c``."""
    if len(point) != f.nvars:
        raise ValueError("point has wrong length")
    if not any(point):
        raise ValueError("restriction needs a non-zero point")
    acc: set = set()
    for m in f.monomials:
        if all(point[i] or not e for i, e in enumerate(m)):
            acc ^= {(sum(m),)}
    return F2Poly(1, frozenset(acc))


def guaranteed_zero(m: int, n: int, r: int) -> bool:
    """Sufficient degree count: n forms of degree m in r > m*n variables share a zero."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be >= 0")
    return r > m * n


def random_form(rng: np.random.Generator, degree: int, r: int) -> F2Poly:
    monos = monomials_of_degree(r, degree)
    keep = rng.integers(0, 2, size=len(monos))
    return F2Poly(r, frozenset(m for m, k in zip(monos, keep) if k))


@dataclass
class FuzzReport:
    trials: int
    m: int
    n: int
    r: int
    seed: int
    passed: int = 0
    failures: List[List[str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.trials and not self.failures


def fuzz_zero_guarantee(trials: int, m: int, n: int, r: int, seed: int = 0) -> FuzzReport:
    """Random systems of ``n`` degree-``m`` forms in ``r > m*n`` variables must all have a zero.

    A failure means the search code is wrong, not the degree-count theorem.
    """
    if not r > m * n:
        raise ValueError(f"need r > m*n, got r={r}, m*n={m * n}")
    if r > 20:
        raise RankGuardExceeded("fuzzing is limited to r <= 20")
    rng = np.random.default_rng(seed)
    report = FuzzReport(trials, m, n, r, seed)
    for _ in range(trials):
        system = [random_form(rng, m, r) for _ in range(n)]
        res = common_zero(system, r)
        if res.has_nontrivial_zero and all(f(res.witness) == 0 for f in system):
            report.passed += 1
        else:
            report.failures.append([str(f) for f in system])
    return report
