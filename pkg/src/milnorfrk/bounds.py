"""Closed-form free 2-rank bounds and obstructions for products of Milnor manifolds."""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

from .algebra import MilnorFactor, euler_characteristic, milnor_product


class _NotApplicable:
    """Sentinel for a bound whose side conditions fail; distinct from 0."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NOT_APPLICABLE"

    __str__ = __repr__

    def __bool__(self) -> bool:
        raise TypeError("NOT_APPLICABLE has no truth value; compare with `is`")


NOT_APPLICABLE = _NotApplicable()

FactorSpec = MilnorFactor


class BoundsError(ValueError):
    pass


def factor(kind: str, r: int, s: int) -> FactorSpec:
    return MilnorFactor(kind, r, s)


def eta(n: int) -> int:
    if n < 0:
        raise BoundsError("n must be >= 0")
    return n % 2


def theta(n: int) -> int:
    if n < 0:
        raise BoundsError("n must be >= 0")
    return 0 if n % 2 == 0 else (1 if n % 4 == 1 else 2)


def _eta_sum(factors: Sequence[FactorSpec]) -> int:
    return sum(eta(f.s) + eta(f.r) for f in factors)


def _avoids_three_mod_four(factors: Sequence[FactorSpec]) -> bool:
    return all(f.s % 4 != 3 and f.r % 4 != 3 for f in factors)


@dataclass(frozen=True)
class BoundReport:
    part1: int
    part2: object  # int or NOT_APPLICABLE
    hypotheses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"part1": self.part1, "part2": _cell(self.part2), "hypotheses": self.hypotheses}


def _hypotheses(factors: Sequence[FactorSpec]) -> dict:
    return {
        "assumed": ["induced action on mod 2 cohomology is trivial"],
        "checked": {"s_i, r_i not 3 mod 4": _avoids_three_mod_four(factors)},
        "unchecked": ["the action is free", "X has the mod 2 cohomology of the product"],
    }


def _rank_bound(factors: Sequence[FactorSpec], kind: str, multiplier: int) -> BoundReport:
    factors = list(factors)
    wrong = [f for f in factors if f.kind != kind]
    if wrong:
        raise BoundsError(f"expected {kind} factors only, got {wrong[0].kind}")
    total = _eta_sum(factors)
    part2 = total if _avoids_three_mod_four(factors) else NOT_APPLICABLE
    return BoundReport(multiplier * total, part2, _hypotheses(factors))


def real_rank_bound(factors: Sequence[FactorSpec]) -> BoundReport:
    """Upper bounds on the free 2-rank for a product of real Milnor manifolds.

    ``part1 = 2 * sum(eta(s_i) + eta(r_i))`` always; ``part2`` drops the factor
    2 when no parameter is 3 mod 4.
    """
    return _rank_bound(factors, "real", 2)


def complex_rank_bound(factors: Sequence[FactorSpec]) -> BoundReport:
    """As :func:`real_rank_bound` for complex factors, with ``part1`` multiplier 3."""
    return _rank_bound(factors, "complex", 3)


@dataclass(frozen=True)
class ExactRank:
    value: object  # int or NOT_APPLICABLE
    lower_bound_verified: bool
    note: str

    def to_json(self) -> dict:
        return {"value": _cell(self.value), "lower_bound_verified": self.lower_bound_verified, "note": self.note}


def complex_exact_rank(factors: Sequence[FactorSpec]) -> ExactRank:
    """Exact free 2-rank when every ``s_i = 1 mod 4``, ``r_i`` even and ``s_i < r_i``.

    The upper bound is the complex ``part2``.  Attaining it needs a free
    involution on each factor with ``r_i`` even, and the coordinate map offered
    for that does not verify exactly, so ``lower_bound_verified`` is False.
    """
    factors = list(factors)
    ok = all(
        f.kind == "complex" and f.s % 4 == 1 and f.r % 4 in (0, 2) and f.s < f.r for f in factors
    )
    if not ok:
        return ExactRank(NOT_APPLICABLE, False, "side conditions fail")
    return ExactRank(
        _eta_sum(factors), False,
        "upper bound proved; lower-bound involution on the even-r factor fails exact verification",
    )


def complex_exact_rank_value(factors: Sequence[FactorSpec]):
    return complex_exact_rank(factors).value


def euler_obstruction(factors: Sequence[FactorSpec]) -> bool:
    """True when the Euler characteristic is odd, which rules out every free 2-group action."""
    return euler_characteristic(milnor_product((f.kind, f.r, f.s) for f in factors)) % 2 == 1


def _two_adic(n: int) -> Tuple[int, int]:
    """``n = 2^beta (2l + 1)``; returns ``(beta, l)``."""
    if n <= 0:
        raise BoundsError("need a positive integer")
    beta = (n & -n).bit_length() - 1
    return beta, ((n >> beta) - 1) // 2


def khare_nonbounding(r: int, s: int) -> bool:
    """Whether RH_{r,s} with ``s`` odd fails to bound mod 2 (so admits no free involution)."""
    if s % 2 == 0 or s < 1 or r < 1:
        return False
    k = (s - 1) // 2
    beta, l = _two_adic(r)
    if beta >= 2:
        return k >= 1
    if beta == 1:
        delta, _ = _two_adic(l + 1)
        return k >= (1 << (delta + 1)) - 1
    return False


@dataclass(frozen=True)
class InequalityCheck:
    holds: bool
    lhs: int
    rhs: int


def adem_yalcin_check(factors: Sequence[FactorSpec]) -> InequalityCheck:
    """``part1 <= 2 dim H_1(X; Z/2) = 4n`` for real factors with ``s_i < r_i``."""
    factors = list(factors)
    if any(f.kind != "real" or not f.s < f.r for f in factors):
        raise BoundsError("needs real factors with s < r")
    lhs = real_rank_bound(factors).part1
    rhs = 4 * len(factors)
    return InequalityCheck(lhs <= rhs, lhs, rhs)


def cusick_context(kind: str, dims: Iterable[int]) -> int:
    """theta-sum for products of RP^n (``"rp"``), eta-sum for CP^n (``"cp"``)."""
    if kind == "rp":
        return sum(theta(n) for n in dims)
    if kind == "cp":
        return sum(eta(n) for n in dims)
    raise BoundsError(f"kind must be 'rp' or 'cp', got {kind!r}")


# ---------------------------------------------------------------------------
# tables


def _cell(v):
    return str(v) if v is NOT_APPLICABLE else v


def format_factors(factors: Sequence[FactorSpec]) -> str:
    return ";".join(f"{f.kind}:{f.r},{f.s}" for f in factors)


def bound_row(factors: Sequence[FactorSpec]) -> dict:
    """One table row; mixed real/complex lists get part1 and part2 as NOT_APPLICABLE."""
    factors = list(factors)
    kinds = {f.kind for f in factors}
    if kinds == {"real"}:
        rep = real_rank_bound(factors)
    elif kinds == {"complex"}:
        rep = complex_rank_bound(factors)
    else:
        rep = None
    khare = None
    if len(factors) == 1 and factors[0].kind == "real":
        khare = khare_nonbounding(factors[0].r, factors[0].s)
    corollary = complex_exact_rank(factors) if kinds == {"complex"} else None
    return {
        "factors": format_factors(factors),
        "part1": rep.part1 if rep else str(NOT_APPLICABLE),
        "part2": _cell(rep.part2) if rep else str(NOT_APPLICABLE),
        "corollary": _cell(corollary.value) if corollary else str(NOT_APPLICABLE),
        "chi_obstructed": euler_obstruction(factors),
        "khare": khare,
    }


COLUMNS = ("factors", "part1", "part2", "corollary", "chi_obstructed", "khare")


def table_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: ("" if row[k] is None else str(row[k]).lower() if isinstance(row[k], bool) else row[k]) for k in COLUMNS})
    return buf.getvalue()


def table_json(rows: Sequence[dict]) -> str:
    return json.dumps([{k: row[k] for k in COLUMNS} for row in rows], indent=2)


_FACTOR_RE = re.compile(r"\s*(\w+):(-?\d+),(-?\d+)\s*(?:[,;]|$)")


def parse_factor_list(text: str) -> List[FactorSpec]:
    """Parse ``"real:5,5"`` or a list such as ``"real:5,5,real:2,1"`` (``;`` also separates)."""
    out, pos, text = [], 0, text.strip()
    while pos < len(text):
        m = _FACTOR_RE.match(text, pos)
        if not m or m.end() == pos:
            raise BoundsError(f"cannot parse factor list {text!r}; use kind:r,s")
        out.append(MilnorFactor(m.group(1), int(m.group(2)), int(m.group(3))))
        pos = m.end()
    if not out:
        raise BoundsError("empty factor list")
    return out
