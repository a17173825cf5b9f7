"""Property suites behind ``milnorfrk verify``.

Each suite returns a list of :class:`CheckResult`.  ``FAIL`` means the code
disagrees with an invariant it must satisfy; ``FINDING`` means a claimed
construction was refuted by exact computation, with a certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Sequence

import numpy as np

from . import bounds, geometry
from .algebra import (
    AlgebraElement,
    complex_milnor,
    euler_characteristic,
    milnor_reduce_lazy,
    milnor_reduce_stepwise,
    poincare_series,
    real_milnor,
    tensor,
)
from .polynomial import F2Poly, monomials_of_degree
from .spectral import (
    DifferentialAssignment,
    derivation_extend,
    e2_page,
    obstruction_census,
    parity_forced_vanishing,
    random_assignment,
    random_consistent_assignment,
    total_dimension_above,
    zero_assignment,
)
from .steenrod import ideal_steenrod_closed, sq
from .zeros import common_zero, fuzz_zero_guarantee, random_form, restriction

PASS, FAIL, FINDING = "PASS", "FAIL", "FINDING"


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    status: str
    detail: str = ""


def _check(suite: str, name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(suite, name, PASS if ok else FAIL, "" if ok else detail)


# ---------------------------------------------------------------------------
# rings


def ring_suite(rng: np.random.Generator, trials: int) -> List[CheckResult]:
    out = []
    for kind, top in (("real", 6), ("complex", 4)):
        make = real_milnor if kind == "real" else complex_milnor
        for r in range(1, top + 1):
            for s in range(1, r + 1):
                alg = make(r, s)
                name = f"{kind}({r},{s})"
                b = alg.gens()[1]
                series = poincare_series(alg)
                confluent = all(
                    milnor_reduce_stepwise(r, s, i, j) == milnor_reduce_lazy(r, s, i, j)
                    == alg.factors[0].reduce((i, j))
                    for i in range(s + 2)
                    for j in range(2 * r + 1)
                )
                out += [
                    _check("ring", f"{name} basis size", alg.dimension == (s + 1) * r,
                           f"got {alg.dimension}"),
                    _check("ring", f"{name} b^r != 0, b^(r+1) = 0", bool(b ** r) and not b ** (r + 1)),
                    _check("ring", f"{name} Poincare symmetry", series == series[::-1], str(series)),
                    _check("ring", f"{name} normal form confluence", confluent),
                ]
    for r in range(1, 9):
        for s in range(1, r + 1):
            chi = euler_characteristic(real_milnor(r, s))
            expect = 1 if (s % 2 == 0 and r % 2 == 1) else 0
            out.append(_check("ring", f"real({r},{s}) Euler characteristic", chi == expect, f"chi={chi}"))
    return out


# ---------------------------------------------------------------------------
# Steenrod squares


def _random_element(alg, rng, degree: int) -> AlgebraElement:
    basis = alg.basis_in_degree(degree)
    keep = rng.integers(0, 2, size=len(basis))
    return alg.element(m for m, k in zip(basis, keep) if k)


def _steenrod_rings():
    return [real_milnor(2, 1), real_milnor(3, 2), real_milnor(4, 4), complex_milnor(3, 2),
            tensor(real_milnor(2, 1), real_milnor(3, 3))]


def steenrod_suite(rng: np.random.Generator, trials: int) -> List[CheckResult]:
    out = []
    for alg in _steenrod_rings():
        name = repr(alg)
        cartan_ok, bad = True, ""
        for _ in range(trials):
            d1 = int(rng.integers(0, alg.top_degree + 1))
            d2 = int(rng.integers(0, alg.top_degree + 1))
            x, y = _random_element(alg, rng, d1), _random_element(alg, rng, d2)
            for k in range(d1 + d2 + 1):
                lhs = sq(k, x * y)
                rhs = alg.zero
                for i in range(k + 1):
                    rhs = rhs + sq(i, x) * sq(k - i, y)
                if lhs != rhs:
                    cartan_ok, bad = False, f"x={x}, y={y}, k={k}"
        out.append(_check("steenrod", f"{name} Cartan formula", cartan_ok, bad))
        unstable_ok = square_ok = adem_ok = True
        for mono in alg.basis:
            x = alg.monomial(mono)
            d = x.degree
            unstable_ok &= all(not sq(k, x) for k in range(d + 1, d + 4))
            square_ok &= sq(d, x) == x * x and sq(0, x) == x
            adem_ok &= not sq(1, sq(1, x))
        out += [
            _check("steenrod", f"{name} instability", unstable_ok),
            _check("steenrod", f"{name} Sq^deg x = x^2", square_ok),
            _check("steenrod", f"{name} Sq^1 Sq^1 = 0", adem_ok),
        ]
    # single-generator ideals: closure by definition means Sq^k f is a multiple of f
    agree, bad = True, ""
    for nvars in (1, 2, 3):
        for deg in (1, 2, 3):
            for f in _nonzero_forms(deg, nvars):
                direct = all(_is_multiple(sq(k, f), f, k) for k in range(1, deg))
                if ideal_steenrod_closed([f]).closed != direct:
                    agree, bad = False, str(f)
    out.append(_check("steenrod", "principal ideal closure matches divisibility", agree, bad))
    return out


def _nonzero_forms(degree: int, nvars: int):
    monos = monomials_of_degree(nvars, degree)
    for mask in range(1, 1 << len(monos)):
        yield F2Poly(nvars, frozenset(m for i, m in enumerate(monos) if (mask >> i) & 1))


def _is_multiple(h: F2Poly, f: F2Poly, k: int) -> bool:
    if not h:
        return True
    return any(q * f == h for q in _nonzero_forms(k, f.nvars))


# ---------------------------------------------------------------------------
# zeros


def zeros_suite(rng: np.random.Generator, trials: int) -> List[CheckResult]:
    out = []
    agree, bad = True, ""
    for _ in range(trials):
        r = int(rng.integers(1, 7))
        f = random_form(rng, int(rng.integers(1, 4)), r)
        for idx in range(1, 1 << r):
            c = tuple((idx >> (r - 1 - i)) & 1 for i in range(r))
            if (f(c) == 0) != (not restriction(f, c)):
                agree, bad = False, f"f={f}, c={c}"
    out.append(_check("zeros", "value at c vanishes iff restriction vanishes", agree, bad))
    for m, n, r in ((2, 1, 3), (2, 2, 5), (3, 2, 7)):
        rep = fuzz_zero_guarantee(trials, m, n, r, seed=int(rng.integers(0, 2 ** 31)))
        out.append(_check("zeros", f"degree-count guarantee (m,n,r)=({m},{n},{r})", rep.ok,
                          f"{len(rep.failures)} systems without a witness"))
    x = [F2Poly.var(i, 2) for i in range(2)]
    anisotropic = x[0] * x[0] + x[0] * x[1] + x[1] * x[1]
    out.append(_check("zeros", "x1^2 + x1*x2 + x2^2 has no non-zero zero",
                      not common_zero([anisotropic], 2).has_nontrivial_zero))
    return out


# ---------------------------------------------------------------------------
# spectral sequences


def _small_fibers():
    for r in range(1, 6):
        for s in range(1, r + 1):
            if r + s <= 6:
                yield real_milnor(r, s)
                if r + s <= 4:
                    yield complex_milnor(r, s)


def _random_page_element(page, rng, k, l):
    basis = page.basis(k, l)
    keep = rng.integers(0, 2, size=len(basis))
    return page.element(t for t, c in zip(basis, keep) if c)


def spectral_suite(rng: np.random.Generator, trials: int) -> List[CheckResult]:
    out = []
    fibers = list(_small_fibers())
    dd_ok = leibniz_ok = True
    bad_dd = bad_leibniz = ""
    for i in range(trials):
        fib = fibers[i % len(fibers)]
        rank = 1 + int(rng.integers(0, 3))
        page = e2_page(fib, rank)
        dmap = derivation_extend(page, random_assignment(fib, rank, rng))
        if not dmap.squares_to_zero():
            dd_ok, bad_dd = False, f"{fib!r} rank {rank}"
        cmap = derivation_extend(page, random_consistent_assignment(fib, rank, rng))
        top = fib.top_degree
        for _ in range(3):
            x = _random_page_element(page, rng, int(rng.integers(0, 3)), int(rng.integers(0, top + 1)))
            y = _random_page_element(page, rng, int(rng.integers(0, 3)), int(rng.integers(0, top + 1)))
            if cmap(x * y) != cmap(x) * y + x * cmap(y):
                leibniz_ok, bad_leibniz = False, f"{fib!r} rank {rank}"
    out.append(_check("spectral", "d o d = 0 on random assignments", dd_ok, bad_dd))
    out.append(_check("spectral", "Leibniz rule on random consistent assignments", leibniz_ok, bad_leibniz))

    parity_ok, bad = True, ""
    for kind in ("real", "complex"):
        for r in range(1, 7):
            for s in range(1, r + 1):
                fib = real_milnor(r, s) if kind == "real" else complex_milnor(r, s)
                forced = {c.generator: c.forced_zero for c in parity_forced_vanishing(fib)}
                a, b = fib.generator_names
                direct = {a: _direct_contradiction(fib, 0), b: _direct_contradiction(fib, 1)}
                if forced != direct:
                    parity_ok, bad = False, f"{kind}({r},{s}): {forced} vs {direct}"
    out.append(_check("spectral", "parity forcing matches direct derivation contradiction", parity_ok, bad))

    collapse_ok = True
    for fib in fibers:
        dmap = derivation_extend(e2_page(fib, 2), zero_assignment(fib, 2))
        collapse_ok &= total_dimension_above(dmap, fib.top_degree) > 0
    out.append(_check("spectral", "zero differential leaves classes above dim X", collapse_ok))

    census = obstruction_census(real_milnor(2, 1), 3, max_monomials=6)
    out.append(_check("spectral", "real(2,1) rank 3: every assignment inadmissible", census.all_inadmissible,
                      f"{census.assignments - census.inadmissible} admissible"))
    return out


def _direct_contradiction(fib, idx: int) -> bool:
    """Differentiate ``g^N`` (``N`` the nilpotency) under ``d(g) = t^T`` and see if it survives."""
    t = fib.generator_degrees[idx] + 1
    g = fib.gens()[idx]
    n = 1
    while g ** n:
        n += 1
    page = e2_page(fib, 1)
    imgs = [F2Poly.zero(1)] * fib.ngens
    imgs[idx] = F2Poly(1, frozenset({(t,)}))
    dmap = derivation_extend(page, DifferentialAssignment(tuple(imgs), t))
    exps = [0] * fib.ngens
    exps[idx] = n
    return bool(dmap.apply_free((0,), exps))


# ---------------------------------------------------------------------------
# involutions and bounds


def involution_suite(rng: np.random.Generator, trials: int) -> List[CheckResult]:
    out = []
    for entry in geometry.construction_catalog():
        label = f"{entry.name} {entry.params}"
        detail = "" if entry.status == PASS else "; ".join(
            f"{k}: claimed {entry.claims[k]}, computed {entry.verdicts.get(k)}"
            for k in entry.claims if entry.claims[k] != entry.verdicts.get(k)
        )
        out.append(CheckResult("involutions", label, entry.status, detail))
    clash = [
        (r, s) for r in range(1, 14) for s in range(1, r + 1)
        if bounds.khare_nonbounding(r, s) and geometry.verified_free_involutions("real", r, s)
    ]
    out.append(_check("involutions", "no verified free involution on a non-bounding RH_{r,s}",
                      not clash, str(clash)))
    out.append(_check("involutions", "RH_{4,3} has no free monomial involution",
                      not geometry.monomial_free_involutions(4, 3, limit=1)))
    return out


def bounds_suite(rng: np.random.Generator, trials: int) -> List[CheckResult]:
    f = bounds.factor
    na = bounds.NOT_APPLICABLE
    r55 = bounds.real_rank_bound([f("real", 5, 5)])
    r21 = bounds.real_rank_bound([f("real", 2, 1)])
    c21 = bounds.complex_rank_bound([f("complex", 2, 1)])
    out = [
        _check("bounds", "real (5,5) -> (4, 2)", (r55.part1, r55.part2) == (4, 2)),
        _check("bounds", "real (2,1) -> (2, 1)", (r21.part1, r21.part2) == (2, 1)),
        _check("bounds", "complex (2,1) -> (3, 1)", (c21.part1, c21.part2) == (3, 1)),
        _check("bounds", "complex exact rank (2,1) = 1",
               bounds.complex_exact_rank_value([f("complex", 2, 1)]) == 1),
        _check("bounds", "real (3,3) part2 not applicable",
               bounds.real_rank_bound([f("real", 3, 3)]).part2 is na),
        _check("bounds", "Khare (4,3) non-bounding", bounds.khare_nonbounding(4, 3)),
    ]
    ok = all(
        bounds.adem_yalcin_check(combo).holds
        for n in range(0, 4)
        for combo in itertools.combinations_with_replacement(
            [f("real", r, s) for r in range(2, 6) for s in range(1, r)], n)
    )
    out.append(_check("bounds", "part1 <= 2 dim H_1 for s_i < r_i", ok))
    return out


SUITES: Dict[str, Callable[[np.random.Generator, int], List[CheckResult]]] = {
    "ring": ring_suite,
    "steenrod": steenrod_suite,
    "zeros": zeros_suite,
    "spectral": spectral_suite,
    "involutions": involution_suite,
    "bounds": bounds_suite,
}


@dataclass
class VerifyReport:
    seed: int
    trials: int
    suites: List[str]
    results: List[CheckResult]

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if r.status == FAIL]

    @property
    def findings(self) -> List[CheckResult]:
        return [r for r in self.results if r.status == FINDING]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        counts = {s: sum(r.status == s for r in self.results) for s in (PASS, FAIL, FINDING)}
        return {
            "seed": self.seed,
            "trials": self.trials,
            "suites": self.suites,
            "summary": counts,
            "results": [asdict(r) for r in self.results],
        }


def run_suites(names: Sequence[str], seed: int = 0, trials: int = 50) -> VerifyReport:
    """Run suites in order; each gets its own generator derived from ``seed``."""
    if "all" in names:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {unknown}; choose from {['all', *SUITES]}")
    results: List[CheckResult] = []
    for i, name in enumerate(names):
        rng = np.random.default_rng([seed, i])
        results.extend(SUITES[name](rng, trials))
    return VerifyReport(seed, trials, list(names), results)
