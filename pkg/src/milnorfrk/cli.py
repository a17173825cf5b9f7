"""Command-line front end.

Exit codes: 0 success, 1 a verified property failed, 2 bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Sequence

from . import bounds, geometry
from .algebra import (
    AlgebraError,
    MilnorFactor,
    PresentedAlgebra,
    euler_characteristic,
    poincare_series,
    ring_to_json,
)
from .polynomial import PolynomialParseError, parse_poly
from .spectral import (
    DifferentialAssignment,
    SpectralError,
    derivation_extend,
    e2_page,
    free_action_obstruction,
    page_rows,
    parity_forced_vanishing,
)
from .verify import run_suites
from .zeros import MAX_RANK, RankGuardExceeded, common_zero


class UsageError(Exception):
    pass


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


def _csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for row in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict, bool)) or v is None else v
                    for k, v in row.items()})
    return buf.getvalue()


def _parse_window(text: str | None):
    if text is None:
        return None
    try:
        k, l = (int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"--window expects K,L, got {text!r}") from None
    return k, l


# ---------------------------------------------------------------------------
# subcommands


def _ring_algebra(args) -> PresentedAlgebra:
    factors = [MilnorFactor(args.kind, args.r, args.s)]
    for extra in args.tensor or ():
        factors.extend(bounds.parse_factor_list(extra))
    return PresentedAlgebra(tuple(factors))


def cmd_ring(args) -> int:
    alg = _ring_algebra(args)
    doc = ring_to_json(alg)
    doc["generators"] = [{"name": n, "degree": d} for n, d in alg.generators]
    doc["relations"] = [label + " = 0" for label, _ in alg.relations()]
    doc["euler_characteristic"] = euler_characteristic(alg)
    if args.format == "json":
        _emit(_dump_json(doc))
    elif args.format == "csv":
        _emit(_csv([{"degree": d, "dim": c} for d, c in enumerate(poincare_series(alg))], ("degree", "dim")))
    else:
        gens = ", ".join(f"{n} (deg {d})" for n, d in alg.generators)
        _emit(
            f"ring: {alg!r}\n"
            f"generators: {gens}\n"
            f"relations: {'; '.join(doc['relations'])}\n"
            f"basis size: {doc['basis_size']}\n"
            f"poincare series: {doc['poincare']}\n"
            f"euler characteristic: {doc['euler_characteristic']}"
        )
    return 0


def cmd_bounds(args) -> int:
    lines = list(args.factors)
    if not lines or lines == ["-"]:
        lines = [ln for ln in sys.stdin.read().splitlines() if ln.strip() and not ln.startswith("#")]
    rows = [bounds.bound_row(bounds.parse_factor_list(ln)) for ln in lines]
    if args.format == "json":
        _emit(bounds.table_json(rows))
    elif args.format == "csv":
        _emit(bounds.table_csv(rows))
    else:
        for row in rows:
            _emit(" ".join(f"{k}={_text(row[k])}" for k in bounds.COLUMNS))
    return 0


def _text(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    return "-" if v is None else str(v)


def cmd_verify(args) -> int:
    report = run_suites(args.suites, seed=args.seed, trials=args.trials)
    doc = report.to_json()
    if args.format == "json":
        _emit(_dump_json(doc))
    elif args.format == "csv":
        _emit(_csv(doc["results"], ("suite", "name", "status", "detail")))
    else:
        for r in report.results:
            line = f"{r.status:<8} {r.suite:<12} {r.name}"
            _emit(line + (f"  [{r.detail}]" if r.detail else ""))
        s = doc["summary"]
        _emit(f"seed={report.seed} trials={report.trials} pass={s['PASS']} fail={s['FAIL']} finding={s['FINDING']}")
    return 0 if report.ok else 1


def cmd_spectral(args) -> int:
    fiber = PresentedAlgebra((MilnorFactor(args.kind, args.r, args.s),))
    t = fiber.generator_degrees[0] + 1
    texts = args.images.split(";") if args.images else ["0"] * fiber.ngens
    if len(texts) != fiber.ngens:
        raise UsageError(f"--images needs {fiber.ngens} polynomials separated by ';'")
    images = tuple(parse_poly(p, args.rank) for p in texts)
    assignment = DifferentialAssignment(images, t)
    page = e2_page(fiber, args.rank, _parse_window(args.window))
    dmap = derivation_extend(page, assignment)
    verdict = free_action_obstruction(fiber, args.rank, assignment)
    rows = page_rows(dmap)
    doc = {
        "fiber": ring_to_json(fiber),
        "rank": args.rank,
        "page": t,
        "window": list(page.window),
        "images": [str(p) for p in images],
        "relation_defects": [[label, repr(e)] for label, e in dmap.relation_defects()],
        "parity_forced_zero": [c.generator for c in parity_forced_vanishing(fiber) if c.forced_zero],
        "obstruction": {
            "verdict": verdict.verdict.value,
            "reason": verdict.reason,
            "witness": list(verdict.zero_report.witness) if verdict.zero_report and verdict.zero_report.witness else None,
            "surviving_dimension": verdict.surviving_dimension,
        },
        "rows": rows,
    }
    if args.format == "json":
        _emit(_dump_json(doc))
    elif args.format == "csv":
        _emit(_csv(rows, ("bidegree", "dim", "differential_rank", "next_dim", "indeterminate")))
    else:
        _emit(f"E{t} page of {fiber!r} over rank {args.rank}, window {tuple(page.window)}")
        for row in rows:
            if row["dim"]:
                flag = " (indeterminate)" if row["indeterminate"] else ""
                _emit(f"  E^{tuple(row['bidegree'])}: dim {row['dim']}, rank d {row['differential_rank']}, "
                      f"next {row['next_dim']}{flag}")
        if doc["relation_defects"]:
            _emit("  derivation does not kill: " + "; ".join(label for label, _ in doc["relation_defects"]))
        _emit(f"obstruction: {verdict.verdict.value} ({verdict.reason})")
    return 0


def cmd_zeros(args) -> int:
    system = [parse_poly(p, args.rank) for p in args.polys]
    rep = common_zero(system, args.rank, max_rank=args.max_rank)
    doc = {
        "rank": args.rank,
        "system": [str(p) for p in system],
        "has_nontrivial_zero": rep.has_nontrivial_zero,
        "witness": list(rep.witness) if rep.witness else None,
        "points_checked": rep.points_checked,
    }
    if args.format == "json":
        _emit(_dump_json(doc))
    elif args.format == "csv":
        _emit(_csv([doc], ("rank", "has_nontrivial_zero", "witness", "points_checked")))
    else:
        if rep.has_nontrivial_zero:
            _emit(f"common zero {rep.witness} (point #{rep.points_checked} in lex order)")
        else:
            _emit(f"no non-zero common zero among {rep.points_checked} points")
    return 0


def cmd_catalog(args) -> int:
    entries = [e.to_json() for e in geometry.construction_catalog()]
    if args.format == "json":
        _emit(_dump_json(entries))
    elif args.format == "csv":
        rows = [{"name": e["name"], "params": e.get("n", e.get("r_s")), "status": e["status"],
                 **{k: e["verdicts"][k] for k in e["verdicts"]}} for e in entries]
        cols = ["name", "params", "status", "well_defined", "preserves_form", "involution", "free",
                "distinct", "commute", "rank_two"]
        _emit(_csv(rows, cols))
    else:
        for e in entries:
            params = e.get("n", e.get("r_s"))
            _emit(f"{e['status']:<8} {e['name']:<6} {params}")
    return 0


# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    p = argparse.ArgumentParser(
        prog="milnorfrk",
        description="Cohomology of Milnor manifolds and free 2-rank bounds, computed exactly.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    ring = sub.add_parser("ring", parents=[common], help="cohomology ring of a Milnor manifold")
    ring.add_argument("kind", choices=("real", "complex"))
    ring.add_argument("r", type=int)
    ring.add_argument("s", type=int)
    ring.add_argument("--tensor", action="append", metavar="FACTORS",
                      help="extra factors such as real:2,1 (repeatable)")
    ring.set_defaults(func=cmd_ring)

    bnd = sub.add_parser("bounds", parents=[common], help="free 2-rank bound table")
    bnd.add_argument("factors", nargs="*",
                     help="one row per argument, e.g. real:5,5 or real:5,5,real:2,1; '-' reads stdin")
    bnd.set_defaults(func=cmd_bounds)

    ver = sub.add_parser("verify", parents=[common], help="run property suites")
    ver.add_argument("suites", nargs="*", default=["all"],
                     choices=("all", "ring", "steenrod", "zeros", "spectral", "involutions", "bounds"))
    ver.add_argument("--trials", type=_positive, default=50)
    ver.set_defaults(func=cmd_verify)

    spec = sub.add_parser("spectral", parents=[common], help="E2 page, next page and the obstruction")
    spec.add_argument("kind", choices=("real", "complex"))
    spec.add_argument("r", type=int)
    spec.add_argument("s", type=int)
    spec.add_argument("--rank", type=_positive, default=2, help="rank of the acting group")
    spec.add_argument("--images", help="generator images separated by ';', e.g. 'x1^2;0'")
    spec.add_argument("--window", help="K,L bounds of the page window")
    spec.set_defaults(func=cmd_spectral)

    zer = sub.add_parser("zeros", parents=[common], help="common non-zero zero of F2 forms")
    zer.add_argument("polys", nargs="+", help="polynomials like 'x1^2 + x1*x2'")
    zer.add_argument("--rank", type=_positive, required=True, help="number of variables")
    zer.add_argument("--max-rank", type=_positive, default=MAX_RANK)
    zer.set_defaults(func=cmd_zeros)

    cat = sub.add_parser("catalog", parents=[common], help="exact check of every involution construction")
    cat.set_defaults(func=cmd_catalog)
    return p


def main(argv: List[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, AlgebraError, bounds.BoundsError, PolynomialParseError,
            SpectralError, RankGuardExceeded, ValueError) as exc:
        sys.stderr.write(f"milnorfrk {args.command}: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
