"""Command-line front end: ``affine-avoid <command> ...``.

Exit codes: 0 success, 1 invalid input, 2 fit failure, 3 classifier
disagreement, 4 acceptance check failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from typing import List, Optional

from . import checks
from .abacus import base_bias, bias_from_delta, enumerate_biases
from .affine_core import (
    AffinePermutationError,
    Pattern,
    PatternError,
    identity_pattern,
    normalize_pattern,
    strand_count,
)
from .enumeration import (
    bott_counts,
    classify_combinatorial,
    classify_series,
    is_feasible_assignment,
    oracle_counts,
    pattern_series,
    probe_union_convexity,
    tight_corner_exists,
)
from .pattern_geometry import build_system, projected_system, shifts, strand_assignments
from .polyhedra import integer_point_exists, vertices_and_rays
from .series import FitError, classify_behavior, expand

SCHEMA = 1
EXIT_INPUT, EXIT_FIT, EXIT_DISAGREE, EXIT_CHECK = 1, 2, 3, 4
THREADS_ENV = "AFFINE_AVOID_THREADS"


@dataclass(frozen=True)
class RunConfig:
    mode: str
    pattern: Optional[Pattern] = None
    n: int = 3
    max_length: int = 20
    margin: Optional[int] = None
    fmt: str = "json"
    parallelism: int = 1


def _threads(flag: Optional[int]) -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    return max(1, flag or 1)


@contextmanager
def _mapper(threads: int):
    if threads <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield lambda fn, jobs: pool.map(fn, jobs, chunksize=4)


def _emit(obj: dict, fmt: str, text: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps({"schema": SCHEMA, **obj}, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _pattern_arg(raw: str) -> Pattern:
    return normalize_pattern(raw)


def cmd_series(cfg: RunConfig) -> int:
    with _mapper(cfg.parallelism) as map_fn:
        s = pattern_series(cfg.pattern, cfg.n, margin=cfg.margin, min_length=cfg.max_length, map_fn=map_fn)
    report = classify_behavior(s.avoiders)
    obj = {
        "command": "series",
        "pattern": str(cfg.pattern),
        "n": cfg.n,
        "containers": s.containers.to_json(),
        "avoiders": s.avoiders.to_json(),
        "verified_to": s.verified_to,
        "behavior": report.to_json(),
    }
    text = "\n".join(
        [
            f"pattern {cfg.pattern}  n={cfg.n}",
            f"containers: {s.containers}",
            f"avoiders:   {s.avoiders}",
            f"verified to length {s.verified_to}",
            f"behavior: {report.kind}"
            + (f" period {report.period} from index {report.preperiod}" if report.period else ""),
        ]
    )
    if cfg.fmt == "csv":
        return _csv_rows(cfg.pattern, cfg.n, expand(s.avoiders, cfg.max_length), expand(s.containers, cfg.max_length))
    _emit(obj, cfg.fmt, text)
    return 0


def cmd_classify(cfg: RunConfig) -> int:
    with _mapper(cfg.parallelism) as map_fn:
        by_series = classify_series(cfg.pattern, cfg.n, margin=cfg.margin, min_length=cfg.max_length, map_fn=map_fn)
    by_rules = classify_combinatorial(cfg.pattern, cfg.n) if cfg.n >= 3 else by_series
    agree = by_series.kind == by_rules.kind
    obj = {
        "command": "classify",
        "pattern": str(cfg.pattern),
        "n": cfg.n,
        "series": by_series.to_json(),
        "combinatorial": by_rules.to_json(),
        "agreement": agree,
    }
    text = (
        f"pattern {cfg.pattern}  n={cfg.n}\n"
        f"series:        {by_series.kind}\n"
        f"combinatorial: {by_rules.kind}\n"
        f"agreement: {'yes' if agree else 'NO'}"
    )
    _emit(obj, cfg.fmt, text)
    if not agree:
        sys.stderr.write("classifiers disagree; this is a correctness alarm\n")
        return EXIT_DISAGREE
    return 0


def _csv_rows(p, n, avoiders, containers) -> int:
    bott = bott_counts(n, len(avoiders) - 1)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["length", "avoiders", "containers", "bott"])
    for ell, (a, c, b) in enumerate(zip(avoiders, containers, bott)):
        writer.writerow([ell, a, c, b])
    sys.stdout.write(out.getvalue())
    return 0


def cmd_enumerate(cfg: RunConfig) -> int:
    containers, every = oracle_counts(cfg.pattern, cfg.n, cfg.max_length)
    avoiders = [e - c for e, c in zip(every, containers)]
    if cfg.fmt == "csv":
        return _csv_rows(cfg.pattern, cfg.n, avoiders, containers)
    obj = {
        "command": "enumerate",
        "pattern": str(cfg.pattern),
        "n": cfg.n,
        "avoiders": avoiders,
        "containers": containers,
        "bott": every,
    }
    text = "\n".join(f"{ell} {a} {c} {b}" for ell, (a, c, b) in enumerate(zip(avoiders, containers, every)))
    _emit(obj, cfg.fmt, "length avoiders containers bott\n" + text)
    return 0


def _inspect_one(p: Pattern, pi, bias, v, n: int) -> dict:
    system = build_system(p, pi, bias, v, n)
    proj = projected_system(p, pi, bias, v, n)
    feasible = integer_point_exists(proj)
    gens = vertices_and_rays(proj) if feasible else []
    entry = {
        "bias": list(bias.delta),
        "flattening": str(v),
        "system": system.lines(),
        "projection": proj.to_text([f"t{i}" for i in range(1, n)]).splitlines(),
        "feasible": feasible,
        "generators": [g.to_json() for g in gens],
    }
    return entry


def cmd_inspect(cfg: RunConfig, pi_raw: Optional[str], bias_raw: Optional[str], flat_raw: Optional[str], all_cells: bool) -> int:
    p, n = cfg.pattern, cfg.n
    assignments = strand_assignments(p, n)
    if pi_raw:
        wanted = tuple(int(x) for x in pi_raw.replace(",", " ").split())
        assignments = [a for a in assignments if a.pi == wanted]
        if not assignments:
            raise ValueError(f"{list(wanted)} is not a strand assignment of {p} in n={n}")
    if all_cells:
        cells = [(b, v) for b in enumerate_biases(n) for v in _all_flattenings(n)]
    else:
        bias = bias_from_delta([int(x) for x in bias_raw.replace(",", " ").split()], n) if bias_raw else base_bias(n)
        v = normalize_pattern(flat_raw) if flat_raw else identity_pattern(n)
        if v.k != n:
            raise ValueError(f"flattening must have size {n}")
        cells = [(bias, v)]
    records, lines = [], [f"pattern {p}  n={n}  strands {strand_count(p)}  assignments {len(assignments)}"]
    for pi in assignments:
        sh = shifts(p, pi)
        rec = {
            "pi": list(pi.pi),
            "shifts": [{"kind": s.kind, "earlier": s.earlier, "later": s.later} for s in sh],
            "cells": [_inspect_one(p, pi, b, v, n) for b, v in cells],
        }
        if n == 3 and strand_count(p) == 3:
            corner = tight_corner_exists(p, pi)
            rec["feasible_any_cell"] = is_feasible_assignment(p, pi, 3)
            rec["tight_corner"] = corner.to_json() if corner else None
        records.append(rec)
        lines.append(f"assignment {pi}")
        lines.append("  shifts: " + (" ".join(str(s) for s in sh) or "none"))
        if "feasible_any_cell" in rec:
            lines.append(f"  feasible in some cell: {'yes' if rec['feasible_any_cell'] else 'no (infeasible)'}")
            lines.append(f"  tight corner: {rec['tight_corner'] or 'none'}")
        for cell in rec["cells"]:
            lines.append(f"  cell bias={''.join(map(str, cell['bias']))} flattening={cell['flattening']}")
            lines.append("    system:")
            lines.extend("      " + s for s in cell["system"])
            lines.append("    projection:")
            lines.extend("      " + s for s in cell["projection"])
            lines.append(f"    feasible: {'yes' if cell['feasible'] else 'no'}")
            for g in cell["generators"]:
                lines.append(f"    {g['kind']} {tuple(g['coords'])}")
    _emit({"command": "inspect", "pattern": str(p), "n": n, "assignments": records}, cfg.fmt, "\n".join(lines))
    return 0


def _all_flattenings(n: int):
    from .affine_core import all_patterns

    return list(all_patterns(n))


def cmd_check(only: Optional[List[str]], depth: Optional[int], fmt: str) -> int:
    results = checks.run_checks(only, depth)
    if fmt == "json":
        _emit(
            {
                "command": "check",
                "results": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
                "passed": all(r.passed for r in results),
            },
            fmt,
            "",
        )
    else:
        for r in results:
            sys.stdout.write(r.line() + "\n")
    failed = [r.name for r in results if not r.passed]
    if failed:
        sys.stderr.write(f"failed criteria: {', '.join(failed)}\n")
        return EXIT_CHECK
    return 0


def cmd_probe(cfg: RunConfig, box: int) -> int:
    rep = probe_union_convexity(cfg.pattern, cfg.n, box)
    text = (
        f"pattern {cfg.pattern}  n={cfg.n}  box 0..{box}  method {rep.method}\n"
        f"cells scanned: {rep.cells}\n"
        + ("no convexity violation found" if not rep.violations else
           "\n".join(f"violation in cell {c} at {pt}" for c, pt in rep.violations))
    )
    _emit({"command": "probe", "experimental": True, **rep.to_json()}, cfg.fmt, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affine-avoid", description="Pattern avoidance in affine symmetric groups by Coxeter length.")
    sub = parser.add_subparsers(dest="mode", required=True)

    def common(sp, default_fmt="json", formats=("json", "text"), length=20):
        sp.add_argument("-p", "--pattern", required=True, help="pattern, e.g. 2431 or 7,1,0,4")
        sp.add_argument("-n", type=int, default=3, help="size of the affine group (default 3)")
        sp.add_argument("-L", "--max-length", type=int, default=length, help="length to expand or verify to")
        sp.add_argument("--format", choices=formats, default=default_fmt)
        sp.add_argument("-j", "--threads", type=int, default=None, help=f"worker processes (env {THREADS_ENV} wins)")

    sp = sub.add_parser("series", help="certified container/avoider series")
    common(sp, formats=("json", "text", "csv"), length=0)
    sp.add_argument("--margin", type=int, default=None, help="held-out verification coefficients")

    sp = sub.add_parser("classify", help="run both classifiers and compare")
    common(sp, length=40)
    sp.add_argument("--margin", type=int, default=None)

    sp = sub.add_parser("enumerate", help="brute-force counts per length (CSV)")
    common(sp, default_fmt="csv", formats=("csv", "json", "text"), length=10)

    sp = sub.add_parser("inspect", help="strand assignments, systems, projections, rays")
    common(sp, default_fmt="text")
    sp.add_argument("--pi", help="restrict to one strand assignment, e.g. 2,3,2,2,1")
    sp.add_argument("--bias", help="bias delta vector, e.g. 2,2 (default all ones)")
    sp.add_argument("--flattening", help="flattening, e.g. 213 (default identity)")
    sp.add_argument("--all-cells", action="store_true", help="every (bias, flattening) cell")

    sp = sub.add_parser("check", help="run the acceptance suite")
    sp.add_argument("--only", action="append", choices=list(checks.CRITERIA), help="criterion to run (repeatable)")
    sp.add_argument("--L", dest="depth", type=int, default=None, help="deeper verification length")
    sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("probe", help="experimental convexity scan of the union regions")
    common(sp, default_fmt="text")
    sp.add_argument("--box", type=int, default=6)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.mode == "check":
            return cmd_check(args.only, args.depth, args.format)
        pattern = _pattern_arg(args.pattern)
        if args.n < 2:
            raise ValueError("n must be at least 2")
        if args.max_length < 0:
            raise ValueError("max length must be nonnegative")
        cfg = RunConfig(
            mode=args.mode,
            pattern=pattern,
            n=args.n,
            max_length=args.max_length,
            margin=getattr(args, "margin", None),
            fmt=args.format,
            parallelism=_threads(args.threads),
        )
        if args.mode == "series":
            return cmd_series(cfg)
        if args.mode == "classify":
            return cmd_classify(cfg)
        if args.mode == "enumerate":
            return cmd_enumerate(cfg)
        if args.mode == "inspect":
            return cmd_inspect(cfg, args.pi, args.bias, args.flattening, args.all_cells)
        return cmd_probe(cfg, args.box)
    except FitError as exc:
        sys.stderr.write(f"fit failed: {exc}\n")
        return EXIT_FIT
    except (PatternError, AffinePermutationError, ValueError) as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
