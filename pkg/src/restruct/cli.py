"""Command-line entry point.

Exit codes: 0 solved (or verified), 1 infeasible result or failed
verification, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import dispatch
from .core import METHODS, PROXIMITY_MODES, RestructError, delta_of
from .fixtures import FIXTURES, fixture, fixture_text
from .schema import (
    InstanceFile,
    canonical_json,
    dump_report,
    load_instance,
    load_report,
    to_json,
)
from .verify import verify_report

EXIT_OK, EXIT_INFEASIBLE, EXIT_INVALID = 0, 1, 2


def _load(args) -> InstanceFile:
    if getattr(args, "fixture", None):
        return fixture(args.fixture)
    if not getattr(args, "instance", None):
        raise RestructError("give --instance PATH or --fixture NAME")
    return load_instance(args.instance)


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    f = _load(args)
    s, value = dispatch.solve_base(f, args.stage)
    doc = {"problem": f.problem, "stage": args.stage, "solution": to_json(s), "objective": value}
    _emit(canonical_json(doc), args.output)
    return EXIT_OK


def cmd_restructure(args) -> int:
    f = _load(args)
    rep = dispatch.restructure(f, args.budget, args.method, args.proximity, args.all_optima)
    _emit(dump_report(rep), args.output)
    return EXIT_OK if rep.feasible else EXIT_INFEASIBLE


def _elements(f, s):
    """Solution as a flat set so that the subset diff applies uniformly."""
    if f.problem == "assignment":
        return {(i, p) for i, p in enumerate(s, start=1)}
    if f.problem == "steiner_tree":
        return set(s.edges) | set(s.steiner_used)
    if f.problem == "access_points":
        return set(s.items())
    return set(s)


def cmd_diff(args) -> int:
    f = _load(args)
    if args.report:
        target = load_report(args.report).s_star
    elif f.s2 is not None:
        target = f.s2
    else:
        raise RestructError("instance has no s2; pass --report to diff against a result")
    d = delta_of(_elements(f, f.s1), _elements(f, target))
    _emit(canonical_json({"deleted": to_json(d.deleted), "added": to_json(d.added)}), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    f = _load(args)
    rep = load_report(args.report)
    problems = verify_report(f, rep)
    if args.budget is not None and rep.change_cost > args.budget:
        problems.append(f"change cost {rep.change_cost} exceeds the budget {args.budget}")
    text = "".join(f"violation: {p}\n" for p in problems) or "ok\n"
    _emit(text, args.output)
    return EXIT_OK if not problems else EXIT_INFEASIBLE


def cmd_fixtures(args) -> int:
    if args.name is None:
        _emit("".join(f"{n}\n" for n in FIXTURES), args.output)
    else:
        _emit(fixture_text(args.name), args.output)
    return EXIT_OK


def _bench_one(job):
    name, path, budget, method = job
    f = fixture(name) if path is None else load_instance(path)
    t0 = time.perf_counter()
    try:
        rep = dispatch.restructure(f, budget, method)
    except RestructError as exc:
        # e.g. a method the family does not offer; keep the rest of the run
        return {"instance": name, "budget": budget, "method": method, "error": str(exc)}
    return {
        "instance": name,
        "budget": rep.budget,
        "method": rep.method,
        "proximity": rep.proximity,
        "change_cost": rep.change_cost,
        "feasible": rep.feasible,
        "seconds": round(time.perf_counter() - t0, 6),
    }


def cmd_bench(args) -> int:
    sources = [(p, p) for p in args.instances] or [(n, None) for n in FIXTURES]
    methods = args.methods or ["exact"]
    budgets = args.budgets or [None]
    jobs = [(name, path, b, m) for name, path in sources for b in budgets for m in methods]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_bench_one, jobs))
    else:
        rows = [_bench_one(j) for j in jobs]
    # results are gathered first and written from this process only
    _emit("".join(json.dumps(r, sort_keys=True) + "\n" for r in rows), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="restruct", description="Budgeted restructuring of combinatorial solutions.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, instance=True):
        if instance:
            sp.add_argument("--instance", metavar="PATH", help="instance JSON file")
            sp.add_argument("--fixture", choices=FIXTURES, help="use a bundled fixture instead of a file")
        sp.add_argument("--output", metavar="PATH", help="write here instead of stdout")

    sp = sub.add_parser("solve", help="solve the base problem of one stage")
    common(sp)
    sp.add_argument("--stage", type=int, choices=(1, 2), default=2)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("restructure", help="restructure s1 toward s2 within a budget")
    common(sp)
    sp.add_argument("--budget", type=int, help="override the instance budget")
    sp.add_argument("--method", choices=METHODS, default="exact")
    sp.add_argument("--proximity", choices=PROXIMITY_MODES)
    sp.add_argument("--all-optima", action="store_true", help="list alternative optimal solutions")
    sp.set_defaults(func=cmd_restructure)

    sp = sub.add_parser("diff", help="deleted and added elements from s1 to s2 or to a report")
    common(sp)
    sp.add_argument("--report", metavar="PATH")
    sp.set_defaults(func=cmd_diff)

    sp = sub.add_parser("verify", help="re-check a report against its instance")
    common(sp)
    sp.add_argument("--report", metavar="PATH", required=True)
    sp.add_argument("--budget", type=int, help="also check against this budget")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("fixtures", help="list bundled fixtures or print one")
    common(sp, instance=False)
    sp.add_argument("name", nargs="?", choices=FIXTURES)
    sp.set_defaults(func=cmd_fixtures)

    sp = sub.add_parser("bench", help="time restructuring over fixtures or files")
    common(sp, instance=False)
    sp.add_argument("instances", nargs="*", metavar="PATH")
    sp.add_argument("--budget", dest="budgets", type=int, action="append")
    sp.add_argument("--method", dest="methods", choices=METHODS, action="append")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (RestructError, OSError) as exc:
        print(f"restruct: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
