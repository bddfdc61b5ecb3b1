"""``fincatlab verify|generate|replay|list``.

Exit status is 0 when every case passes and otherwise the number of failing
cases, capped at 255.
"""
from __future__ import annotations

import argparse
import json
import sys

from ..errors import MalformedWitness, UnknownSuite, WorkbenchError
from ..serialize import to_json
from . import generators as gen
from .suites import PROBES, Bounds, list_suites, run, run_case


def _bounds(args) -> Bounds:
    probes = None
    if args.probes:
        probes = tuple(p.strip() for p in args.probes.split(",") if p.strip())
        unknown = [p for p in probes if p not in PROBES]
        if unknown:
            raise WorkbenchError(f"unknown probes {unknown}; known: {sorted(PROBES)}")
    return Bounds(max_objects=args.max_objects, dim_bound=args.dim_bound, probes=probes)


def report_json(reports, *, with_timing: bool = True) -> dict:
    cases = []
    for r in reports:
        d = r.to_json()
        if not with_timing:
            d.pop("seconds", None)
        cases.append(d)
    return {
        "suite": reports[0].suite if reports else None,
        "citation": reports[0].citation if reports else None,
        "cases": cases,
        "passed": sum(r.passed for r in reports),
        "failed": sum(not r.passed for r in reports),
    }


def _write(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)
    if path in (None, "-"):
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def cmd_verify(args) -> int:
    reports = run(args.suite, seed=args.seed, reps=args.reps, bounds=_bounds(args))
    for r in reports:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark} {r.suite} rep={r.case['rep']} instance={r.instance} {r.seconds:.3f}s")
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} passed")
    if args.json:
        _write(args.json, report_json(reports))
    return min(failed, 255)


GENERATORS = {
    "fincat": lambda r, k: gen.random_category(r, k),
    "functor": lambda r, k: gen.random_functor(r, gen.random_category(r, k), gen.random_category(r, k)),
    "diagram": lambda r, k: gen.random_diagram(r, gen.BASES["[1]"](), min(k, 2)),
    "two_cat": lambda r, k: gen.random_two_cat(r, min(k, 2)),
    "oplax": lambda r, k: gen.random_cocycle_oplax(r),
    "chain": lambda r, k: gen.random_chain(r, 1, 2, min(k, 2)),
}


def generate(kind: str, seed: int, max_objects: int = 3) -> dict:
    if kind not in GENERATORS:
        raise WorkbenchError(f"unknown kind {kind!r}; known: {sorted(GENERATORS)}")
    obj = GENERATORS[kind](gen.rng_for(seed, "generate", kind), max_objects)
    if kind == "chain":
        return {"kind": "chain", "values": [to_json(A) for A in obj.values]}
    return to_json(obj)


def cmd_generate(args) -> int:
    _write(args.json, generate(args.kind, args.seed, args.max_objects))
    return 0


def replay(witness: dict):
    """Re-run the single case recorded in a report (or a bare ``case`` record)."""
    case = witness.get("case", witness) if isinstance(witness, dict) else None
    try:
        b = case["bounds"]
        bounds = Bounds(b["max_objects"], b["dim_bound"], tuple(b["probes"]) if b.get("probes") else None)
        return run_case(case["suite"], int(case["seed"]), int(case["rep"]), bounds)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedWitness(f"witness has no replayable case: {exc}") from None


def cmd_replay(args) -> int:
    try:
        with open(args.witness, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedWitness(f"cannot read witness: {exc}") from None
    if isinstance(data, dict) and "cases" in data:
        failing = [c for c in data["cases"] if not c.get("passed")]
        data = (failing or data["cases"])[0]
    r = replay(data)
    print(f"{'PASS' if r.passed else 'FAIL'} {r.suite} rep={r.case['rep']} instance={r.instance}")
    if args.json:
        _write(args.json, r.to_json())
    return 0 if r.passed else 1


def cmd_list(args) -> int:
    suites = list_suites()
    if args.json:
        _write(args.json, {"suites": suites})
    else:
        for s in suites:
            print(f"{s['id']:28s} {s['citation']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fincatlab", description="Run exact checks on seeded finite instances.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a suite")
    v.add_argument("suite")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--reps", type=int, default=None)
    v.add_argument("--max-objects", type=int, default=3)
    v.add_argument("--dim-bound", type=int, default=5)
    v.add_argument("--probes", default=None, help=f"comma separated, from {','.join(PROBES)}")
    v.add_argument("--json", default=None, help="write the report here ('-' for stdout)")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("generate", help="print a seeded random instance as JSON")
    g.add_argument("kind", choices=sorted(GENERATORS))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-objects", type=int, default=3)
    g.add_argument("--json", default=None)
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("replay", help="re-run the case recorded in a report or witness file")
    r.add_argument("witness")
    r.add_argument("--json", default=None)
    r.set_defaults(func=cmd_replay)

    ls = sub.add_parser("list", help="list registered suites")
    ls.add_argument("--json", default=None)
    ls.set_defaults(func=cmd_list)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnknownSuite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WorkbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
