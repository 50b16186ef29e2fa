"""Command-line front end.

Exit codes: 0 success / property holds, 1 property fails or the input is
not a valid loop or gyrogroup, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .gyro import Gyrogroup, NotAGyrogroupError, validate_gyrogroup
from .morphisms import find_isomorphism, isomorphism_obstruction, normal_quotient
from .moebius import DEFAULT_RADIUS, DEFAULT_SEED, corrupted_add, m_check_axioms
from .properties import (
    TheoremCheckFailed,
    analyze,
    check_lagrange,
    check_structure,
    has_scp,
    has_wcp,
    is_gyrocommutative,
)
from .search import DEFAULT_BUDGET, DEFAULT_ORDER_BOUND, manifest, run_search, write_corpus
from .subgyro import DEFAULT_ENUMERATION_BOUND, EnumerationBoundError, subset
from .table import TableFormatError, read_table, serialize_table, validate_loop


class UsageError(Exception):
    pass


class Failure(Exception):
    """A mathematical negative: reported on stdout, exit status 1."""

    def __init__(self, payload: dict, text: str):
        self.payload = payload
        self.text = text


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _load(path: str):
    try:
        return read_table(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    except TableFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _gyrogroup(path: str) -> Gyrogroup:
    t = _load(path)
    loop = validate_loop(t)
    if not loop.valid:
        raise Failure(
            {"file": path, "loop": False, "violations": [[v.kind, [list(c) for c in v.cells]] for v in loop.violations]},
            f"{path}: not a loop: " + "; ".join(f"{v.kind} at {list(v.cells)}" for v in loop.violations),
        )
    try:
        return validate_gyrogroup(t)
    except NotAGyrogroupError as exc:
        raise Failure(
            {"file": path, "loop": True, "gyrogroup": False,
             "violations": [[v.axiom, list(v.witnesses)] for v in exc.violations]},
            f"{path}: gyrogroup: no; " + "; ".join(f"{v.axiom} fails at {v.witnesses}" for v in exc.violations),
        ) from None


def cmd_verify(args) -> int:
    G = _gyrogroup(args.file)
    group = G.is_group()
    _emit(
        args,
        {"file": args.file, "order": G.order, "loop": True, "gyrogroup": True, "group": group},
        f"gyrogroup: yes, group: {'yes' if group else 'no'}",
    )
    return 0


def cmd_search(args) -> int:
    if not 1 <= args.order <= args.bound:
        raise UsageError(f"--order must be in 1..{args.bound} (raise --bound to go further)")
    if args.budget < 1 or args.jobs < 0:
        raise UsageError("need --budget >= 1 and --jobs >= 0")
    if args.out and os.path.exists(args.out) and not os.path.isdir(args.out):
        raise UsageError(f"--out {args.out} exists and is not a directory")
    jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
    res = run_search(args.order, bound=args.bound, budget=args.budget, jobs=jobs)
    m = manifest(res)
    if args.out:
        try:
            write_corpus(res, args.out)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc.strerror or exc}") from None
    text = (
        f"order {res.order}: {m['class_count']} classes "
        f"({m['group_count']} groups, {m['proper_count']} proper), "
        f"{'complete' if res.complete else 'INCOMPLETE: node budget exhausted'}"
    )
    _emit(args, m, text)
    return 0 if res.complete else 1


def cmd_analyze(args) -> int:
    G = _gyrogroup(args.file)
    try:
        rep = analyze(G, bound=args.bound, strict=False)
    except EnumerationBoundError as exc:
        raise UsageError(str(exc)) from None
    failed = [n for n in rep.classification_notes if n.startswith("FAILED:")]
    d = rep.to_dict()
    lines = [
        f"order: {rep.order}",
        f"element orders: {rep.element_orders}",
        f"subgyrogroups: {len(rep.subgyrogroups)} (sizes {sorted({s['size'] for s in rep.subgyrogroups})})",
        "flags: " + ", ".join(f"{k}={v}" for k, v in d["flags"].items()),
        f"normal subgroup with gyrocommutative quotient: {rep.normal_subgroup_witness}",
        "verified: " + ", ".join(rep.classification_notes),
    ]
    _emit(args, d, "\n".join(lines))
    return 1 if failed else 0


def cmd_check(args) -> int:
    G = _gyrogroup(args.file)
    prop = args.property
    try:
        if prop == "lagrange":
            rep = check_lagrange(G, bound=args.bound)
            ok = rep.ok
            payload = {"property": prop, "holds": ok, **rep.to_dict()}
            text = f"lagrange: {'holds' if ok else 'FAILS'}; sizes " + ", ".join(
                f"{e['size']}|{rep.order}" if e["divides"] else f"{e['size']}!|{rep.order}" for e in rep.evidence
            )
        elif prop == "structure":
            rep = check_structure(G)
            ok = not rep.failures
            payload = {"property": prop, "holds": ok, "laws": rep.holds,
                       "failures": {k: list(v) for k, v in rep.failures.items()}}
            text = "structure laws holding: " + ", ".join(rep.holds)
            if rep.internal_error:
                text += f"\ninternal error: validated gyrogroup fails {sorted(rep.failures)}"
        else:
            fn = {"wcp": has_wcp, "gyrocommutative": is_gyrocommutative}.get(prop)
            ok = fn(G) if fn else has_scp(G, bound=args.bound)
            payload = {"property": prop, "holds": ok}
            text = f"{prop}: {'holds' if ok else 'fails'}"
    except EnumerationBoundError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, payload, text)
    return 0 if ok else 1


def _parse_members(spec: str) -> list[int]:
    try:
        return [int(x) for x in spec.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"--normal expects comma-separated indices, got {spec!r}") from None


def cmd_quotient(args) -> int:
    G = _gyrogroup(args.file)
    members = _parse_members(args.normal)
    if not members:
        raise UsageError("--normal must list at least one element")
    try:
        N = subset(G, members)
    except IndexError as exc:
        raise UsageError(str(exc)) from None
    if not N.is_subgyrogroup:
        raise Failure({"normal": members, "is_subgyrogroup": False}, f"{members} is not a subgyrogroup")
    q = normal_quotient(G, N)
    if q is None:
        raise Failure({"normal": list(N.members), "is_normal": False}, f"{list(N.members)} is not normal")
    payload = {
        "normal": list(N.members),
        "is_normal": True,
        "cosets": [list(c) for c in q.cosets],
        "quotient": q.quotient.table.rows(),
        "projection": q.projection.to_json(),
    }
    text = f"# projection {q.projection.to_json()}\n" + serialize_table(q.quotient.table).rstrip("\n")
    _emit(args, payload, text)
    return 0


def cmd_iso(args) -> int:
    G = _gyrogroup(args.file_a)
    H = _gyrogroup(args.file_b)
    reason = isomorphism_obstruction(G, H)
    m = None if reason else find_isomorphism(G, H)
    if m is None:
        reason = reason or "no isomorphism exists"
        raise Failure({"isomorphic": False, "reason": reason}, f"not isomorphic: {reason}")
    _emit(args, {"isomorphic": True, "map": m.to_json()}, f"isomorphic: {m.to_json()}")
    return 0


def cmd_moebius(args) -> int:
    if args.samples < 1 or args.tol <= 0 or not 0 < args.radius < 1:
        raise UsageError("need --samples >= 1, --tol > 0 and 0 < --radius < 1")
    rep = m_check_axioms(
        args.samples, args.seed, args.tol, args.radius, add=corrupted_add if args.corrupt else None
    )
    text = "\n".join(f"{k}: {v:.3e}" for k, v in rep.max_residual.items())
    text += f"\n{'pass' if rep.pass_ else 'FAIL: ' + ', '.join(rep.failing())}"
    _emit(args, rep.to_dict(), text)
    return 0 if rep.pass_ else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit one JSON document")

    p = argparse.ArgumentParser(prog="gyrolab", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", default=False, help="emit one JSON document")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check loop and gyrogroup axioms")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common], help="enumerate gyrogroups of one order")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--jobs", type=int, default=0, help="worker processes (default: all CPUs)")
    s.add_argument("--bound", type=int, default=DEFAULT_ORDER_BOUND)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("analyze", parents=[common], help="full property report")
    s.add_argument("file")
    s.add_argument("--bound", type=int, default=DEFAULT_ENUMERATION_BOUND)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("check", parents=[common], help="check one property")
    s.add_argument("property", choices=["lagrange", "wcp", "scp", "gyrocommutative", "structure"])
    s.add_argument("file")
    s.add_argument("--bound", type=int, default=DEFAULT_ENUMERATION_BOUND)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("quotient", parents=[common], help="quotient by a normal subgyrogroup")
    s.add_argument("file")
    s.add_argument("--normal", required=True, help='members, e.g. "0,2"')
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("iso", parents=[common], help="isomorphism test")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("moebius", parents=[common], help="sampled checks on the Moebius disk")
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--radius", type=float, default=DEFAULT_RADIUS)
    s.add_argument("--corrupt", action="store_true", help="negative control: drop the denominator")
    s.set_defaults(func=cmd_moebius)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gyrolab: error: {exc}", file=sys.stderr)
        return 2
    except Failure as f:
        _emit(args, f.payload, f.text)
        return 1
    except TheoremCheckFailed as exc:
        print(str(exc), file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
