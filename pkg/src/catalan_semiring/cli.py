"""Command-line interface.

Exit codes: 0 when every executed check holds, 1 when a check fails (the
failing report goes to stderr as JSON), 2 on usage or resource errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from typing import Sequence

from . import boolean_matrix as bm
from . import chain_maps as cm
from .algebra_core import (
    CheckReport,
    check_identity,
    eval_term,
    paper_identity,
    paper_witnesses,
    recheck_identity_witness,
    semiring_from_matrices,
    semiring_from_transformations,
)
from .errors import CatalanError, ResourceLimitError
from .representations import (
    complement_steps,
    element_record,
    enumerate_staircase_partitions,
    matrix_to_partition,
    partition_to_matrix,
    rep_B,
    rep_M,
    rep_M_conjugated,
    rep_S,
)
from .terms import parse_identity
from .verification import THEOREMS, catalan, report_all

log = logging.getLogger("catalan_semiring")

SCHEMA = 1
HASSE_CAP = 4
YOUNG_LISTING_CAP = 6


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2))


def _run_report(command: str, parameters: dict, reports: list[CheckReport], started: float, counts: dict | None = None) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "parameters": parameters,
        "verdicts": [r.to_json() for r in reports],
        "counts": counts or {"checks": len(reports), "holds": sum(r.holds for r in reports)},
        "all_hold": all(r.holds for r in reports),
        "wall_time_s": round(time.perf_counter() - started, 3),
    }


def _finish(report: dict, fmt: str) -> int:
    if fmt == "json":
        _emit(report)
    else:
        for v in report["verdicts"]:
            print(f"{v['verdict'].upper():5}  {v['name']}  ({v['pairs_checked']} checked)")
        print(f"# {report['counts']['holds']}/{report['counts']['checks']} checks hold in {report['wall_time_s']}s")
    failures = [v for v in report["verdicts"] if v["verdict"] != "holds"]
    if failures:
        json.dump({"schema": SCHEMA, "failures": failures}, sys.stderr, indent=2)
        sys.stderr.write("\n")
        return 1
    return 0


def _force_warning(args) -> None:
    if getattr(args, "force", False):
        log.warning("--force: enumeration caps lifted; this may take a long time")


def cmd_enumerate(args) -> int:
    _force_warning(args)
    if args.shape:
        shape = bm.Shape.parse(args.shape)
        items = bm.enumerate_matrices(args.n, shape, force=args.force)
        n = args.n
        expected = {
            bm.Shape.FULL: 2 ** (n * n),
            bm.Shape.UPPER: 2 ** (n * (n + 1) // 2),
            bm.Shape.LOWER: 2 ** (n * (n + 1) // 2),
            bm.Shape.STAIR: catalan(n),
        }[shape]
        kind = shape.value
    else:
        cls = cm.MonoidClass.parse(args.cls or "o")
        items = cm.enumerate_class(args.n, cls, force=args.force)
        expected = math.comb(2 * args.n - 1, args.n - 1) if cls is cm.MonoidClass.O else catalan(args.n)
        kind = cls.value
    if args.format == "json":
        _emit({"schema": SCHEMA, "command": "enumerate", "kind": kind, "n": args.n,
               "count": len(items), "expected": expected,
               "elements": [element_record(x) if args.records and not args.shape else x.to_json() for x in items]})
    else:
        sep = "\n\n" if args.shape else "\n"
        print(sep.join(x.to_text() if args.shape else str(x) for x in items))
        print(f"# count {len(items)}, expected {expected}")
    return 0 if len(items) == expected else 1


def cmd_represent(args) -> int:
    a = cm.parse_transformation(args.transformation)
    maps = {"B": rep_B, "S": rep_S, "M": rep_M, "PMP": rep_M_conjugated}
    m = maps[args.map](a)
    out = {"schema": SCHEMA, "command": "represent", "transformation": a.to_json(), "map": args.map, "matrix": m.to_json()}
    if args.map == "M":
        out["partition"] = matrix_to_partition(m).to_json()
    if args.format == "json":
        _emit(out)
    else:
        print(m.to_text())
        if "partition" in out:
            print(f"partition {out['partition']}")
    return 0


def cmd_verify(args) -> int:
    started = time.perf_counter()
    fn = THEOREMS[args.theorem]
    reports = fn(args.n)
    return _finish(_run_report("verify", {"theorem": args.theorem, "n": args.n}, reports, started), args.format)


def _target(spec: str, default_size: int):
    """``KIND[:SIZE]``; KIND is a matrix shape, or ``o``/``c``/``cminus``
    optionally suffixed by ``semiring`` or ``monoid``."""
    kind, _, size = spec.partition(":")
    size = int(size) if size else default_size
    kind = kind.strip().lower()
    if kind in {s.value for s in bm.Shape}:
        return semiring_from_matrices(size, kind), None
    ops = ("add", "mul")
    for suffix, suffix_ops in (("semiring", ("add", "mul")), ("monoid", ("mul",))):
        if kind.endswith(suffix):
            kind, ops = kind[: -len(suffix)].rstrip("-_"), suffix_ops
    cls = cm.MonoidClass.parse(kind)
    return semiring_from_transformations(size, cls, ops=ops), cls


def cmd_identity(args) -> int:
    started = time.perf_counter()
    if args.paper_eq:
        identity = paper_identity(args.paper_eq, args.n)
    elif args.identity:
        identity = parse_identity(args.identity)
    else:
        raise argparse.ArgumentTypeError("give an identity or --paper-eq")
    s, family = _target(args.target, args.n)
    report = check_identity(identity, s, budget=args.budget)
    reports = [report]
    details = {}
    if report.witness is not None:
        details["witness_reproduces"] = recheck_identity_witness(identity, s, report)
    if args.paper_eq and family is not None:
        # cross-check against the displayed counterexamples when they live in s
        alpha, beta, gamma = paper_witnesses(args.n)
        if family is cm.MonoidClass.CMINUS:
            alpha, beta, gamma = cm.bar(alpha), cm.bar(beta), cm.bar(gamma)
        env = None
        if args.paper_eq == 1 and alpha.n == s.element(0).n:
            env = {"x": s.index(alpha)}
        elif args.paper_eq == 2 and beta.n == s.element(0).n and s.has("add"):
            env = {"x": s.index(beta), "y": s.index(gamma)}
        if env is not None:
            lhs, rhs = eval_term(identity.lhs, env, s), eval_term(identity.rhs, env, s)
            details["paper_witness"] = {
                "assignment": {k: s.render(v) for k, v in env.items()},
                "lhs_value": s.render(lhs),
                "rhs_value": s.render(rhs),
                "separates": lhs != rhs,
            }
    report.details.update(details)
    # an identity that fails is a successful computation; the exit code
    # reflects the verdict so scripts can branch on it
    out = _run_report("identity", {"identity": str(identity), "target": s.name, "n": args.n}, reports, started)
    if args.format == "json":
        _emit(out)
    else:
        print(f"{report.verdict}: {identity} in {s.name} ({report.pairs_checked} assignments)")
        if report.witness:
            print(json.dumps(report.witness))
        if "paper_witness" in details:
            print(f"paper witness: {json.dumps(details['paper_witness'])}")
    return 0 if report.holds else 1


def cmd_hasse(args) -> int:
    _force_warning(args)
    cls = cm.MonoidClass.parse(args.cls)
    if args.n > HASSE_CAP and not args.force:
        raise ResourceLimitError(f"hasse with n={args.n} exceeds the cap n<={HASSE_CAP}")
    elements = cm.enumerate_class(args.n, cls, force=args.force)
    if args.format == "json":
        edges = cm.hasse_edges(elements)
        text = json.dumps({"schema": SCHEMA, "command": "hasse", "class": cls.value, "n": args.n,
                           "nodes": [str(x) for x in elements],
                           "edges": [[str(elements[i]), str(elements[j])] for i, j in edges]}, indent=2) + "\n"
    else:
        text = cm.hasse_dot(elements, name=f"{cls.value}{args.n}")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_young(args) -> int:
    _force_warning(args)
    parts = enumerate_staircase_partitions(args.n, force=args.force)
    expected = catalan(args.n + 1)
    if args.count_only:
        if args.format == "json":
            _emit({"schema": SCHEMA, "command": "young", "n": args.n, "count": len(parts), "expected": expected})
        else:
            print(len(parts))
        return 0 if len(parts) == expected else 1
    if args.n > YOUNG_LISTING_CAP and not args.force:
        raise ResourceLimitError(f"full young listing with n={args.n} exceeds n<={YOUNG_LISTING_CAP}; use --count-only")
    sources = {matrix_to_partition(rep_M(a)): a for a in cm.enumerate_class(args.n + 1, "cminus", force=args.force)}
    rows = [(p, partition_to_matrix(p, args.n), sources[p]) for p in parts]
    if args.format == "json":
        _emit({"schema": SCHEMA, "command": "young", "n": args.n, "count": len(parts), "expected": expected,
               "pairs": [{"partition": p.to_json(), "M": m.to_json(), "transformation": a.to_json()} for p, m, a in rows]})
    else:
        for p, m, a in rows:
            print(f"{a}  partition {p}")
            print(m.to_text())
            print(p.diagram(args.n))
            print()
        print(f"# count {len(parts)}, expected Catalan({args.n + 1}) = {expected}")
    return 0 if len(parts) == expected else 1


def cmd_complement(args) -> int:
    a = cm.parse_transformation(args.transformation)
    steps = complement_steps(a)
    agree = steps["cropped"] == steps["PMP_bar"]
    if args.format == "json":
        _emit({"schema": SCHEMA, "command": "complement", "agree": agree,
               **{k: v.to_json() for k, v in steps.items()}})
    else:
        labels = {
            "alpha": "alpha", "S": "S(alpha)", "negated": "upper triangle negated",
            "cropped": "first column and last row removed", "alpha_bar": "bar(alpha)",
            "M_bar": "M(bar alpha)", "PMP_bar": "P M(bar alpha) P",
        }
        for key, label in labels.items():
            value = steps[key]
            print(f"{label}:")
            print(value.to_text() if isinstance(value, bm.BoolMatrix) else str(value))
        print(f"agree: {agree}")
    return 0 if agree else 1


def cmd_report_all(args) -> int:
    started = time.perf_counter()
    reports = report_all(args.n_max, jobs=args.jobs)
    return _finish(_run_report("report-all", {"n_max": args.n_max}, reports, started), args.format)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catalan-semiring", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, force=True, fmt=("text", "json")):
        p.add_argument("--format", choices=fmt, default=fmt[0])
        if force:
            p.add_argument("--force", action="store_true", help="lift enumeration caps")

    p = sub.add_parser("enumerate", help="list a transformation monoid or a matrix set")
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--class", dest="cls", choices=["o", "c", "cminus"])
    group.add_argument("--shape", choices=[s.value for s in bm.Shape])
    p.add_argument("--records", action="store_true", help="JSON: one record per map with all its representations")
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("represent", help="matrix of a transformation under B, S, M or PMP")
    p.add_argument("transformation")
    p.add_argument("--map", choices=["B", "S", "M", "PMP"], required=True)
    common(p, force=False)
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("verify", help="exhaustively verify one result at size n")
    p.add_argument("--theorem", choices=sorted(THEOREMS), required=True)
    p.add_argument("--n", type=int, required=True)
    common(p, force=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identity", help="check an identity in a finite structure")
    p.add_argument("identity", nargs="?", help='e.g. "x^2 y = x y^2"')
    p.add_argument("--paper-eq", type=int, choices=[1, 2])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", default="upper",
                   help="upper|lower|full|stair|o|c|cminus, optional suffix semiring/monoid, optional :SIZE")
    p.add_argument("--budget", type=int, default=None, help="max assignments (default $CATALAN_BUDGET or 1e8)")
    common(p, force=False)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("hasse", help="Hasse diagram of a transformation family")
    p.add_argument("--class", dest="cls", choices=["o", "c", "cminus"], default="o")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--output", "-o")
    common(p, fmt=("dot", "json"))
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("young", help="Young diagrams in the staircase and their matrices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    common(p)
    p.set_defaults(func=cmd_young)

    p = sub.add_parser("complement", help="negate-and-crop construction for a map in C_{n+1}")
    p.add_argument("transformation")
    common(p, force=False)
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("report-all", help="run every feasible check up to n-max")
    p.add_argument("--n-max", type=int, required=True)
    common(p, force=False)
    p.set_defaults(func=cmd_report_all)

    sub.choices["report-all"].add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (CatalanError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
