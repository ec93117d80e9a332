"""Command-line front end.

Exit codes: 0 success or full agreement, 1 any disagreement or violation,
2 usage, parse or size errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import classify as cls
from .coprime import DEFAULT_ORDER_CAP, build_coprime_graph, reduced_graph, to_dot, to_json
from .embed import (
    DEFAULT_VERTEX_CAP,
    CapExceeded,
    CollisionError,
    literal_plan,
    parse_graph,
    plan_embedding,
    plan_to_json,
    verify_embedding,
)
from .groups import FiniteGroup, NotAGroup, SpecError, TooLarge, load_cayley_json, parse_group_spec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CAP_ENV = "COPRIME_ORDER_CAP"


def _default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_ORDER_CAP
    cap = int(raw)
    if cap <= 0:
        raise ValueError(f"{CAP_ENV} must be positive")
    return cap


def resolve_group(spec: str) -> FiniteGroup:
    """A family spec such as ``S(3)xZ(5)``, or a path to a Cayley-table JSON file."""
    if spec.endswith(".json") or Path(spec).is_file():
        return load_cayley_json(Path(spec))
    return parse_group_spec(spec)


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _fmt_bool(b: bool | None) -> str:
    return "-" if b is None else ("true" if b else "false")


def _fmt_witness(w: dict | None) -> str:
    if not w:
        return ""
    if "orders" in w:
        return f"{w['kind']} orders {w['orders']}"
    return f"{w['kind']} {w['vertices']}"


def cmd_graph(args) -> int:
    g = resolve_group(args.spec)
    graph = reduced_graph(g) if args.reduced else build_coprime_graph(g, args.order_cap)
    sys.stdout.write(to_dot(graph) if args.format == "dot" else to_json(graph))
    return EXIT_OK


def render_report(report: cls.ClassReport) -> str:
    primes = "{" + ",".join(map(str, report.primes)) + "}"
    lines = [
        f"group {report.group}  order {report.order}  primes {primes}  "
        f"nilpotent {_fmt_bool(report.nilpotent)}  |Z| {report.center_order}  graph {report.graph}",
        f"{'class':<10} {'detector':<9} {'criterion':<10} {'agree':<6} witness",
    ]
    for name, c in report.flags.items():
        agree = "-" if c.agrees is None else ("yes" if c.agrees else "NO")
        extra = _fmt_witness(c.witness)
        if c.note:
            extra = f"{extra}  ({c.note})" if extra else f"({c.note})"
        lines.append(f"{name:<10} {_fmt_bool(c.detector):<9} {_fmt_bool(c.criterion):<10} {agree:<6} {extra}")
    if report.error:
        lines.append(f"error: {report.error}")
    return "\n".join(lines) + "\n"


def cmd_classify(args) -> int:
    g = resolve_group(args.spec)
    report = cls.classify_group(g, full_graph=args.full_graph, cap=args.order_cap)
    if args.format == "json":
        out = {"report": report.to_dict(timing=False), "timing_ms": report.timing_ms}
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    else:
        sys.stdout.write(render_report(report))
    return EXIT_FAIL if report.failed else EXIT_OK


def cmd_verify(args) -> int:
    theorems = [t.strip() for t in args.theorems.split(",") if t.strip()]
    unknown = [t for t in theorems if t not in cls.THEOREMS]
    if unknown:
        print(f"error: unknown theorem ids {unknown}; choose from {', '.join(cls.THEOREMS)}", file=sys.stderr)
        return EXIT_USAGE
    families = tuple(f.strip() for f in args.families.split(",") if f.strip())
    universe = cls.Universe(
        families, max_order=args.max_order, max_n=args.max_n, cyclic_max_order=args.cyclic_max_order
    )
    start = time.perf_counter()
    results, reports = cls.run_theorem_harness(universe, theorems, jobs=args.jobs, full_graph=args.full_graph)
    elapsed = (time.perf_counter() - start) * 1000
    failed = any(not r.upheld for r in results)
    readings = cls.dihedral_readings() if "4.2" in theorems else None
    if args.format == "json":
        out = {
            "universe": universe.describe(),
            "theorems": [r.to_dict() for r in results],
            "reports": [r.to_dict(timing=False) for r in reports],
            "timing_ms": round(elapsed, 3),
        }
        if readings is not None:
            out["dihedral_readings"] = readings
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
        return EXIT_FAIL if failed else EXIT_OK
    print(f"universe: {universe.describe()}  ({len(reports)} groups)")
    print(f"{'theorem':<8} {'checked':>8} {'violations':>11}  status")
    for r in results:
        print(f"{r.theorem:<8} {r.checked:>8} {len(r.violations):>11}  {'ok' if r.upheld else 'VIOLATED'}")
    for r in results:
        for v in r.violations[: args.show]:
            print(f"  {r.theorem} {v['group']}: {v['detail']}  {_fmt_witness(v.get('witness'))}".rstrip())
        if len(r.violations) > args.show:
            print(f"  {r.theorem}: ... {len(r.violations) - args.show} more")
    if "4.3" in theorems:
        for rep in reports:
            at = rep.flags.get("at_free")
            if at is not None and rep.group.startswith("S(") and "x" not in rep.group:
                status = "AT-free" if at.detector else _fmt_witness(at.witness)
                print(f"  {rep.group}: {status}")
    if readings is not None:
        for spec in ("D(30)", "D(60)"):
            info = readings[spec]
            print(f"  reading {spec}: primes {info['primes']}, AT {'yes' if info['has_at'] else 'no'}")
    print(f"elapsed {elapsed / 1000:.2f}s")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_embed(args) -> int:
    text = sys.stdin.read() if args.graph == "-" else Path(args.graph).read_text()
    graph = parse_graph(text)
    try:
        plan = literal_plan(graph, args.cap) if args.literal else plan_embedding(graph, args.cap)
    except CollisionError as exc:
        out = {"error": "CollisionError", "message": str(exc), "pair": list(exc.pair), "order": exc.order,
               "available": exc.available}
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
        return EXIT_FAIL
    ok, bad = verify_embedding(graph, plan)
    sys.stdout.write(plan_to_json(plan, ok, bad))
    if args.dot and ok:
        names = [graph.name(v) for v in range(graph.n)]
        orders = plan.assignment
        lines = ["graph embedded {"]
        lines += [f'  {v} [label="{names[v]} o={orders[v]}"];' for v in range(graph.n)]
        lines += [f"  {u} -- {v};" for u, v in graph.edges()]
        lines.append("}")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coprimegraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_cap(p):
        p.add_argument("--order-cap", type=_positive, default=None,
                       help=f"largest group built as a full graph (default {DEFAULT_ORDER_CAP}, env {CAP_ENV})")

    p = sub.add_parser("graph", help="export the co-prime graph of a group")
    p.add_argument("spec", help="group spec such as 'S(3)xZ(5)' or a Cayley-table JSON file")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--reduced", action="store_true", help="export the prime-support quotient graph")
    add_cap(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("classify", help="decide every graph class for one group")
    p.add_argument("spec")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--full-graph", action="store_true", help="run detectors on the element graph")
    add_cap(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="cross-check criteria against detectors over group families")
    p.add_argument("--families", default="cyclic", help=f"comma list from {', '.join(cls.FAMILIES)}")
    p.add_argument("--max-order", type=_positive, default=200)
    p.add_argument("--cyclic-max-order", type=_positive, default=None)
    p.add_argument("--max-n", type=_positive, default=8)
    p.add_argument("--theorems", default=",".join(cls.THEOREMS))
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--full-graph", action="store_true")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--show", type=int, default=10, help="violations listed per theorem")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("embed", help="embed a graph into the co-prime graph of a cyclic group")
    p.add_argument("graph", help="edge-list or DOT file, '-' for stdin")
    p.add_argument("--literal", action="store_true", help="fresh primes only for full-degree vertices")
    p.add_argument("--dot", action="store_true", help="also print the verified induced subgraph")
    p.add_argument("--cap", type=_positive, default=DEFAULT_VERTEX_CAP)
    p.set_defaults(func=cmd_embed)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "order_cap", None) is None and hasattr(args, "order_cap"):
            args.order_cap = _default_cap()
        return args.func(args)
    except (SpecError, NotAGroup, TooLarge, CapExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
