"""Command-line interface: ``netident <command> ...``.

Exit codes: 0 success, 1 check failed, 2 input error, 3 ambiguity,
4 term-count cap exceeded (set NETIDENT_TERM_CAP to raise it).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import lemmas
from .counterexamples import AmbiguityWitness, gauge_pair, linear_bridge_pair
from .errors import (
    AmbiguityError,
    DegreeTooLow,
    GraphError,
    InconsistentSamples,
    InvalidEdgeFunction,
    NotAShift,
    SizeLimitExceeded,
    UnknownNodeError,
)
from .identify import DEFAULT_DEGREE_BOUND, measured_oracles, measurement_plan, run_identification
from .netfile import dump_network, load_network, save_network, to_dot
from .network import Network
from .polyfun import FunctionClass, Poly, format_rational, to_rational
from .response import build_response, format_mpoly
from .simulate import consistency_check, impulse, read_excitation_csv, run

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_AMBIGUOUS, EXIT_LIMIT = 0, 1, 2, 3, 4

CLASS_CHOICES = {c.value: c for c in FunctionClass}


def _coeff_list(p: Poly) -> str:
    return "[" + ", ".join(format_rational(c) for c in p.coeffs) + "]"


def _class_of(net: Network, override: Optional[str]) -> FunctionClass:
    return CLASS_CHOICES[override] if override else net.function_class()


def cmd_analyze(args) -> int:
    net = load_network(args.file)
    g = net.graph
    cls = _class_of(net, args.cls)
    plan = measurement_plan(g, cls)
    names = lambda nodes: ", ".join(g.labels[i] for i in sorted(nodes)) or "-"
    sufficient = {True: "yes", False: "no", None: "unknown"}[plan.sufficient]
    shape = "path" if g.is_path() else "tree" if g.is_forest() else "dag"
    print(f"nodes: {g.node_count}")
    print(f"edges: {len(g.edges)}")
    print(f"shape: {shape}")
    print(f"class: {cls.value}")
    print(f"sources: {names(g.sources())}")
    print(f"sinks: {names(g.sinks())}")
    print(f"measure: {names(plan.required)}")
    print(f"sufficient: {sufficient}")
    print(f"rationale: {plan.rationale}")
    return EXIT_OK


def cmd_identify(args) -> int:
    truth = load_network(args.file)
    g = truth.graph
    cls = _class_of(truth, args.cls)
    if args.measure == "auto":
        measured = sorted(measurement_plan(g, cls).required)
    else:
        measured = sorted({g.index(s.strip()) for s in args.measure.split(",") if s.strip()})
    lab = g.labels
    print(f"class: {cls.value}")
    print(f"degree bound: {args.degree_bound}")
    print(f"measured: {', '.join(lab[m] for m in measured)}")
    oracles = measured_oracles(truth, measured, args.degree_bound, canonical=args.canonical)
    try:
        report = run_identification(oracles, g, cls, args.degree_bound, seed=args.seed)
    except DegreeTooLow as exc:
        print(f"AMBIGUOUS: {exc}")
        print("a linear edge lets a shift be traded for an additive constant from another branch,")
        print("so the network is not identifiable from these measurements")
        return EXIT_AMBIGUOUS
    except AmbiguityError as exc:
        print(f"AMBIGUOUS: {exc}")
        return EXIT_AMBIGUOUS
    except (InconsistentSamples, NotAShift) as exc:
        print(f"FAIL: {exc}")
        return EXIT_FAIL
    for node in sorted(report.routes):
        print(f"route {lab[node]}: {report.routes[node]}")
    all_ok = True
    for (a, b), p in truth.edge_fn.items():
        q = report.network.fn(a, b)
        ok = p == q
        all_ok &= ok
        print(f"edge {lab[a]} -> {lab[b]}: true {_coeff_list(p)} recovered {_coeff_list(q)} {'PASS' if ok else 'FAIL'}")
    print(f"queries: {report.queries}")
    print(f"verification: {report.verification}")
    print(f"result: {'PASS' if all_ok else 'FAIL'}")
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_simulate(args) -> int:
    net = load_network(args.file)
    g = net.graph
    if args.impulse is not None:
        u = impulse(net, g.index(args.impulse), args.horizon)
    elif args.input is not None:
        u = read_excitation_csv(Path(args.input).read_text(), net, args.horizon)
    else:
        raise ValueError("pass --impulse NODE or --input CSV")
    traj = run(net, u, args.horizon)
    text = traj.to_csv(labels=g.labels)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    status = EXIT_OK
    if args.check:
        for i in g.topological_order():
            if args.horizon < g.max_depth_to(i) + 2:
                print(f"consistency {g.labels[i]}: skipped (horizon too short)", file=sys.stderr)
                continue
            ok = consistency_check(net, i, u, args.horizon)
            print(f"consistency {g.labels[i]}: {'PASS' if ok else 'FAIL'}", file=sys.stderr)
            if not ok:
                status = EXIT_FAIL
    return status


def _print_witness(w: AmbiguityWitness, out_dir: Optional[str]) -> int:
    lab = w.net_a.graph.labels
    ok = w.verify()
    print(f"measured: {', '.join(lab[m] for m in sorted(w.measured))}")
    for m in sorted(w.measured):
        print(f"response {lab[m]}: {format_mpoly(build_response(w.net_a, m), lab)}")
    print(w.diff())
    print(f"verified: {'yes' if ok else 'no'}")
    if out_dir:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        save_network(w.net_a, path / "net_a.json")
        save_network(w.net_b, path / "net_b.json")
        print(f"wrote {path / 'net_a.json'} and {path / 'net_b.json'}")
    else:
        print("--- net_a")
        print(dump_network(w.net_a), end="")
        print("--- net_b")
        print(dump_network(w.net_b), end="")
    return EXIT_OK if ok else EXIT_FAIL


def square_cube_path() -> Network:
    return Network.from_edges(3, {(0, 1): Poly.monomial(2), (1, 2): Poly.monomial(3)}, ["1", "2", "3"])


def cmd_witness(args) -> int:
    if args.kind == "gauge":
        net = load_network(args.file) if args.file else square_cube_path()
        order = net.graph.path_order() if net.graph.is_path() else []
        node = net.graph.index(args.node) if args.node else (order[1] if len(order) > 2 else -1)
        w = gauge_pair(net, node, to_rational(args.gamma))
    else:
        w = linear_bridge_pair(*(to_rational(v) for v in (args.alpha, args.beta, args.gamma_c, args.delta)))
    return _print_witness(w, args.out_dir)


def cmd_check_lemmas(args) -> int:
    suites, example = lemmas.run_all(args.seed, args.instances)
    for s in suites:
        print(s.line())
        for msg in s.failures[:5]:
            print(f"  violation: {msg}")
    sharp = example.verified()
    print(f"linear counterexample: {'verified' if sharp else 'NOT verified'}")
    ok = all(s.ok for s in suites) and sharp
    print(f"overall: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export_dot(args) -> int:
    sys.stdout.write(to_dot(load_network(args.file), Path(args.file).stem))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netident", description="Identifiability of static nonlinear networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="sources, sinks and the measurement plan")
    p.add_argument("file")
    p.add_argument("--class", dest="cls", choices=sorted(CLASS_CHOICES), help="function class (default: inferred)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("identify", help="identify a hidden ground-truth network from its measurements")
    p.add_argument("file")
    p.add_argument("--measure", default="auto", help="comma-separated node labels, or 'auto'")
    p.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--class", dest="cls", choices=sorted(CLASS_CHOICES))
    p.add_argument("--canonical", action="store_true", help="back oracles with expanded responses")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("simulate", help="simulate and write a t,node,u,y CSV")
    p.add_argument("file")
    p.add_argument("--horizon", type=int, required=True)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--impulse", metavar="NODE")
    src.add_argument("--input", metavar="CSV")
    p.add_argument("--check", action="store_true", help="also check simulated outputs against responses")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("witness", help="emit a verified pair of indistinguishable networks")
    p.add_argument("--kind", choices=["gauge", "linear-bridge"], required=True)
    p.add_argument("--file", help="path network for the gauge construction")
    p.add_argument("--node", help="interior node label for the gauge")
    p.add_argument("--gamma", default="1")
    p.add_argument("--alpha", default="1")
    p.add_argument("--beta", default="1")
    p.add_argument("--gamma-c", default="1")
    p.add_argument("--delta", default="1")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("check-lemmas", help="brute-force polynomial property suites")
    p.add_argument("--instances", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check_lemmas)

    p = sub.add_parser("export-dot", help="Graphviz DOT with edge polynomials")
    p.add_argument("file")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except AmbiguityError as exc:
        print(f"ambiguous: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except (GraphError, InvalidEdgeFunction, UnknownNodeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
