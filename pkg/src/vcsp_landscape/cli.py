"""Command-line interface.

Subcommands: gen, eval, ascend, verify, oracle, structure.  Machine-readable
results go to stdout, diagnostics to stderr; the exit status is 0 exactly
when the requested command succeeded and every requested check passed.
Identical invocations produce byte-identical stdout.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import core, generator, landscape, search, structure
from .errors import VcspError


@dataclass
class VerifyReport:
    """One row per structural or ascent check for a (n, m) parameter pair."""
    params: dict
    checks: list[tuple[str, str, str, bool]] = field(default_factory=list)

    def add(self, name: str, expected, observed) -> None:
        def fmt(v):
            return str(v).lower() if isinstance(v, bool) else str(v)
        self.checks.append((name, fmt(expected), fmt(observed), fmt(expected) == fmt(observed)))

    @property
    def overall(self) -> bool:
        return all(ok for _, _, _, ok in self.checks)


def _parse_start(inst, text, raw):
    return core.parse_assignment(inst, text, raw=raw)


def _fmt(inst, x, raw):
    return core.format_assignment(inst, x, raw=raw)


def cmd_gen(args) -> int:
    inst = generator.build_chain(args.n, args.m, args.sign, validate=not args.no_validate)
    core.write_instance(inst, args.out)
    if args.decomposition:
        structure.write_decomposition(generator.canonical_decomposition(args.m),
                                      args.decomposition)
    print(f"vars={inst.num_vars} unaries={len(inst.unaries)} binaries={len(inst.binaries)}")
    return 0


def cmd_eval(args) -> int:
    inst = core.read_instance(args.instance)
    x = _parse_start(inst, args.assign, args.raw_order)
    print(f"fitness={inst.fitness(x)}")
    return 0


def cmd_ascend(args) -> int:
    inst = core.read_instance(args.instance)
    x = _parse_start(inst, args.start, args.raw_order)
    if args.trials is not None:
        stats = search.run_trials(inst, x, method=args.method,
                                  trials=args.trials, seed=args.seed)
        print(f"trials={stats.trials} method={stats.method} mean={stats.mean} "
              f"min={stats.min} max={stats.max}")
        return 0
    record = args.trace is not None
    if args.method == "steepest":
        policy = "error" if args.tie == "error" else "lowest-index"
        tr = search.steepest_ascent(inst, x, tie_policy=policy,
                                    record_steps=record, max_steps=args.max_steps)
    elif args.method == "random":
        tr = search.random_ascent(inst, x, seed=args.seed,
                                  record_steps=record, max_steps=args.max_steps)
    else:
        tr = search.first_improvement_ascent(inst, x, record_steps=record,
                                             max_steps=args.max_steps)
    if args.trace:
        search.write_trace_csv(tr, inst, args.trace)
    end = _fmt(inst, tr.end, args.raw_order)
    if tr.complete:
        print(f"steps={tr.num_steps} final_fitness={tr.fitness_end} peak={end} "
              f"ties={tr.tie_events}")
        return 0
    print(f"steps={tr.num_steps} final_fitness={tr.fitness_end} end={end} "
          f"ties={tr.tie_events} partial=true")
    return 0


def cmd_verify(args) -> int:
    n, m = args.n, args.m
    report = VerifyReport({"n": n, "m": m})
    plus = generator.build_chain(n, m, "+")
    minus = generator.build_chain(n, m, "-")
    peak_plus = generator.expected_peak(n, m, "+")
    peak_minus = generator.expected_peak(n, m, "-")
    length = generator.predicted_ascent_length(m)
    s_m = n + 1 - m

    g = structure.constraint_graph(minus)
    report.add("max-degree", 2 if m == 1 else 3, structure.max_degree(g))
    report.add("constraints", f"{6*m}u+{7*m-1}b",
               f"{len(minus.unaries)}u+{len(minus.binaries)}b")
    check = structure.validate_path_decomposition(g, generator.canonical_decomposition(m).bags)
    report.add("decomposition-width", "valid:2",
               f"valid:{check.width}" if check.valid else f"invalid:{check.violation.kind}")
    report.add("cycle", True, structure.has_cycle(g))

    want_arcs = generator.expected_arcs(m)
    for sign, inst in (("+", plus), ("-", minus)):
        o = landscape.orient(inst)
        got = "not-oriented" if not o.oriented else \
            ("expected-arcs" if set(o.arcs) == want_arcs else "unexpected-arcs")
        report.add(f"orientation[{sign}]", "expected-arcs", got)
        peak = landscape.peak_of_oriented(inst, o) if o.oriented else None
        want = peak_plus if sign == "+" else peak_minus
        report.add(f"peak[{sign}]", _fmt(inst, want, False),
                   _fmt(inst, peak, False) if peak is not None else "none")

    for sign, inst, start, goal in (("+", plus, peak_minus, peak_plus),
                                    ("-", minus, peak_plus, peak_minus)):
        tr = search.steepest_ascent(inst, start, record_steps=False)
        report.add(f"ascent[{sign}]-steps", length, tr.num_steps)
        report.add(f"ascent[{sign}]-end", _fmt(inst, goal, False), _fmt(inst, tr.end, False))
        report.add(f"ascent[{sign}]-ties", 0, tr.tie_events)
        report.add(f"ascent[{sign}]-min-gain", f">={s_m}",
                   f">={s_m}" if (tr.min_gain or 0) >= s_m else str(tr.min_gain))

    print(f"n={n} m={m}")
    for name, expected, observed, ok in report.checks:
        print(f"check={name} expected={expected} observed={observed} "
              f"pass={'true' if ok else 'false'}")
    print(f"overall={'pass' if report.overall else 'fail'}")
    return 0 if report.overall else 1


def cmd_oracle(args) -> int:
    inst = core.read_instance(args.instance)
    if args.peaks:
        cap = args.cap if args.cap is not None else landscape.PEAKS_CAP
        peaks = landscape.enumerate_peaks(inst, cap=cap)
        print(f"peaks={len(peaks)}")
        for p in peaks:
            print(f"peak {_fmt(inst, p, args.raw_order)} {inst.fitness(p)}")
        return 0
    if args.semismooth:
        cap = args.cap if args.cap is not None else landscape.SEMISMOOTH_CAP
        result = landscape.check_semismooth(inst, cap=cap)
        if result.semismooth:
            print("semismooth=true")
            return 0
        v = result.violation
        print("semismooth=false")
        pattern = ["*" if i in v.free_vars else str(v.fixed[i]) for i in range(inst.num_vars)]
        order = range(inst.num_vars) if args.raw_order else inst.display_order()
        print(f"face {''.join(pattern[i] for i in order)} peaks={len(v.peaks)}")
        for p in v.peaks:
            print(f"face-peak {_fmt(inst, p, args.raw_order)} {inst.fitness(p)}")
        return 1
    # --ascent-graph START
    start = _parse_start(inst, args.ascent_graph, args.raw_order)
    cap = args.cap if args.cap is not None else landscape.ASCENT_GRAPH_CAP
    graph = landscape.ascent_graph(inst, start, cap=cap)
    print(f"nodes={len(graph.nodes)} edges={len(graph.edges)} sinks={len(graph.sinks)}")
    for s in graph.sinks:
        print(f"sink {_fmt(inst, s, args.raw_order)} {graph.nodes[s]}")
    return 0


def cmd_structure(args) -> int:
    inst = core.read_instance(args.instance)
    g = structure.constraint_graph(inst)
    parts = [f"vertices={g.num_vars}", f"edges={len(g.edges)}",
             f"degree={structure.max_degree(g)}",
             f"cycle={'true' if structure.has_cycle(g) else 'false'}"]
    status = 0
    if args.decomposition:
        pd = structure.read_decomposition(args.decomposition)
        check = structure.validate_path_decomposition(g, pd.bags)
        if check.valid:
            parts.append(f"width={check.width} valid=true")
        else:
            parts.append("valid=false")
            print(f"decomposition invalid: {check.violation.detail}", file=sys.stderr)
            status = 1
    print(" ".join(parts))
    if args.dot:
        orientation = landscape.orient(inst)
        with open(args.dot, "w") as fh:
            fh.write(structure.export_dot(inst, orientation if orientation.oriented else None))
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vcsp",
        description="Generate, search, and analyze fitness landscapes of "
                    "binary Boolean VCSP instances.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a chained-gadget instance")
    p.add_argument("--n", type=int, required=True, help="difficulty parameter (n >= m)")
    p.add_argument("--m", type=int, default=None, help="number of gadgets (default: n)")
    p.add_argument("--sign", choices=["+", "-"], required=True)
    p.add_argument("--out", required=True, help="output instance path")
    p.add_argument("--decomposition", help="also write the canonical width-2 bags here")
    p.add_argument("--no-validate", action="store_true",
                   help="skip the weight-schedule self-check")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eval", help="evaluate the fitness of an assignment")
    p.add_argument("--instance", required=True)
    p.add_argument("--assign", required=True, help="assignment bit string")
    p.add_argument("--raw-order", action="store_true",
                   help="read/write assignment strings in dense index order")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("ascend", help="run one local-search ascent")
    p.add_argument("--instance", required=True)
    p.add_argument("--start", required=True, help="starting assignment bit string")
    p.add_argument("--method", choices=list(search.METHODS), default="steepest")
    p.add_argument("--seed", type=int, default=0, help="seed for --method random")
    p.add_argument("--tie", choices=["lowest", "error"], default="lowest",
                   help="steepest-ascent tie policy")
    p.add_argument("--trace", help="write the step-by-step trace CSV here")
    p.add_argument("--trials", type=int, default=None,
                   help="instead of one run, aggregate step counts over this many trials")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--raw-order", action="store_true")
    p.set_defaults(func=cmd_ascend)

    p = sub.add_parser("verify", help="check the generated family's guarantees")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None, help="default: n")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force landscape oracles (size capped)")
    p.add_argument("--instance", required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--peaks", action="store_true", help="enumerate all local peaks")
    mode.add_argument("--semismooth", action="store_true",
                      help="check that every hypercube face is single peaked")
    mode.add_argument("--ascent-graph", metavar="START",
                      help="explore all ascents from START")
    p.add_argument("--cap", type=int, default=None, help="override the size cap")
    p.add_argument("--raw-order", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("structure", help="constraint-graph statistics and exports")
    p.add_argument("--instance", required=True)
    p.add_argument("--dot", help="write a DOT rendering here")
    p.add_argument("--decomposition", help="validate this bag file against the graph")
    p.set_defaults(func=cmd_structure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "m", None) is None and args.command in ("gen", "verify"):
        args.m = args.n
    try:
        return args.func(args)
    except VcspError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
