"""Command-line interface.

Exit codes: 0 = analyses completed; 1 = the subcommand checks a property
and found it violated; 2 = input error; 3 = undecided (the exploration
was truncated before an answer was reached).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus, homecluster, lucency, report
from .errors import LucentNetError, ParseError, TheoremViolation
from .reachability import ExplorationLimits, explore
from .textio import parse_net

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_UNDECIDED = 3


def _common(parser):
    parser.add_argument("--max-states", type=int, default=100_000,
                        help="state-space exploration cap (default 100000)")
    parser.add_argument("--format", choices=("text", "json"), default="text")


def _load(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        doc = parse_net(fh.read())
    net, m0 = doc.to_net()
    return doc.name, net, m0


def _markings_json(markings):
    return [list(m.as_strings()) for m in markings]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lucentnet",
        description="Lucency, transparency, and home-cluster analysis for marked Petri nets")
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="full property report for a net file")
    p_analyze.add_argument("file")
    _common(p_analyze)

    p_lucency = sub.add_parser("lucency", help="decide lucency of a net file")
    p_lucency.add_argument("file")
    _common(p_lucency)

    p_home = sub.add_parser("home-clusters", help="find home clusters of a net file")
    p_home.add_argument("file")
    p_home.add_argument("--method", choices=("direct", "short-circuit", "both"),
                        default="both")
    _common(p_home)

    p_reach = sub.add_parser("reach", help="dump the reachable state space")
    p_reach.add_argument("file")
    _common(p_reach)

    p_suite = sub.add_parser("paper-suite",
                             help="run the bundled reference nets and the randomized "
                                  "implication suite")
    p_suite.add_argument("--random", type=int, default=0, metavar="N",
                         help="additionally generate N random free-choice nets")
    p_suite.add_argument("--seed", type=int, default=0)
    _common(p_suite)

    args = parser.parse_args(argv)
    limits = ExplorationLimits(max_states=args.max_states)

    try:
        if args.command == "analyze":
            return _cmd_analyze(args, limits)
        if args.command == "lucency":
            return _cmd_lucency(args, limits)
        if args.command == "home-clusters":
            return _cmd_home_clusters(args, limits)
        if args.command == "reach":
            return _cmd_reach(args, limits)
        if args.command == "paper-suite":
            return _cmd_suite(args, limits)
        raise AssertionError(args.command)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LucentNetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION if isinstance(exc, TheoremViolation) else EXIT_INPUT


def _cmd_analyze(args, limits) -> int:
    name, net, m0 = _load(args.file)
    rep = report.build_report(name, net, m0, limits)
    sys.stdout.write(report.emit_report(rep, args.format))
    return EXIT_UNDECIDED if rep["exploration"]["verdict"] == "truncated" else EXIT_OK


def _cmd_lucency(args, limits) -> int:
    name, net, m0 = _load(args.file)
    verdict = lucency.check_lucency(net, m0, limits)
    if args.format == "json":
        payload = {"net": name, "lucent": verdict.lucent}
        if verdict.witness:
            payload["witness"] = _markings_json(verdict.witness)
            payload["footprint"] = list(verdict.footprint or ())
        if verdict.unbounded:
            payload["unbounded_witness"] = {"stem": list(verdict.unbounded.stem),
                                            "pump": list(verdict.unbounded.pump)}
        print(json.dumps(payload, indent=2))
    else:
        if verdict.lucent is True:
            print(f"{name}: lucent")
        elif verdict.lucent is None:
            print(f"{name}: undecided (exploration truncated)")
        elif verdict.witness:
            m1, m2 = verdict.witness
            print(f"{name}: not lucent; {m1.pretty()} and {m2.pretty()} both enable "
                  f"{{{', '.join(verdict.footprint or ())}}}")
        else:
            print(f"{name}: not lucent (unbounded)")
    if verdict.lucent is None:
        return EXIT_UNDECIDED
    return EXIT_OK if verdict.lucent else EXIT_VIOLATION


def _cmd_home_clusters(args, limits) -> int:
    name, net, m0 = _load(args.file)
    hc = homecluster.find_home_clusters(net, m0, limits, method=args.method)
    if args.format == "json":
        payload = {
            "net": name,
            "method": hc.method,
            "home_clusters": [list(c.nodes()) for c in hc.home_clusters],
            "details": [{"cluster": list(d.cluster.nodes()), "is_home": d.is_home,
                         "direct": d.direct, "short_circuit": d.short_circuit,
                         "note": d.note} for d in hc.details],
        }
        print(json.dumps(payload, indent=2))
    else:
        if hc.home_clusters:
            print(f"{name}: home clusters: "
                  + "; ".join(c.pretty() for c in hc.home_clusters))
        else:
            print(f"{name}: no home clusters")
        for d in hc.details:
            verdict = {True: "home", False: "not home", None: "undecided"}[d.is_home]
            note = f"  [{d.note}]" if d.note else ""
            print(f"  {d.cluster.pretty()}: {verdict}{note}")
    if hc.home_clusters:
        return EXIT_OK
    if any(d.is_home is None for d in hc.details):
        return EXIT_UNDECIDED
    return EXIT_VIOLATION


def _cmd_reach(args, limits) -> int:
    name, net, m0 = _load(args.file)
    rg = explore(net, m0, limits)
    if args.format == "json":
        payload = {
            "net": name,
            "verdict": rg.verdict,
            "states": [list(m.as_strings()) for m in rg.states],
            "edges": [[i, t, j] for i, t, j in rg.edges],
            "terminal_sccs": [list(c) for c in rg.terminal_sccs()],
        }
        if rg.unbounded_witness:
            payload["unbounded_witness"] = {"stem": list(rg.unbounded_witness.stem),
                                            "pump": list(rg.unbounded_witness.pump)}
        print(json.dumps(payload, indent=2))
    else:
        print(f"{name}: {rg.verdict}, {len(rg.states)} states, {len(rg.edges)} edges")
        for i, m in enumerate(rg.states):
            succ = ", ".join(f"{t}->{j}" for t, j in rg.out_edges(i))
            print(f"  {i}: {m.pretty()}" + (f"  [{succ}]" if succ else ""))
        if rg.unbounded_witness:
            print(f"  unbounded: stem {list(rg.unbounded_witness.stem)} "
                  f"pump {list(rg.unbounded_witness.pump)}")
    return EXIT_UNDECIDED if rg.verdict == "truncated" else EXIT_OK


def _cmd_suite(args, limits) -> int:
    nets = corpus.suite_nets(random_count=args.random, seed=args.seed)
    expectation_rows = []
    for ref in corpus.all_reference_nets():
        for prop, expected, got, ok in corpus.verify_reference_net(ref, limits):
            expectation_rows.append((ref.ident, prop, expected, got, ok))
    suite = corpus.run_theorem_suite(nets, limits)
    bad_expectations = [r for r in expectation_rows if not r[4]]

    if args.format == "json":
        payload = {
            "nets": suite.nets,
            "expectations": {"checked": len(expectation_rows),
                             "failed": [[r[0], r[1], repr(r[2]), repr(r[3])]
                                        for r in bad_expectations]},
            "checks": {check: dict(sorted(counts.items()))
                       for check, counts in sorted(suite.counts.items())},
            "anomalies": [list(a) for a in suite.anomalies],
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"{suite.nets} nets analyzed "
              f"({len(expectation_rows)} reference expectations checked)")
        for check in sorted(suite.counts):
            c = suite.counts[check]
            print(f"  {check}: {c['pass']} pass, {c['fail']} fail, {c['skip']} skip")
        for ident, prop, expected, got, _ in bad_expectations:
            print(f"  EXPECTATION FAILED {ident}.{prop}: expected {expected!r}, got {got!r}")
        for net_name, check, detail in suite.anomalies:
            print(f"  ANOMALY {net_name} {check}: {detail}")
        print("result: " + ("ok" if suite.ok and not bad_expectations else "ANOMALIES FOUND"))
    return EXIT_OK if suite.ok and not bad_expectations else EXIT_VIOLATION


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
