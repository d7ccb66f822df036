"""Command-line front end.

Subcommands: analyze, batch, verify, graph, convert-lookup, simulate,
catalog.  Machine arguments accept a file path, a catalog name, or a
catalog alias, tried in that order.  Exit codes: 0 success, 1 partial
batch failure, 2 input error, 3 budget exhaustion, 4 algorithm
disagreement — nothing else.  ``MEMDEPTH_NO_COLOR`` disables ANSI
styling; styling is also skipped when stdout is not a terminal.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .depth import Depth, memory_depth
from .fsm import Fsm, FsmError, reachable_reduce
from .match_sim import MatchError, PayoffMatrix, play_match
from .memits import build_memit_graph, build_memit_pair_graph
from .oracles import BudgetExceededError, SearchCap, pds_depth, window_oracle_depth
from .strategy_io import (
    FormatError,
    UnknownStrategyError,
    UnsupportedTableError,
    builtin,
    builtin_lookup,
    catalog_entries,
    export_dot,
    lookup_to_fsm,
    parse_fsm,
    parse_lookup,
    serialize_fsm,
)

_INPUT_ERRORS = (
    FormatError,
    FsmError,
    UnknownStrategyError,
    UnsupportedTableError,
    MatchError,
    OSError,
    ValueError,
)

ALGORITHMS = ("memit-pair", "pds", "window")


def _number(text: str):
    """Parse a payoff: int if possible so scores print without decimals."""
    try:
        return int(text)
    except ValueError:
        return float(text)


def _use_color() -> bool:
    if os.environ.get("MEMDEPTH_NO_COLOR"):
        return False
    return sys.stdout.isatty()


def _bold(text: str) -> str:
    return f"\x1b[1m{text}\x1b[0m" if _use_color() else text


def _resolve_machine(spec: str) -> Fsm:
    """A machine argument: file path first, then catalog name or alias."""
    path = Path(spec)
    if path.exists() and not path.is_dir():
        return parse_fsm(path.read_text(encoding="utf-8"))
    try:
        return builtin(spec).machine
    except UnknownStrategyError:
        raise UnknownStrategyError(
            f"{spec!r} is neither a readable file nor a catalog name"
        ) from None


def _resolve_lookup(spec: str):
    path = Path(spec)
    if path.exists() and not path.is_dir():
        return parse_lookup(path.read_text(encoding="utf-8"))
    try:
        return builtin_lookup(spec)
    except UnknownStrategyError:
        raise UnknownStrategyError(
            f"{spec!r} is neither a readable file nor a catalog lookup name"
        ) from None


def _cap_from(ns) -> SearchCap | None:
    return SearchCap(ns.cap) if getattr(ns, "cap", None) is not None else None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Analysis reports


@dataclass(frozen=True)
class AnalysisReport:
    """What one machine analysis found."""

    name: str
    states_raw: int
    states_reachable: int
    memit_count: int
    pair_node_count: int
    depth: Depth
    algorithm: str
    elapsed_seconds: float

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "states_raw": self.states_raw,
            "states_reachable": self.states_reachable,
            "memit_count": self.memit_count,
            "pair_node_count": self.pair_node_count,
            "depth": self.depth.json_value,
            "algorithm": self.algorithm,
            "elapsed_seconds": round(self.elapsed_seconds, 6),
        }


def _compute_depth(fsm: Fsm, algorithm: str, cap: SearchCap | None, budget: int | None) -> Depth:
    if algorithm == "pds":
        if budget is not None:
            return pds_depth(fsm, cap=cap, node_budget=budget)
        return pds_depth(fsm, cap=cap)
    if algorithm == "window":
        return window_oracle_depth(fsm, cap=cap)
    return memory_depth(fsm)


def _analyze(fsm: Fsm, algorithm: str, cap: SearchCap | None, budget: int | None) -> AnalysisReport:
    reduced = reachable_reduce(fsm)
    graph = build_memit_graph(reduced)
    pairs = build_memit_pair_graph(graph)
    started = time.perf_counter()
    depth = _compute_depth(fsm, algorithm, cap, budget)
    elapsed = time.perf_counter() - started
    return AnalysisReport(
        name=fsm.name,
        states_raw=len(fsm.states),
        states_reachable=len(reduced.states),
        memit_count=len(graph.nodes),
        pair_node_count=len(pairs.nodes),
        depth=depth,
        algorithm=algorithm,
        elapsed_seconds=elapsed,
    )


def _print_report(report: AnalysisReport) -> None:
    print(_bold(report.name))
    print(f"  states (raw):       {report.states_raw}")
    print(f"  states (reachable): {report.states_reachable}")
    print(f"  memits:             {report.memit_count}")
    print(f"  pair nodes:         {report.pair_node_count}")
    print(f"  memory depth:       {report.depth}")
    print(f"  algorithm:          {report.algorithm}")
    print(f"  elapsed:            {report.elapsed_seconds:.4f}s")


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_analyze(ns) -> int:
    fsm = _resolve_machine(ns.machine)
    report = _analyze(fsm, ns.algorithm, _cap_from(ns), ns.budget)
    if ns.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        _print_report(report)
    return 0


def _cmd_batch(ns) -> int:
    directory = Path(ns.directory)
    if not directory.is_dir():
        raise NotADirectoryError(f"{ns.directory!r} is not a directory")
    reports = []
    failures = []
    for path in sorted(directory.glob("*.json")):
        try:
            fsm = parse_fsm(path.read_text(encoding="utf-8"))
            reports.append(_analyze(fsm, ns.algorithm, _cap_from(ns), ns.budget))
        except BudgetExceededError as exc:
            failures.append((path.name, f"budget exhausted: {exc}"))
        except _INPUT_ERRORS as exc:
            failures.append((path.name, str(exc)))
    if ns.json:
        document = {
            "reports": [r.as_dict() for r in reports],
            "errors": [{"file": name, "error": message} for name, message in failures],
        }
        print(json.dumps(document, indent=2))
    else:
        if reports:
            header = f"{'NAME':<28} {'STATES':>6} {'REACH':>6} {'MEMITS':>7} {'PAIRS':>6} {'DEPTH':>9}"
            print(_bold(header))
            for r in reports:
                print(
                    f"{r.name:<28} {r.states_raw:>6} {r.states_reachable:>6}"
                    f" {r.memit_count:>7} {r.pair_node_count:>6} {str(r.depth):>9}"
                )
        for name, message in failures:
            print(f"error: {name}: {message}", file=sys.stderr)
    return 1 if failures else 0


def _cmd_verify(ns) -> int:
    fsm = _resolve_machine(ns.machine)
    cap = _cap_from(ns)
    depths = {
        "memit-pair": memory_depth(fsm),
        "pds": pds_depth(fsm, cap=cap) if ns.budget is None
        else pds_depth(fsm, cap=cap, node_budget=ns.budget),
        "window": window_oracle_depth(fsm, cap=cap),
    }
    agree = depths["memit-pair"] == depths["pds"] == depths["window"]
    if ns.json:
        document = {
            "name": fsm.name,
            "depths": {k: d.json_value for k, d in depths.items()},
            "agree": agree,
        }
        print(json.dumps(document, indent=2))
    else:
        print(_bold(fsm.name))
        for label, d in depths.items():
            print(f"  {label + ':':<12} {d}")
        print(f"  agreement:   {'yes' if agree else 'NO'}")
    if not agree:
        print(f"error: algorithms disagree on {fsm.name!r}", file=sys.stderr)
        return 4
    return 0


def _cmd_graph(ns) -> int:
    fsm = _resolve_machine(ns.machine)
    if ns.kind == "fsm":
        text = export_dot(fsm)
    else:
        graph = build_memit_graph(reachable_reduce(fsm))
        if ns.kind == "memit":
            text = export_dot(graph)
        else:
            text = export_dot(build_memit_pair_graph(graph))
    _emit(text, ns.out)
    return 0


def _cmd_convert_lookup(ns) -> int:
    table = _resolve_lookup(ns.lookup)
    _emit(serialize_fsm(lookup_to_fsm(table)), ns.out)
    return 0


def _cmd_simulate(ns) -> int:
    machine_a = _resolve_machine(ns.machine_a)
    machine_b = _resolve_machine(ns.machine_b)
    payoffs = PayoffMatrix(
        reward=ns.reward,
        temptation=ns.temptation,
        sucker=ns.sucker,
        punishment=ns.punishment,
    )
    result = play_match(machine_a, machine_b, ns.rounds, payoffs)
    if ns.json:
        document = {
            "machine_a": machine_a.name,
            "machine_b": machine_b.name,
            "rounds": result.rounds,
            "score_a": result.score_a,
            "score_b": result.score_b,
            "moves": ["".join(pair) for pair in result.moves],
        }
        print(json.dumps(document, indent=2))
    else:
        print(_bold(f"{machine_a.name} vs {machine_b.name}: {result.rounds} rounds"))
        print(f"  score: {result.score_a} / {result.score_b}")
        shown = " ".join("".join(pair) for pair in result.moves[:30])
        if result.rounds > 30:
            shown += " ..."
        if shown:
            print(f"  moves: {shown}")
    return 0


def _cmd_catalog(ns) -> int:
    words = ns.args
    if words and words[0] == "list":
        words = words[1:]
    if not words:
        entries = catalog_entries()
        if ns.json:
            document = {
                "entries": [
                    {
                        "name": e.name,
                        "states": len(e.machine.states),
                        "expected_depth": e.expected_depth.json_value,
                        "provenance": e.provenance,
                        "aliases": list(e.aliases),
                        "description": e.description,
                    }
                    for e in entries
                ]
            }
            print(json.dumps(document, indent=2))
        else:
            header = f"{'NAME':<24} {'STATES':>6} {'DEPTH':>9}  {'PROVENANCE':<10}  ALIASES"
            print(_bold(header))
            for e in entries:
                aliases = ", ".join(e.aliases) or "-"
                print(
                    f"{e.name:<24} {len(e.machine.states):>6} {str(e.expected_depth):>9}"
                    f"  {e.provenance:<10}  {aliases}"
                )
        return 0
    if words[0] == "show" and len(words) == 2:
        entry = builtin(words[1])
        if ns.json:
            document = {
                "name": entry.name,
                "states": len(entry.machine.states),
                "expected_depth": entry.expected_depth.json_value,
                "provenance": entry.provenance,
                "aliases": list(entry.aliases),
                "description": entry.description,
                "machine": json.loads(serialize_fsm(entry.machine)),
            }
            print(json.dumps(document, indent=2))
        else:
            print(_bold(entry.name))
            print(f"  provenance:     {entry.provenance}")
            print(f"  expected depth: {entry.expected_depth}")
            print(f"  aliases:        {', '.join(entry.aliases) or '-'}")
            print(f"  description:    {entry.description}")
            print(serialize_fsm(entry.machine), end="")
        return 0
    raise ValueError("catalog accepts 'list' (default) or 'show <name>'")


# ---------------------------------------------------------------------------
# Parser


def _add_analysis_flags(sub) -> None:
    sub.add_argument(
        "--algorithm",
        choices=ALGORITHMS,
        default="memit-pair",
        help="depth algorithm (default: memit-pair)",
    )
    sub.add_argument(
        "--cap",
        type=int,
        metavar="N",
        help="search-depth cap for the pds/window algorithms (default: pair-node bound + 1)",
    )
    sub.add_argument(
        "--budget",
        type=int,
        metavar="N",
        help="node budget for the pds tree search; exhaustion exits with code 3",
    )
    sub.add_argument("--json", action="store_true", help="emit one JSON document")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="memdepth",
        description="Memory-depth analysis of finite-state game strategies.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", help="compute one machine's memory depth")
    analyze.add_argument("machine", help="machine file, catalog name, or alias")
    _add_analysis_flags(analyze)
    analyze.set_defaults(func=_cmd_analyze)

    batch = commands.add_parser("batch", help="analyze every *.json machine in a directory")
    batch.add_argument("directory", help="directory scanned for *.json machine files")
    _add_analysis_flags(batch)
    batch.set_defaults(func=_cmd_batch)

    verify = commands.add_parser("verify", help="run all three algorithms and compare")
    verify.add_argument("machine", help="machine file, catalog name, or alias")
    verify.add_argument("--cap", type=int, metavar="N", help="search-depth cap override")
    verify.add_argument("--budget", type=int, metavar="N", help="pds node budget")
    verify.add_argument("--json", action="store_true", help="emit one JSON document")
    verify.set_defaults(func=_cmd_verify)

    graph = commands.add_parser("graph", help="export a machine or its derived graphs as DOT")
    graph.add_argument("machine", help="machine file, catalog name, or alias")
    graph.add_argument(
        "--kind",
        choices=("fsm", "memit", "memit-pair"),
        default="fsm",
        help="which graph to export (default: fsm)",
    )
    graph.add_argument("--out", metavar="PATH", help="write DOT here instead of stdout")
    graph.set_defaults(func=_cmd_graph)

    convert = commands.add_parser(
        "convert-lookup", help="unroll a lookup table into a machine file"
    )
    convert.add_argument("lookup", help="lookup file or catalog lookup name")
    convert.add_argument("--out", metavar="PATH", help="write the machine file here")
    convert.set_defaults(func=_cmd_convert_lookup)

    simulate = commands.add_parser("simulate", help="play two machines against each other")
    simulate.add_argument("machine_a", help="machine file, catalog name, or alias")
    simulate.add_argument("machine_b", help="machine file, catalog name, or alias")
    simulate.add_argument(
        "--rounds", type=int, default=10, metavar="N", help="rounds to play (default: 10)"
    )
    simulate.add_argument(
        "--reward", type=_number, default=3, metavar="R",
        help="payoff for mutual cooperation (default: 3)",
    )
    simulate.add_argument(
        "--temptation", type=_number, default=5, metavar="T",
        help="payoff for defecting on a cooperator (default: 5)",
    )
    simulate.add_argument(
        "--sucker", type=_number, default=0, metavar="S",
        help="payoff for cooperating with a defector (default: 0)",
    )
    simulate.add_argument(
        "--punishment", type=_number, default=1, metavar="P",
        help="payoff for mutual defection (default: 1)",
    )
    simulate.add_argument("--json", action="store_true", help="emit one JSON document")
    simulate.set_defaults(func=_cmd_simulate)

    catalog = commands.add_parser("catalog", help="list or show the builtin strategies")
    catalog.add_argument("args", nargs="*", help="'list' (default) or 'show <name>'")
    catalog.add_argument("--json", action="store_true", help="emit one JSON document")
    catalog.set_defaults(func=_cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0 if code is None else 2
    try:
        return ns.func(ns)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
