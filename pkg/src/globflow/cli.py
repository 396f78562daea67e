"""Batch command line front end.

Subcommands: build, analyze, compare, export.  All output is
deterministic: byte-identical inputs give byte-identical outputs.

Exit codes: 0 success / verdict true, 1 verdict false, 2 input error,
3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path as FilePath

from . import core, documents, homotopy, underlying
from .builder import build
from .core import Flow
from .errors import FlowError, ParseError, SearchBudgetExceeded

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _load(path: str) -> tuple:
    try:
        text = FilePath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    script = documents.parse_document(text)
    return script, build(script)


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=True))


def _summary_dict(flow: Flow) -> dict:
    summary = homotopy.invariant_summary(flow)
    return {
        "states": list(summary.states),
        "initial": list(summary.initial),
        "final": list(summary.final),
        "path_count": summary.path_count,
        "matrix": [list(row) for row in summary.matrix],
        "per_state": {
            s: {
                "in_paths": info.in_paths,
                "out_paths": info.out_paths,
                "minus_classes": info.minus_classes,
                "plus_classes": info.plus_classes,
            }
            for s, info in summary.per_state.items()
        },
    }


def _report_dict(report: homotopy.THomotopyReport) -> dict:
    return {
        "condition1": {
            "passed": report.condition1.passed,
            "detail": report.condition1.detail,
        },
        "condition2": {
            "passed": report.condition2.passed,
            "offenders": [
                {"state": s, "minus_classes": m, "plus_classes": p}
                for s, m, p in report.condition2.offenders
            ],
        },
        "condition3": {
            "passed": report.condition3.passed,
            "offenders": list(report.condition3.offenders),
        },
        "verdict": report.verdict,
    }


def cmd_build(args) -> int:
    _, flow = _load(args.document)
    summary = homotopy.invariant_summary(flow)
    _emit(
        {
            "states": list(summary.states),
            "atoms": sorted(a.id for a in flow.atoms),
            "path_count": summary.path_count,
            "matrix": [list(row) for row in summary.matrix],
        }
    )
    return EXIT_OK


def cmd_analyze(args) -> int:
    _, flow = _load(args.document)
    initial = args.init or sorted(core.initial_states(flow))
    final = args.final or sorted(core.final_states(flow))
    report = core.reachability_report(flow, initial, final)
    _emit(
        {
            "summary": _summary_dict(flow),
            "reachability": {
                "initial": list(report.initial),
                "final": list(report.final),
                "unreachable": list(report.unreachable),
                "deadlocks": list(report.deadlocks),
                "clean": report.clean,
            },
        }
    )
    return EXIT_OK


def cmd_compare(args) -> int:
    _, left = _load(args.left)
    _, right = _load(args.right)
    if args.mode == "iso":
        morphism = homotopy.is_isomorphic(left, right)
        if morphism is None:
            _emit({"mode": "iso", "verdict": False})
            return EXIT_FALSE
        _emit({"mode": "iso", "verdict": True, "state_map": dict(morphism.state_map)})
        return EXIT_OK

    found = homotopy.find_T_homotopy(left, right)
    if found is not None:
        morphism, report = found
        _emit(
            {
                "mode": "t-homotopy",
                "verdict": True,
                "state_map": dict(morphism.state_map),
                "report": _report_dict(report),
            }
        )
        return EXIT_OK
    payload: dict = {"mode": "t-homotopy", "verdict": False}
    for candidate in homotopy._candidate_morphisms(left, right):
        report = homotopy.check_T_homotopy(candidate, left, right)
        payload["nearest"] = {
            "state_map": dict(candidate.state_map),
            "report": _report_dict(report),
        }
        break
    else:
        payload["reason"] = "no injection of states satisfies condition 1"
    _emit(payload)
    return EXIT_FALSE


def cmd_export(args) -> int:
    script, flow = _load(args.document)
    if args.format == "dot":
        sys.stdout.write(underlying.to_dot(underlying.underlying_graph(script)))
    else:
        sys.stdout.write(documents.dumps(documents.flow_to_document(flow)))
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="globflow",
        description="Build, analyze, compare, and export finite acyclic flows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build a flow and print its summary")
    p_build.add_argument("document")
    p_build.set_defaults(func=cmd_build)

    p_an = sub.add_parser("analyze", help="invariants plus reachability report")
    p_an.add_argument("document")
    p_an.add_argument("--init", action="append", metavar="STATE",
                      help="designated initial state (repeatable)")
    p_an.add_argument("--final", action="append", metavar="STATE",
                      help="designated final state (repeatable)")
    p_an.set_defaults(func=cmd_analyze)

    p_cmp = sub.add_parser("compare", help="isomorphism or subdivision equivalence")
    p_cmp.add_argument("left")
    p_cmp.add_argument("right")
    p_cmp.add_argument("--mode", choices=["iso", "t-homotopy"], default="iso")
    p_cmp.set_defaults(func=cmd_compare)

    p_exp = sub.add_parser("export", help="underlying graph as DOT, or flow as JSON")
    p_exp.add_argument("document")
    p_exp.add_argument("--format", choices=["dot", "json"], default="dot")
    p_exp.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FlowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
