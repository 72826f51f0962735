"""Command-line entry point.

Usage:
    qcorrel analyze STATE.json [--format text|json] [--order a-first|b-first]
    qcorrel fixtures [--out DIR] [--alpha ALPHA]

Exit codes: 0 success, 1 unreadable or invalid input, 2 internal
consistency failure.
"""

import argparse
import json
from pathlib import Path
import sys

from .errors import ConvergenceFailure, CrossCheckFailure, DimensionMismatch, SchemaError, ValidationError
from .fixtures import qubit_document, qutrit_document
from .stateio import parse_state_file, run_report

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2


def cmd_analyze(args):
    try:
        spec = parse_state_file(args.file)
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_INPUT
    except SchemaError as exc:
        print(f"error: schema violation at {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValidationError, DimensionMismatch) as exc:
        print(f"error: invalid state: {exc}", file=sys.stderr)
        return EXIT_INPUT
    order = args.order.replace("-", "_")
    try:
        out = run_report(spec, args.format, order)
    except (CrossCheckFailure, ConvergenceFailure) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(out)
    return EXIT_OK


def cmd_fixtures(args):
    if not 0.0 < args.alpha < 1.0:
        print(f"error: --alpha must lie in (0, 1), got {args.alpha}", file=sys.stderr)
        return EXIT_INPUT
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, doc in (("qubit_alpha.json", qubit_document(args.alpha)), ("qutrit.json", qutrit_document())):
        path = out / name
        path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qcorrel",
        description="Measurement statistics and correlation measures for bipartite states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report every correlation measure for a state file")
    p.add_argument("file", help="JSON state file")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--order", choices=["a-first", "b-first"], default="a-first",
                   help="which party measures first (recorded in the report)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("fixtures", help="write the two-qubit and two-qutrit example states")
    p.add_argument("--out", default=".", help="output directory [default: .]")
    p.add_argument("--alpha", type=float, default=0.3, help="weight of |00> in the qubit state")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
