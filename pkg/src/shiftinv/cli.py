"""Command line entry point.

Exit codes: 0 success, 1 validation or precondition failure, 2 theorem
violation (an implementation bug).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import PreconditionFailed, TheoremViolation, ValidationError
from .harness import parse_request, run


def _add_common(p: argparse.ArgumentParser, needs_input: bool = True):
    p.add_argument(
        "--input",
        "-i",
        required=needs_input,
        help="JSON request document ('-' reads stdin)",
    )
    p.add_argument("--output", "-o", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftinv",
        description="Exact analysis of X + Y ~ X for independent X, Y on finite abelian groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Lambda, A, stabilizer and theorem verdicts")
    _add_common(p)
    p.add_argument("--oracle", action="store_true", help="cross-check fixed points by exact elimination")

    p = sub.add_parser("fixed-points", help="coset basis of all laws nu with nu * mu_Y = nu")
    _add_common(p)
    p.add_argument("--oracle", action="store_true", help="cross-check fixed points by exact elimination")

    p = sub.add_parser("independence", help="check that X + Y and Y are independent")
    _add_common(p)

    p = sub.add_parser("sample", help="Monte Carlo check of the exact law")
    _add_common(p)
    p.add_argument("--n", type=int, required=True, help="number of draws")
    p.add_argument("--seed", type=int, required=True, help="unsigned 64-bit master seed")

    p = sub.add_parser("circle", help="classify a rational-support Y on [0, 1)")
    _add_common(p, needs_input=False)
    p.add_argument("--support", default=None, help='comma separated fractions, e.g. "1/4,1/6"')
    p.add_argument(
        "--nonrational",
        action="store_true",
        help="Y has irrational mass or infinitely many rational atoms",
    )
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _circle_document(args) -> str:
    support = [s.strip() for s in (args.support or "").split(",") if s.strip()]
    return json.dumps(
        {"command": "circle", "circle": {"support": support, "nonrational": bool(args.nonrational)}}
    )


def _overlay(text: str, args) -> str:
    """Fold subcommand flags into the document."""
    doc = json.loads(text)
    if not isinstance(doc, dict):
        return text
    if args.command == "sample":
        doc["sample_count"] = args.n
        doc["seed"] = args.seed
    if getattr(args, "oracle", False):
        doc["oracle"] = True
    if args.command == "circle" and (args.support is not None or args.nonrational):
        doc["circle"] = json.loads(_circle_document(args))["circle"]
    return json.dumps(doc)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input is None:
            text = _circle_document(args)
        else:
            text = _read(args.input)
            try:
                text = _overlay(text, args)
            except json.JSONDecodeError:
                pass  # parse_request reports the location
        request = parse_request(text, command=args.command)
        report = run(request)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValidationError, PreconditionFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TheoremViolation as exc:
        print(f"theorem violation (implementation bug): {exc}", file=sys.stderr)
        return 2
    out = report.to_json() if args.output == "json" else report.to_text()
    sys.stdout.write(out)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
