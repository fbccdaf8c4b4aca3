"""Command-line entry point.

Subcommands:
  run-all     run every check; exit 0 iff all pass, 1 on any failure
  check ID    run one named check
  show-class  print a catalog class over its basis
  eval        pair a family functional with a catalog class
Exit code 2 signals a configuration error (bad data dir, unknown name).
"""

from __future__ import annotations

import argparse
import sys

from .checks import check_ids, export_report, run_all, run_check
from .data import Repo
from .errors import TautVerifyError, UnknownNameError
from .rings import TautClass
from .surfaces import evaluate


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tautverify",
        description="Exact-rational verification of intersection-theory computations on moduli of curves.",
    )
    parser.add_argument(
        "--data-dir",
        default=None,
        help="directory of definition files replacing the embedded copies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_all = sub.add_parser("run-all", help="run every registered check")
    p_all.add_argument("--json", metavar="OUT", default=None, help="also write a JSON report")

    p_check = sub.add_parser("check", help="run one named check")
    p_check.add_argument("id", help="check id (see run-all output)")

    p_show = sub.add_parser("show-class", help="print a catalog class")
    p_show.add_argument("name", help="catalog class name")

    p_eval = sub.add_parser("eval", help="pair a family functional with a class")
    p_eval.add_argument("--surface", required=True, help="family id (S1..S3, T1..T3, V1..V4)")
    p_eval.add_argument("--class", dest="class_name", required=True, help="catalog class name")
    return parser


def _format_class(c: TautClass, repo: Repo) -> str:
    space = repo.space(c.space)
    entries = [f"  {lbl:10s} {coeff}" for lbl, coeff in zip(space.basis(c.degree), c.coeffs) if coeff != 0]
    body = "\n".join(entries) if entries else "  0"
    return body


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        repo = Repo(args.data_dir) if args.data_dir else Repo()
    except TautVerifyError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "run-all":
            report = run_all(repo)
            sys.stdout.write(export_report(report, "human"))
            if args.json:
                with open(args.json, "w", encoding="utf-8") as fh:
                    fh.write(export_report(report, "json"))
            return 0 if report.all_passed else 1

        if args.command == "check":
            result = run_check(args.id, repo)
            status = "PASS" if result.passed else "FAIL"
            print(f"[{status}] {result.id}  ({result.micros} us)")
            print(f"       {result.anchor}")
            print(f"       expected: {result.expected}")
            if not result.passed:
                print(f"       actual:   {result.actual}")
            return 0 if result.passed else 1

        if args.command == "show-class":
            c = repo.catalog_class(args.name)
            print(f"{args.name}  (space {c.space}, degree {c.degree})")
            source = repo.catalog_source(args.name)
            if source:
                print(f"  source: {source}")
            print(_format_class(c, repo))
            return 0

        if args.command == "eval":
            functional = repo.functional(args.surface)
            c = repo.catalog_class(args.class_name)
            space = repo.space(c.space)
            value = evaluate(functional, c, space)
            print(f"<{args.surface}, {args.class_name}> = {value}")
            return 0
    except UnknownNameError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except TautVerifyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    raise SystemExit(main())
