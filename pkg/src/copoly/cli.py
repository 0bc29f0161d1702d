"""Command line front end: ``copoly run <job.json>`` and ``copoly suite <dir>``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .jobs import EXIT_PARSE, JobResult, run_job


def _unsafe_rings() -> bool:
    return os.environ.get("COPOLY_UNSAFE_RINGS") == "1"


def run_file(path: Path, **overrides) -> JobResult:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        payload = {"error": "ParseError", "message": f"{path}: {exc}"}
        return JobResult(EXIT_PARSE, json.dumps(payload) + "\n")
    return run_job(data, unsafe_rings=_unsafe_rings(), **overrides)


@dataclass
class GoldenOutcome:
    name: str
    passed: bool
    detail: str = ""


def regression_suite(directory: Path) -> list[GoldenOutcome]:
    """Run every ``*.json`` job in ``directory`` against its golden output.

    ``name.json`` is compared byte for byte with ``name.out``; the expected
    exit code is read from ``name.exit`` when present and is 0 otherwise.
    """
    outcomes = []
    for job in sorted(Path(directory).glob("*.json")):
        golden = job.with_suffix(".out")
        if not golden.exists():
            outcomes.append(GoldenOutcome(job.stem, False, "missing golden output"))
            continue
        exit_file = job.with_suffix(".exit")
        expected_exit = int(exit_file.read_text().strip()) if exit_file.exists() else 0
        result = run_file(job)
        if result.exit_code != expected_exit:
            outcomes.append(GoldenOutcome(
                job.stem, False, f"exit {result.exit_code}, expected {expected_exit}"))
        elif result.text != golden.read_text(encoding="utf-8"):
            outcomes.append(GoldenOutcome(job.stem, False, "output differs from golden file"))
        else:
            outcomes.append(GoldenOutcome(job.stem, True))
    return outcomes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="copoly", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    run = sub.add_parser("run", help="run one JSON job file")
    run.add_argument("job", type=Path)
    run.add_argument("--degree", type=int, help="override the job's degree bound")
    run.add_argument("--kmax", type=int, help="override the job's t-order bound")
    run.add_argument("--output", choices=("json", "tsv"), help="output format")

    suite = sub.add_parser("suite", help="run all golden jobs in a directory")
    suite.add_argument("directory", type=Path)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.cmd == "run":
        result = run_file(args.job, degree=args.degree, kmax=args.kmax, output=args.output)
        stream = sys.stdout if result.ok else sys.stderr
        stream.write(result.text)
        return result.exit_code

    outcomes = regression_suite(args.directory)
    for o in outcomes:
        line = f"PASS {o.name}" if o.passed else f"FAIL {o.name}: {o.detail}"
        print(line)
    failed = sum(not o.passed for o in outcomes)
    print(f"{len(outcomes) - failed}/{len(outcomes)} golden jobs passed")
    return 1 if failed or not outcomes else 0


if __name__ == "__main__":
    sys.exit(main())
