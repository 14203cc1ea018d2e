#!/usr/bin/env python3
"""
marked-lattices command line

Commands:
- compactify: boundary limit of a degeneration family
- reduce: exact reduction of an autodual lattice
- compare: equality of two projective length classes
- split: splitting detection and stratum assembly
- verify: seeded property suites

Documents are read as JSON from --in or stdin; reports are written as
deterministic JSON to --out or stdout. Logs go to stderr.
"""

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, NoReturn

from .constants import ExitCode, Suite
from .core import dump_report, error_report, load_config, save_config
from .core.errors import UsageError
from .models import CompactifyInput, CompareInput, ReduceInput, SplitInput, VerifyInput
from .schemas import RunConfig, validate_config
from .tools import compactify, compare, reduce, split, verify

logger = logging.getLogger("marked_lattices")


class _ArgumentParser(argparse.ArgumentParser):
    """Parser that raises instead of exiting, so bad usage maps to exit code 4."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


# ============================================================================
# Parser
# ============================================================================

def _add_io(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--in", dest="input", type=Path, help="Input JSON document (default: stdin)")
    parser.add_argument("--out", type=Path, help="Report path (default: stdout)")
    parser.add_argument("--tolerance", type=float, help="Comparison tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="marked-lattices", description="Marked lattices and their compactifications")
    parser.add_argument("--config", type=Path, help="YAML run configuration; flags override its values")
    parser.add_argument("--write-config", type=Path, metavar="PATH", help="Write a commented configuration file and exit")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")
    commands = parser.add_subparsers(dest="command")

    sub = commands.add_parser("compactify", help="Limit class of a degeneration family")
    _add_io(sub)
    sub.add_argument("--window", type=int, help="Trailing samples in the Cauchy test")
    sub.add_argument("--rtol", type=float, help="Relative Cauchy tolerance")

    sub = commands.add_parser("reduce", help="Reduce an autodual lattice to Z^{2g}")
    _add_io(sub)

    sub = commands.add_parser("compare", help="Compare two length classes")
    _add_io(sub)

    sub = commands.add_parser("split", help="Detect or assemble symplectic splittings")
    _add_io(sub)

    sub = commands.add_parser("verify", help="Run a property suite")
    sub.add_argument("suite", choices=[s.value for s in Suite], help="Suite name")
    sub.add_argument("--out", type=Path, help="Report path (default: stdout)")
    sub.add_argument("--tolerance", type=float, help="Tolerance for floating checks")
    sub.add_argument("--seed", type=int, help="Master seed")
    sub.add_argument("--trials", type=int, help="Trials per sampled property")
    sub.add_argument("--workers", type=int, help="Thread pool size")
    return parser


# ============================================================================
# Commands
# ============================================================================

def _read_document(path: Path | None) -> dict[str, Any]:
    try:
        text = path.read_text(encoding="utf-8") if path else sys.stdin.read()
    except OSError as e:
        raise UsageError(f"cannot read input: {e}") from e
    document = json.loads(text)
    if not isinstance(document, dict):
        raise UsageError("input document must be a JSON object")
    return document


def _option(args: argparse.Namespace, name: str, fallback: Any) -> Any:
    value = getattr(args, name, None)
    return fallback if value is None else value


def _run_compactify(args: argparse.Namespace, config: RunConfig) -> dict[str, Any]:
    params = CompactifyInput(
        document=_read_document(args.input),
        window=_option(args, "window", config.window),
        rtol=_option(args, "rtol", config.rtol),
        tolerance=_option(args, "tolerance", config.tolerance),
    )
    return compactify(params)


def _run_reduce(args: argparse.Namespace, config: RunConfig) -> dict[str, Any]:
    return reduce(ReduceInput(document=_read_document(args.input)))


def _run_compare(args: argparse.Namespace, config: RunConfig) -> dict[str, Any]:
    return compare(
        CompareInput(document=_read_document(args.input), tolerance=_option(args, "tolerance", config.tolerance))
    )


def _run_split(args: argparse.Namespace, config: RunConfig) -> dict[str, Any]:
    return split(
        SplitInput(document=_read_document(args.input), tolerance=_option(args, "tolerance", config.tolerance))
    )


def _run_verify(args: argparse.Namespace, config: RunConfig) -> dict[str, Any]:
    return verify(
        VerifyInput(
            suite=Suite(args.suite),
            seed=_option(args, "seed", config.seed),
            trials=_option(args, "trials", config.trials),
            workers=_option(args, "workers", config.workers),
            tolerance=_option(args, "tolerance", config.tolerance),
        )
    )


COMMANDS: dict[str, Callable[[argparse.Namespace, RunConfig], dict[str, Any]]] = {
    "compactify": _run_compactify,
    "reduce": _run_reduce,
    "compare": _run_compare,
    "split": _run_split,
    "verify": _run_verify,
}


# ============================================================================
# Entry point
# ============================================================================

def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _load_run_config(path: Path | None) -> RunConfig:
    if path is None:
        return RunConfig()
    data = load_config(path)
    if data is None:
        raise UsageError(f"configuration file not found: {path}")
    logger.debug("loaded configuration from %s", path)
    return validate_config(data)


def _emit(report: dict[str, Any], out: Path | None) -> None:
    text = dump_report(report)
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point for the marked-lattices command."""
    command = "marked-lattices"
    out: Path | None = None
    try:
        args = build_parser().parse_args(argv)
        _configure_logging(args.verbose)
        config = _load_run_config(args.config)
        if args.write_config is not None:
            if not save_config(args.write_config, config.model_dump()):
                raise UsageError(f"cannot write configuration to {args.write_config}")
            return int(ExitCode.OK)
        if args.command is None:
            raise UsageError("missing command; choose one of " + ", ".join(COMMANDS))
        command = args.command
        out = args.out
        report = COMMANDS[command](args, config)
    except Exception as e:
        report = error_report(e, command)

    _emit(report, out)
    return int(report.get("exit_code", ExitCode.OK))


if __name__ == "__main__":
    sys.exit(main())
