"""
This script builds the command-line application and includes one router per command
family.

Contents:
- Theory router: theory show | validate | export
- Group router: auto-group
- Phase router: phase-group, verify-theorem
- Interference router: interfere, conjugates
- Qubit router: qubit mzi | effects | tprob

Every leaf command accepts --format {text,csv,json} and --verbose. Errors raised by the
engines are printed as "error: <detail>" on stderr and mapped to their exit codes:
0 success, 2 usage, 3 parse or validation, 4 search budget.
"""

import argparse
import logging
import sys
from typing import List, Optional

from src.constants import EXIT_OK, LOG_LEVEL
from src.exceptions import GPTError
from src.routers import (
    group_router as group,
    interference_router as interference,
    phase_router as phase,
    qubit_router as qubit,
    theory_router as theory,
)
from src.schemas import ReportFormat

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=[f.value for f in ReportFormat],
        default=ReportFormat.TEXT.value,
        help="report format",
    )
    common.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")

    parser = argparse.ArgumentParser(
        prog="gpt", description="Exact phase groups and interference in probabilistic theories."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for router in (theory, group, phase, interference, qubit):
        router.register(subparsers, common)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command.

    Parameters:
        argv (Optional[List[str]]): Arguments without the program name; sys.argv when None.

    Returns:
        int: The process exit code.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else LOG_LEVEL,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        output = args.handler(args)
    except GPTError as err:
        logger.debug("command failed", exc_info=True)
        print(f"error: {err.detail}", file=sys.stderr)
        return err.exit_code
    if output:
        print(output)
    return getattr(args, "exit_code", EXIT_OK)


if __name__ == "__main__":
    sys.exit(main())
