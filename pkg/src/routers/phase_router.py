"""
This router provides the phase group and theorem commands.

Commands:
    phase-group <theory> <measurement> [--exclude-reflections]:
        Phase group of a measurement, with its maximality check.

    verify-theorem [--theories NAME,NAME,...]:
        Phase dynamics is trivial exactly for the classical theories.

Controllers:
    - phase_controller.phase_group_report(name_or_path, label, exclude_reflections)
    - phase_controller.verify_theorem(names) -> TheoremSuiteReport
"""

from argparse import ArgumentParser, Namespace

from src.constants import EXIT_VALIDATION
from src.controllers import phase_controller
from src.utils.format_utils import render_report


def phase_group(args: Namespace) -> str:
    report = phase_controller.phase_group_report(
        args.theory, args.measurement, args.exclude_reflections
    )
    return render_report(report, args.format)


def verify_theorem(args: Namespace) -> str:
    """
    Run the theorem suite. A failing theory sets a validation exit code on `args`.

    Raises:
        TheoryValidationError: If a theory in the list is inconsistent.
    """
    names = [n.strip() for n in args.theories.split(",")] if args.theories else None
    report = phase_controller.verify_theorem(names)
    if not report.passed:
        args.exit_code = EXIT_VALIDATION
    return render_report(report, args.format)


def register(subparsers, common: ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "phase-group", parents=[common], help="phase group of a measurement"
    )
    parser.add_argument("theory", help="built-in name or theory file")
    parser.add_argument("measurement", help="measurement label, e.g. Z or diagonal")
    parser.add_argument(
        "--exclude-reflections",
        action="store_true",
        help="use the orientation-preserving ambient group",
    )
    parser.set_defaults(handler=phase_group)

    theorem = subparsers.add_parser(
        "verify-theorem", parents=[common], help="check the phase dynamics dichotomy"
    )
    theorem.add_argument(
        "--theories", help="comma-separated built-in names or theory files (default suite if omitted)"
    )
    theorem.set_defaults(handler=verify_theorem)
