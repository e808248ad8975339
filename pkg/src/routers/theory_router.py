"""
This router provides the theory commands.

Commands:
    theory show <theory>:
        Summarise a built-in theory or a theory file.

    theory validate <file>:
        Load a theory file, running every V/H consistency check.

    theory export <theory> [--output FILE]:
        Write the theory-file JSON of a theory.

Controllers:
    - theory_controller.show(name_or_path) -> TheoryReport
    - theory_controller.validate(name_or_path) -> TheoryReport
    - theory_controller.export(name_or_path, output) -> str
"""

from argparse import ArgumentParser, Namespace

from src.controllers import theory_controller
from src.utils.format_utils import render_report


def show(args: Namespace) -> str:
    return render_report(theory_controller.show(args.theory), args.format)


def validate(args: Namespace) -> str:
    """
    Validate a theory.

    Raises:
        ParseError: With line and column for JSON syntax errors.
        TheoryValidationError: If the representations disagree.
    """
    return render_report(theory_controller.validate(args.theory), args.format)


def export(args: Namespace) -> str:
    return theory_controller.export(args.theory, args.output)


def register(subparsers, common: ArgumentParser) -> None:
    parser = subparsers.add_parser("theory", help="inspect, validate and export theories")
    commands = parser.add_subparsers(dest="theory_command", required=True)

    show_parser = commands.add_parser("show", parents=[common], help="summarise a theory")
    show_parser.add_argument("theory", help="built-in name or theory file")
    show_parser.set_defaults(handler=show)

    validate_parser = commands.add_parser("validate", parents=[common], help="validate a theory")
    validate_parser.add_argument("theory", help="built-in name or theory file")
    validate_parser.set_defaults(handler=validate)

    export_parser = commands.add_parser("export", parents=[common], help="write a theory file")
    export_parser.add_argument("theory", help="built-in name or theory file")
    export_parser.add_argument("--output", "-o", help="file to write instead of stdout")
    export_parser.set_defaults(handler=export)
