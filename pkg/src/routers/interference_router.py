"""
This router provides the interference commands.

Commands:
    interfere <theory> <measurement>:
        Interference table of the measurement's phase group.

    conjugates [theory]:
        Output states of the conjugated square symmetries (3-in 2-out gbit only).

Controllers:
    - interference_controller.interfere(name_or_path, label) -> InterferenceReport
    - interference_controller.conjugates(name_or_path) -> ConjugatesReport
"""

from argparse import ArgumentParser, Namespace

from src.controllers import interference_controller
from src.utils.format_utils import render_report


def interfere(args: Namespace) -> str:
    report = interference_controller.interfere(args.theory, args.measurement)
    return render_report(report, args.format)


def conjugates(args: Namespace) -> str:
    return render_report(interference_controller.conjugates(args.theory), args.format)


def register(subparsers, common: ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "interfere", parents=[common], help="interference table of a phase group"
    )
    parser.add_argument("theory", help="built-in name or theory file")
    parser.add_argument("measurement", help="measurement label")
    parser.set_defaults(handler=interfere)

    conj = subparsers.add_parser(
        "conjugates", parents=[common], help="conjugated square symmetries of gbit-3-2"
    )
    conj.add_argument("theory", nargs="?", default="gbit-3-2")
    conj.set_defaults(handler=conjugates)
