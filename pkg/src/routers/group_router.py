"""
This router provides the automorphism group command.

Commands:
    auto-group <theory> [--exclude-reflections]:
        Order, abelianness, identification and generators of the allowed group.

Controllers:
    - group_controller.auto_group(name_or_path, exclude_reflections) -> GroupReport
"""

from argparse import ArgumentParser, Namespace

from src.controllers import group_controller
from src.utils.format_utils import render_report


def auto_group(args: Namespace) -> str:
    """
    Compute the allowed group.

    Raises:
        BudgetExceededError: If the search exceeds GPT_SEARCH_BUDGET.
    """
    report = group_controller.auto_group(args.theory, args.exclude_reflections)
    return render_report(report, args.format)


def register(subparsers, common: ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "auto-group", parents=[common], help="automorphism group of a theory"
    )
    parser.add_argument("theory", help="built-in name or theory file")
    parser.add_argument(
        "--exclude-reflections",
        action="store_true",
        help="keep only orientation-preserving automorphisms",
    )
    parser.set_defaults(handler=auto_group)
