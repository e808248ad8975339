"""
This router provides the qubit commands.

Commands:
    qubit mzi --phi PHI [--lambda L1,L2,L3,L4]:
        Mach-Zehnder output probabilities and final state.

    qubit effects --alpha A --beta B [--gauge A,B,C]:
        Effect pair of the basis |e>, |e_perp>.

    qubit tprob --alpha A --beta B [--gauge A,B,C] [--seed N]:
        Basis-change matrix, induced rotation and gauge-independence check.

Angles accept expressions such as "pi/2".

Controllers:
    - qubit_controller.mzi(phi, lambdas) -> MziReport
    - qubit_controller.effects(alpha, beta, gauge) -> EffectsReport
    - qubit_controller.tprob(alpha, beta, gauge, seed) -> TProbReport
"""

from argparse import ArgumentParser, Namespace

from src.constants import RANDOM_SEED
from src.controllers import qubit_controller
from src.dependencies import parse_angle, parse_gauge, parse_lambdas
from src.utils.format_utils import render_report

DEFAULT_GAUGE = "1/3,1/3,1/3"


def mzi(args: Namespace) -> str:
    report = qubit_controller.mzi(parse_angle(args.phi), parse_lambdas(args.lambdas))
    return render_report(report, args.format)


def effects(args: Namespace) -> str:
    report = qubit_controller.effects(
        parse_angle(args.alpha), parse_angle(args.beta), parse_gauge(args.gauge)
    )
    return render_report(report, args.format)


def tprob(args: Namespace) -> str:
    report = qubit_controller.tprob(
        parse_angle(args.alpha), parse_angle(args.beta), parse_gauge(args.gauge), args.seed
    )
    return render_report(report, args.format)


def register(subparsers, common: ArgumentParser) -> None:
    parser = subparsers.add_parser("qubit", help="qubit closed forms")
    commands = parser.add_subparsers(dest="qubit_command", required=True)

    mzi_parser = commands.add_parser("mzi", parents=[common], help="Mach-Zehnder fringe")
    mzi_parser.add_argument("--phi", required=True, help="phase in radians")
    mzi_parser.add_argument(
        "--lambda", dest="lambdas", default="1,1,0,0", help="T_phi parameters l1,l2,l3,l4"
    )
    mzi_parser.set_defaults(handler=mzi)

    for name, handler, help_text in (
        ("effects", effects, "effect pair of a basis"),
        ("tprob", tprob, "basis-change matrix on probabilities"),
    ):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--alpha", required=True, help="basis angle alpha in radians")
        sub.add_argument("--beta", required=True, help="basis angle beta in radians")
        sub.add_argument("--gauge", default=DEFAULT_GAUGE, help="gauge parameters A,B,C")
        sub.add_argument("--seed", type=int, default=RANDOM_SEED, help="sampling seed")
        sub.set_defaults(handler=handler)
