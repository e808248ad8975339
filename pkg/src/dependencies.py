"""
This module contains the resolvers shared by the command routers. They turn raw
command-line strings into domain objects and raise `UsageError` for anything the user
typed that cannot be resolved.

Functions:
    resolve_theory: Built-in theory name or theory-file path -> Theory.
    resolve_measurement: Measurement label -> Measurement of a theory.
    parse_angle: Radians, accepting expressions such as "pi/2".
    parse_lambdas: Four comma-separated reals for T_phi.
    parse_gauge: Three comma-separated gauge parameters A, B, C.
"""

import logging
import re
from fractions import Fraction
from pathlib import Path
from tokenize import TokenError
from typing import Tuple, Union

from sympy import Float, Integer, Rational, SympifyError, Symbol, pi
from sympy.parsing.sympy_parser import parse_expr

from src.engines.qubit_engine import check_gauge
from src.exceptions import UsageError
from src.models.state import Measurement
from src.models.theory import Theory
from src.repositories.theories_repo import builtin_theory
from src.repositories.theory_file_repo import load_theory
from src.utils.format_utils import parse_rational

logger = logging.getLogger(__name__)

ANGLE_PATTERN = re.compile(r"(?:pi|[0-9.eE+\-*/() ])+")
# parse_expr evaluates generated code against this namespace only.
ANGLE_NAMESPACE = {
    "__builtins__": {},
    "Integer": Integer,
    "Float": Float,
    "Rational": Rational,
    "Symbol": Symbol,
    "pi": pi,
}


def resolve_theory(name_or_path: str) -> Theory:
    """
    Resolve a built-in name, or load a theory file when the argument names a file.

    Raises:
        UnknownTheoryError: If the name is neither a built-in nor an existing file.
        ParseError: If the file cannot be parsed.
        TheoryValidationError: If the file describes an inconsistent theory.
    """
    path = Path(name_or_path)
    if path.suffix == ".json" or path.is_file():
        logger.debug("loading theory file %s", path)
        return load_theory(str(path))
    return builtin_theory(name_or_path)


def resolve_measurement(theory: Theory, label: str) -> Measurement:
    m = theory.find_measurement(label)
    if m is None:
        known = ", ".join(x.label for x in theory.measurements)
        raise UsageError(f"unknown measurement {label!r} for {theory.name}; known: {known}")
    return m


def parse_angle(text: str) -> float:
    """
    Radians as a number or an arithmetic expression in `pi`, such as "-3*pi/4".

    Raises:
        UsageError: If the text holds anything else.
    """
    if not ANGLE_PATTERN.fullmatch(text.strip()):
        raise UsageError(f"cannot read angle {text!r}: only numbers, + - * / ( ) and pi")
    try:
        value = parse_expr(text.strip(), global_dict=dict(ANGLE_NAMESPACE), evaluate=True)
        return float(value)
    except (SympifyError, SyntaxError, TokenError, TypeError, ValueError, NameError) as err:
        raise UsageError(f"cannot read angle {text!r}") from err


def _floats(text: str, count: int, what: str) -> Tuple[float, ...]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise UsageError(f"{what} needs {count} comma-separated values, got {len(parts)}")
    return tuple(parse_angle(p) for p in parts)


def parse_lambdas(text: str) -> Tuple[float, float, float, float]:
    return _floats(text, 4, "--lambda")


def parse_gauge(text: str) -> Tuple[Union[Fraction, float], ...]:
    """
    Three gauge parameters, kept exact when all of them are rational strings.

    Raises:
        UsageError: If the text does not hold three numbers.
        GaugeError: If they do not sum to 1.
    """
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise UsageError(f"--gauge needs 3 comma-separated values, got {len(parts)}")
    try:
        gauge = tuple(parse_rational(p) for p in parts)
    except ValueError:
        gauge = _floats(text, 3, "--gauge")
    check_gauge(gauge)
    return gauge
