"""
Named transforms with exact coordinates.

All matrices act on six-coordinate vectors laid out as
(p(+1|X), p(-1|X) | p(+1|Y), p(-1|Y) | p(+1|Z), p(-1|Z)).

Functions:
    gbit_hadamard: Beamsplitter on the 3-in 2-out gbit (and the qubit): X and Z blocks
        swapped, Y outcomes swapped.
    spekkens_hadamard: Beamsplitter of the Spekkens bit: X and Z blocks swapped, Y fixed.
    decoherence_map: Replaces X and Y statistics by (1/2, 1/2).
    measurement_setting_map: Sets the X statistics to (1, 0).
    square_phase_elements: The eight symmetries of the square acting on the X/Y block.
    spekkens_phase_labels: Row order of the Spekkens Z phase elements.
    hadamard_for_theory: Registry lookup of the beamsplitter of a built-in theory.
    named_phase_elements: Registry lookup of labelled phase elements of a built-in theory.
"""

import re
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from src.models.theory import Theory
from src.models.transform import Transform, transform_from_images
from src.repositories.theories_repo import matches_builtin

HALF = Fraction(1, 2)

# out[r] = in[SQUARE_IMAGES[k][r]] on the X/Y block; Z block fixed.
SQUARE_IMAGES: Tuple[Tuple[int, int, int, int], ...] = (
    (3, 2, 0, 1),
    (1, 0, 3, 2),
    (2, 3, 1, 0),
    (0, 1, 2, 3),
    (1, 0, 2, 3),
    (3, 2, 1, 0),
    (0, 1, 3, 2),
    (2, 3, 0, 1),
)

SPEKKENS_PHASE_LABELS = ("g1234", "g2134", "g1243", "g2143")


def gbit_hadamard() -> Transform:
    return transform_from_images((4, 5, 3, 2, 0, 1), "T_H")


def spekkens_hadamard() -> Transform:
    return transform_from_images((4, 5, 2, 3, 0, 1), "T_H")


def decoherence_map() -> Transform:
    rows = [
        [HALF, HALF, 0, 0, 0, 0],
        [HALF, HALF, 0, 0, 0, 0],
        [0, 0, HALF, HALF, 0, 0],
        [0, 0, HALF, HALF, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ]
    return Transform.of(rows, reversible=False, label="D")


def measurement_setting_map() -> Transform:
    rows = [
        [1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ]
    return Transform.of(rows, reversible=False, label="P")


def square_phase_elements() -> List[Transform]:
    """g1 is the quarter turn, g1..g4 its powers, g5..g8 the flips g1^(k-5) g5."""
    return [
        transform_from_images(images + (4, 5), f"g{k}")
        for k, images in enumerate(SQUARE_IMAGES, start=1)
    ]


def spekkens_phase_labels() -> Tuple[str, ...]:
    return SPEKKENS_PHASE_LABELS


def _classical_identity(name: str) -> Optional[Transform]:
    match = re.fullmatch(r"classical-(\d+)", name)
    if match is None:
        return None
    return Transform.identity(int(match.group(1)), "T_H")


HADAMARDS: Dict[str, Callable[[], Transform]] = {
    "gbit-3-2": gbit_hadamard,
    "octahedron": gbit_hadamard,
    "spekkens": spekkens_hadamard,
}


NAMED_PHASE_ELEMENTS: Dict[str, Callable[[], List[Transform]]] = {
    "gbit-3-2": square_phase_elements,
    "octahedron": square_phase_elements,
}


def hadamard_for_theory(theory: Theory) -> Optional[Transform]:
    if not matches_builtin(theory):
        return None
    factory = HADAMARDS.get(theory.name)
    if factory is not None:
        return factory()
    return _classical_identity(theory.name)


def named_phase_elements(theory: Theory) -> Optional[List[Transform]]:
    factory = NAMED_PHASE_ELEMENTS.get(theory.name)
    if factory is None or not matches_builtin(theory):
        return None
    return factory()
