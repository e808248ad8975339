"""
States, effects and measurements in stacked-probability coordinates.

A `State` is checked for block normalization and coordinate bounds when it is built;
membership in a particular theory's H-rep is checked by `Theory.state`. Effects and
measurements are plain covectors here and are validated against a theory when the
theory registers them.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from src.exceptions import InvalidStateError, LayoutError
from src.models.layout import MeasurementLayout
from src.utils.linalg_utils import Number, dot, vector


@dataclass(frozen=True)
class State:
    coords: Tuple[Fraction, ...]
    layout: MeasurementLayout

    def __post_init__(self):
        self.layout.check_dim(len(self.coords), "state")
        if any(x < 0 or x > 1 for x in self.coords):
            raise InvalidStateError(f"state coordinate outside [0, 1]: {self.describe()}")
        if any(total != 1 for total in self.layout.block_sums(self.coords)):
            raise InvalidStateError(f"state blocks do not sum to 1: {self.describe()}")

    @classmethod
    def of(cls, layout: MeasurementLayout, values: Sequence[Number]) -> "State":
        return cls(tuple(vector(values)), layout)

    def block(self, index: int) -> Tuple[Fraction, ...]:
        return tuple(self.coords[i] for i in self.layout.block_range(index))

    def describe(self) -> str:
        parts = []
        for j in range(self.layout.block_count):
            parts.append(",".join(str(self.coords[i]) for i in self.layout.block_range(j)))
        return "(" + " | ".join(parts) + ")"


@dataclass(frozen=True)
class Effect:
    coords: Tuple[Fraction, ...]
    layout: MeasurementLayout

    def __post_init__(self):
        self.layout.check_dim(len(self.coords), "effect")

    @classmethod
    def of(cls, layout: MeasurementLayout, values: Sequence[Number]) -> "Effect":
        return cls(tuple(vector(values)), layout)


@dataclass(frozen=True)
class Measurement:
    """
    Measurement.

    Attributes:
        label (str): Name used on the command line, e.g. "Z" or "diagonal".
        effects (Tuple[Effect, ...]): One effect per outcome.
        outcomes (Tuple[str, ...]): Outcome labels, parallel to `effects`.
        fiducial_block (Optional[int]): Index of the layout block this measurement
            reads off directly, or None for derived measurements.
    """

    label: str
    effects: Tuple[Effect, ...]
    outcomes: Tuple[str, ...] = ()
    fiducial_block: Optional[int] = None

    def __post_init__(self):
        if not self.effects:
            raise LayoutError(f"measurement {self.label!r} has no effects")
        if not self.outcomes:
            object.__setattr__(self, "outcomes", tuple(str(i) for i in range(len(self.effects))))
        if len(self.outcomes) != len(self.effects):
            raise LayoutError(f"measurement {self.label!r} has mismatched outcome labels")

    @property
    def layout(self) -> MeasurementLayout:
        return self.effects[0].layout

    def statistics(self, v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        return tuple(dot(e.coords, v) for e in self.effects)


def apply_effect(e: Effect, s: State) -> Fraction:
    """
    Probability of the outcome associated with an effect.

    Raises:
        LayoutError: If the effect and the state have different layouts.
    """
    if e.layout != s.layout:
        raise LayoutError("effect and state use different layouts")
    return dot(e.coords, s.coords)
