"""
Linear transforms on stacked probability vectors.

Functions:
    transform_from_images: Build a coordinate-permutation transform.
    compose: Matrix product of two transforms.
    apply_transform: Apply a transform to a state and re-validate the result.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Optional, Sequence, Tuple

from src.exceptions import InvalidStateError, InvalidTransformError, LayoutError
from src.models.state import State
from src.utils.linalg_utils import Number, identity, mat_mul, mat_vec, to_fraction

if TYPE_CHECKING:
    from src.models.theory import Theory

Matrix = Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Transform:
    """
    Transform.

    Attributes:
        matrix (Matrix): Square exact matrix acting on column probability vectors.
        reversible (bool): Whether the transform is claimed to be a symmetry of its theory.
        label (str): Optional display name such as "g1" or "g2134".
    """

    matrix: Matrix
    reversible: bool = True
    label: str = ""

    def __post_init__(self):
        n = len(self.matrix)
        if n == 0 or any(len(row) != n for row in self.matrix):
            raise LayoutError("transform matrix must be square and non-empty")

    @classmethod
    def of(cls, rows: Sequence[Sequence[Number]], reversible: bool = True, label: str = ""):
        return cls(tuple(tuple(to_fraction(x) for x in row) for row in rows), reversible, label)

    @classmethod
    def identity(cls, n: int, label: str = "") -> "Transform":
        return cls.of(identity(n), True, label)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def apply(self, v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        if len(v) != self.dim:
            raise LayoutError(f"vector of dimension {len(v)} for a {self.dim}x{self.dim} transform")
        return tuple(mat_vec(self.matrix, v))

    def source_coordinates(self) -> Optional[Tuple[int, ...]]:
        """For a 0/1 permutation matrix, `out[j] = in[src[j]]`; otherwise None."""
        src = []
        for row in self.matrix:
            ones = [c for c, x in enumerate(row) if x == 1]
            if len(ones) != 1 or any(x not in (0, 1) for x in row):
                return None
            src.append(ones[0])
        if len(set(src)) != len(src):
            return None
        return tuple(src)

    def with_label(self, label: str) -> "Transform":
        return Transform(self.matrix, self.reversible, label)


def transform_from_images(sources: Sequence[int], label: str = "") -> Transform:
    """Coordinate permutation with `out[j] = in[sources[j]]`."""
    n = len(sources)
    rows = [[int(c == sources[r]) for c in range(n)] for r in range(n)]
    return Transform.of(rows, True, label)


def compose(a: Transform, b: Transform) -> Transform:
    """
    Composite transform applying `b` first, then `a`.

    Raises:
        LayoutError: If the dimensions differ.
    """
    if a.dim != b.dim:
        raise LayoutError(f"cannot compose {a.dim}x{a.dim} with {b.dim}x{b.dim}")
    product = mat_mul(a.matrix, b.matrix)
    return Transform(tuple(tuple(r) for r in product), a.reversible and b.reversible)


def apply_transform(t: Transform, s: State, theory: Optional["Theory"] = None) -> State:
    """
    Apply a transform to a state.

    Parameters:
        t (Transform): The transform.
        s (State): The input state.
        theory (Optional[Theory]): When given, the output must also satisfy this
            theory's facet inequalities.

    Returns:
        State: The image state.

    Raises:
        InvalidTransformError: If the image is not a valid state.
    """
    image = t.apply(s.coords)
    if theory is not None and not theory.membership(image):
        raise InvalidTransformError(f"transform {t.label or '<unnamed>'} leaves the state space")
    try:
        return State(image, s.layout)
    except InvalidStateError as err:
        raise InvalidTransformError(
            f"transform {t.label or '<unnamed>'} produced an invalid state: {err.detail}"
        ) from err
