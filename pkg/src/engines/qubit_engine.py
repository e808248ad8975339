"""
Qubit closed forms in double precision.

The qubit ball is not a polytope, so it is handled here with numpy instead of by the
exact engines. Probability vectors use the same six-coordinate layout as the gbit.
Gauge parameters A, B, C (with A + B + C = 1) and the T_phi parameters lambda_1..4 only
affect matrices off the normalized subspace.

Functions:
    qubit_effects(alpha, beta, gauge) -> (e, e_perp)
    conversion_pair(gauge) -> (c_mat, c_inv)
    expectation_rotation(alpha, beta) -> 3x3 rotation
    t_prob(alpha, beta, gauge) -> 6x6 matrix
    induced_rotation(t, gauge) -> 3x3 action on expectations
    t_phi(phi, lambdas) -> 6x6 matrix
    mzi_output(phi, lambdas) -> (P(Z=+1), P(Z=-1), final state)
    pure_state(zeta, phi) -> probability vector
    sample_ball_states(rng, n) -> n x 6 array
    ball_phase_dynamics(t, effects, states) -> BallDynamicsReport
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

import numpy as np

from src.constants import SUBSTITUTION_TOLERANCE
from src.exceptions import GaugeError, LayoutError

logger = logging.getLogger(__name__)

Scalar = Union[float, Fraction]

S0 = np.array([0.5, 0.5, 0.5, 0.5, 1.0, 0.0])
T_H = np.array(
    [
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
    ],
    dtype=float,
)
STANDARD_LAMBDAS = (1.0, 1.0, 0.0, 0.0)


@dataclass(frozen=True)
class QubitAngles:
    """
    Angles and gauge parameters of the qubit closed forms.

    Raises:
        GaugeError: If A + B + C differs from 1 by more than the substitution tolerance.
    """

    alpha: float = 0.0
    beta: float = 0.0
    zeta: float = 0.0
    phi: float = 0.0
    gauge: Tuple[Scalar, Scalar, Scalar] = (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    lambdas: Tuple[float, float, float, float] = STANDARD_LAMBDAS

    def __post_init__(self):
        check_gauge(self.gauge)


@dataclass(frozen=True)
class QubitBallSpec:
    """The Bloch ball in probability coordinates: sum_W (p(+1|W) - 1/2)^2 <= 1/4."""

    center: Tuple[float, ...] = (0.5,) * 6
    radius_squared: float = 0.25

    def slack(self, v: Sequence[float]) -> float:
        v = np.asarray(v, dtype=float)
        return self.radius_squared - float(np.sum((v[0::2] - 0.5) ** 2))

    def contains(self, v: Sequence[float], tol: float = SUBSTITUTION_TOLERANCE) -> bool:
        v = np.asarray(v, dtype=float)
        normalized = np.allclose(v[0::2] + v[1::2], 1.0, atol=tol)
        return normalized and self.slack(v) >= -tol


@dataclass(frozen=True)
class BallDynamicsReport:
    preserves_measurement: bool
    preserves_state_space: bool
    worst_slack: float
    worst_state: np.ndarray


def check_gauge(gauge: Sequence[Scalar]) -> None:
    if len(gauge) != 3:
        raise GaugeError(f"gauge needs three parameters A, B, C, got {len(gauge)}")
    total = sum(gauge)
    if isinstance(total, Fraction):
        if total != 1:
            raise GaugeError(f"gauge parameters sum to {total}, expected 1")
    elif abs(total - 1) > SUBSTITUTION_TOLERANCE:
        raise GaugeError(f"gauge parameters sum to {total!r}, expected 1")


def qubit_effects(alpha: float, beta: float, gauge: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    """
    The effect of the outcome |e> = (cos a, e^{ib} sin a) and of its complement.

    Returns:
        Tuple[np.ndarray, np.ndarray]: (e, e_perp), with e + e_perp = (A,A|B,B|C,C).

    Raises:
        GaugeError: If the gauge does not sum to 1.
    """
    check_gauge(gauge)
    a, b, c = (float(x) for x in gauge)
    x = np.cos(beta) * np.sin(alpha)
    y = np.sin(alpha) * np.sin(beta)
    z = np.cos(alpha)
    e = 0.5 * np.array([a + x, a - x, b + y, b - y, c + z, c - z])
    e_perp = 0.5 * np.array([a - x, a + x, b - y, b + y, c - z, c + z])
    return e, e_perp


def conversion_pair(gauge: Sequence[Scalar]):
    """
    Maps between probability vectors and (1, <X>, <Y>, <Z>).

    With Fraction gauges both matrices are numpy object arrays of Fractions, so
    `c_mat @ c_inv` is exactly the identity.

    Returns:
        Tuple[np.ndarray, np.ndarray]: c_mat (4x6) and c_inv (6x4).
    """
    check_gauge(gauge)
    exact = all(isinstance(g, (Fraction, int)) for g in gauge)
    one, half = (Fraction(1), Fraction(1, 2)) if exact else (1.0, 0.5)
    zero = one - one
    a, b, c = gauge if exact else (float(g) for g in gauge)
    c_mat = np.array(
        [
            [a, a, b, b, c, c],
            [one, -one, zero, zero, zero, zero],
            [zero, zero, one, -one, zero, zero],
            [zero, zero, zero, zero, one, -one],
        ],
        dtype=object if exact else float,
    )
    c_inv = np.array(
        [
            [half, half, zero, zero],
            [half, -half, zero, zero],
            [half, zero, half, zero],
            [half, zero, -half, zero],
            [half, zero, zero, half],
            [half, zero, zero, -half],
        ],
        dtype=object if exact else float,
    )
    return c_mat, c_inv


def expectation_rotation(alpha: float, beta: float) -> np.ndarray:
    """Rotation of (<X>, <Y>, <Z>) for the unitary |0> -> |e>, |1> -> |e_perp>."""
    ca, sa, cb, sb = np.cos(alpha), np.sin(alpha), np.cos(beta), np.sin(beta)
    return np.array(
        [
            [-ca * cb, -ca * sb, sa],
            [sb, -cb, 0.0],
            [sa * cb, sa * sb, ca],
        ]
    )


def t_prob(alpha: float, beta: float, gauge: Sequence[float]) -> np.ndarray:
    """
    The unitary |0> -> |e> acting on probability vectors: C^-1 (1 + R) C.

    Rows 5 and 6 are the effects of |e> and |e_perp>.
    """
    c_mat, c_inv = conversion_pair(tuple(float(g) for g in gauge))
    embedded = np.eye(4)
    embedded[1:, 1:] = expectation_rotation(alpha, beta)
    return c_inv @ embedded @ c_mat


def induced_rotation(t: np.ndarray, gauge: Sequence[float]) -> np.ndarray:
    """The action of a 6x6 probability-space matrix on the expectation vector."""
    c_mat, c_inv = conversion_pair(tuple(float(g) for g in gauge))
    return (c_mat @ np.asarray(t, dtype=float) @ c_inv)[1:, 1:]


def t_phi(phi: float, lambdas: Sequence[float] = STANDARD_LAMBDAS) -> np.ndarray:
    """
    Phase shift diag(1, e^{i phi}) on probability vectors, a 4x4 block on X and Y
    plus the identity on Z.
    """
    if len(lambdas) != 4:
        raise LayoutError(f"T_phi needs four lambda parameters, got {len(lambdas)}")
    l1, l2, l3, l4 = (float(x) for x in lambdas)
    c, s = np.cos(phi), np.sin(phi)
    block = 0.5 * np.array(
        [
            [l1 + c, l1 - c, (1 - l1) - s, (1 - l1) + s],
            [l2 - c, l2 + c, (1 - l2) + s, (1 - l2) - s],
            [l3 + s, l3 - s, (1 - l3) + c, (1 - l3) - c],
            [l4 - s, l4 + s, (1 - l4) - c, (1 - l4) + c],
        ]
    )
    out = np.eye(6)
    out[:4, :4] = block
    return out


def mzi_output(phi: float, lambdas: Sequence[float] = STANDARD_LAMBDAS) -> Tuple[float, float, np.ndarray]:
    """
    Mach-Zehnder output T_H T_phi T_H s0 with s0 the Z=+1 state.

    Returns:
        Tuple[float, float, np.ndarray]: P(Z=+1), P(Z=-1) and the full final state.
    """
    final = T_H @ t_phi(phi, lambdas) @ T_H @ S0
    logger.debug("mzi phi=%s final state %s", phi, final)
    return float(final[4]), float(final[5]), final


def pure_state(zeta: float, phi: float) -> np.ndarray:
    expectations = np.array([np.sin(zeta) * np.cos(phi), np.sin(zeta) * np.sin(phi), np.cos(zeta)])
    out = np.empty(6)
    out[0::2] = (1 + expectations) / 2
    out[1::2] = (1 - expectations) / 2
    return out


def sample_ball_states(rng: np.random.Generator, n: int) -> np.ndarray:
    """n states drawn uniformly from the ball, as rows."""
    directions = rng.normal(size=(n, 3))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = rng.random(n) ** (1 / 3)
    expectations = directions * radii[:, None]
    out = np.empty((n, 6))
    out[:, 0::2] = (1 + expectations) / 2
    out[:, 1::2] = (1 - expectations) / 2
    return out


def ball_phase_dynamics(
    t: np.ndarray, effects: Sequence[np.ndarray], states: np.ndarray, tol: float = SUBSTITUTION_TOLERANCE
) -> BallDynamicsReport:
    """Check a map on sampled ball states: statistics of `effects` frozen, image inside the ball."""
    t = np.asarray(t, dtype=float)
    images = states @ t.T
    effect_matrix = np.asarray(effects, dtype=float)
    preserves = bool(np.allclose(images @ effect_matrix.T, states @ effect_matrix.T, atol=tol))
    ball = QubitBallSpec()
    slacks = np.array([ball.slack(v) for v in images])
    worst = int(np.argmin(slacks))
    return BallDynamicsReport(preserves, bool(slacks[worst] >= -tol), float(slacks[worst]), states[worst])
