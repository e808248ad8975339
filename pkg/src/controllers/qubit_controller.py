"""
This module contains the qubit commands. All numbers are doubles rendered with 12
significant digits.

Functions:
- mzi(phi, lambdas) -> MziReport: Mach-Zehnder fringe.
- effects(alpha, beta, gauge) -> EffectsReport: Effect pair of a basis.
- tprob(alpha, beta, gauge, seed) -> TProbReport: Basis-change matrix with its induced
  rotation and a gauge-independence check on sampled ball states.
"""

import logging
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from src.constants import RANDOM_SEED
from src.engines.qubit_engine import (
    STANDARD_LAMBDAS,
    induced_rotation,
    mzi_output,
    qubit_effects,
    sample_ball_states,
    t_prob,
)
from src.schemas import EffectsReport, MziReport, TProbReport
from src.utils.format_utils import float_str, rational_str

logger = logging.getLogger(__name__)

GAUGE_SAMPLES = 100


def _gauge_strings(gauge: Sequence[Union[Fraction, float]]):
    return tuple(rational_str(g) if isinstance(g, Fraction) else float_str(g) for g in gauge)


def _rows(matrix: np.ndarray):
    return [[float_str(x) for x in row] for row in matrix]


def mzi(phi: float, lambdas: Sequence[float] = STANDARD_LAMBDAS) -> MziReport:
    p_plus, p_minus, final = mzi_output(phi, lambdas)
    return MziReport(
        phi=float_str(phi),
        lambdas=[float_str(x) for x in lambdas],
        p_plus=float_str(p_plus),
        p_minus=float_str(p_minus),
        final_state=[float_str(x) for x in final],
    )


def effects(alpha: float, beta: float, gauge: Sequence[Union[Fraction, float]]) -> EffectsReport:
    e, e_perp = qubit_effects(alpha, beta, gauge)
    return EffectsReport(
        alpha=float_str(alpha),
        beta=float_str(beta),
        gauge=_gauge_strings(gauge),
        effect=[float_str(x) for x in e],
        effect_perp=[float_str(x) for x in e_perp],
    )


def tprob(
    alpha: float, beta: float, gauge: Sequence[Union[Fraction, float]], seed: int = RANDOM_SEED
) -> TProbReport:
    """
    Build T_prob and check it.

    The gauge deviation is the largest difference, over sampled ball states, between the
    images under the given gauge and under a second gauge drawn from the same seed.

    Raises:
        GaugeError: If the gauge does not sum to 1.
    """
    matrix = t_prob(alpha, beta, gauge)
    rotation = induced_rotation(matrix, gauge)
    orthogonality = float(np.max(np.abs(rotation.T @ rotation - np.eye(3))))

    rng = np.random.default_rng(seed)
    a, b = rng.random(2) / 2
    other = t_prob(alpha, beta, (a, b, 1 - a - b))
    states = sample_ball_states(rng, GAUGE_SAMPLES)
    deviation = float(np.max(np.abs(states @ matrix.T - states @ other.T)))
    logger.debug("t_prob gauge deviation %g over %d states", deviation, GAUGE_SAMPLES)

    return TProbReport(
        alpha=float_str(alpha),
        beta=float_str(beta),
        gauge=_gauge_strings(gauge),
        matrix=_rows(matrix),
        rotation=_rows(rotation),
        rotation_determinant=float_str(float(np.linalg.det(rotation))),
        orthogonality_error=float_str(orthogonality),
        gauge_deviation=float_str(deviation),
        seed=seed,
    )
