"""
Gauss-Legendre evaluation of the nested failure-volume integrals. No error
bound is attached; the certified bracket lives in riemann.py.
"""
import logging
import math
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy.special import roots_legendre

from src.constants import DEFAULT_QUAD_NODES, HALF_PI, PROBABILITY_CEILING, VOLUME_TO_PROBABILITY
from src.geometry.criterion import bb_bound, e_values, gamma_crit, i_values, z_values
from src.integrate.riemann import Method, ProbabilityResult

logger = logging.getLogger(__name__)


@lru_cache(maxsize=16)
def unit_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    x, w = roots_legendre(nodes)
    u = 0.5 * (np.asarray(x, dtype=np.float64) + 1.0)
    u.setflags(write=False)
    w = 0.5 * np.asarray(w, dtype=np.float64)
    w.setflags(write=False)
    return u, w


def _inner_regime_one(gammas: np.ndarray, u: np.ndarray, w: np.ndarray) -> np.ndarray:
    # alpha = i (1 - u^2) straightens z ~ sqrt(i - alpha) at alpha = i
    ends = i_values(gammas)
    alphas = ends[:, None] * (1.0 - u * u)[None, :]
    z = z_values(gammas[:, None], alphas)
    return np.sum(z * (2.0 * u * w)[None, :], axis=1) * ends


def _inner_regime_two(gammas: np.ndarray, u: np.ndarray, w: np.ndarray) -> np.ndarray:
    ends = e_values(gammas)
    z = z_values(gammas[:, None], ends[:, None] * u[None, :])
    integral = np.sum(z * w[None, :], axis=1) * ends
    return 2.0 * integral - ends * ends + (math.pi - gammas - 2.0 * ends) ** 2 / 2.0


def failure_volume_quadrature(nodes: int = DEFAULT_QUAD_NODES) -> float:
    """
    vol(S-bar) with gamma = Gamma + L w^2 on [Gamma, B] and gamma = B + L w^2 on
    [B, pi/2]; both substitutions absorb the square-root onsets of i_gamma and
    e_gamma at the lower ends.
    """
    if int(nodes) != nodes or nodes < 4:
        raise ValueError(f"nodes must be an integer >= 4, got {nodes!r}")
    u, w = unit_rule(int(nodes))
    g_lo, g_bb = gamma_crit(), bb_bound()

    total = 0.0
    for start, stop, inner in ((g_lo, g_bb, _inner_regime_one), (g_bb, HALF_PI, _inner_regime_two)):
        length = stop - start
        gammas = start + length * u * u
        mu = inner(gammas, u, w)
        total += float(np.sum(mu * 2.0 * length * u * w))
    logger.debug("quadrature vol(S-bar) = %.15g with %d nodes", total, nodes)
    return total


def probability_quadrature(nodes: int = DEFAULT_QUAD_NODES) -> ProbabilityResult:
    vol = failure_volume_quadrature(nodes)
    estimate = PROBABILITY_CEILING - VOLUME_TO_PROBABILITY * vol
    logger.info("quadrature probability %.12g (%d nodes)", estimate, nodes)
    return ProbabilityResult(
        estimate=estimate,
        bounds=None,
        method=Method.QUADRATURE,
        outer_resolution=int(nodes),
        inner_resolution=int(nodes),
    )
