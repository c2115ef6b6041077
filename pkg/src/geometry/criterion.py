"""
Angle-only sign criterion for the strong triangle inequality on

    F = {alpha + beta + gamma < pi, max(alpha, beta) < gamma < pi/2},

the zero curve z_gamma(alpha) of that criterion, its endpoints i_gamma and
e_gamma, and the thresholds Gamma (hyperbolic) and B = arctan(24/7) (Euclidean).
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from scipy.optimize import bisect

from src.constants import GAMMA_CRIT_BRACKET, GAMMA_CRIT_GUESS, HALF_PI

logger = logging.getLogger(__name__)

_EPS = np.finfo(np.float64).eps
# cos(B/2) for B = arctan(24/7)
_COS_HALF_BB = 0.8


@dataclass(frozen=True)
class QuadCoeffs:
    """qa cos^2(beta) + qb cos(beta) + qc = 0 has the same zero set in beta as f."""
    qa: float
    qb: float
    qc: float

    @property
    def discriminant(self) -> float:
        return self.qb * self.qb - 4.0 * self.qa * self.qc

    def evaluate(self, cos_beta: float) -> float:
        return (self.qa * cos_beta + self.qb) * cos_beta + self.qc


@dataclass(frozen=True)
class RegionConstants:
    gamma_crit: float
    bb_bound: float


def gamma_crit_function(gamma):
    return -1.0 - np.cos(gamma) + np.sin(gamma) + np.sin(gamma / 2.0) * np.sin(gamma)


def _solve_gamma_crit() -> float:
    lo, hi = GAMMA_CRIT_BRACKET
    root, info = bisect(
        lambda g: float(gamma_crit_function(g)),
        lo,
        hi,
        xtol=1e-17,
        rtol=4 * _EPS,
        maxiter=200,
        full_output=True,
    )
    if not info.converged:
        raise RuntimeError(f"bisection for Gamma did not converge: {info.flag}")
    logger.debug("Gamma = %.17g after %d iterations", root, info.iterations)
    return float(root)


@lru_cache(maxsize=1)
def region_constants() -> RegionConstants:
    consts = RegionConstants(gamma_crit=_solve_gamma_crit(), bb_bound=math.atan(24.0 / 7.0))
    if not (0.0 < consts.gamma_crit < consts.bb_bound < HALF_PI):
        raise RuntimeError(f"inconsistent region constants: {consts}")
    return consts


def gamma_crit() -> float:
    """Hyperbolic threshold Gamma: root of -1 - cos g + sin g + sin(g/2) sin g in [0, pi/2]."""
    return region_constants().gamma_crit


def bb_bound() -> float:
    """Euclidean threshold B = arctan(24/7)."""
    return region_constants().bb_bound


def gamma_crit_mp(dps: int = 50) -> mpmath.mpf:
    with mpmath.workdps(dps):
        return mpmath.findroot(
            lambda x: -1 - mpmath.cos(x) + mpmath.sin(x) + mpmath.sin(x / 2) * mpmath.sin(x),
            GAMMA_CRIT_GUESS,
        )


# ------------------------------------------------------------
# Vectorized kernels (no domain checks)
# ------------------------------------------------------------

def f_values(alpha, beta, gamma):
    cos_al, cos_be, cos_ga = np.cos(alpha), np.cos(beta), np.cos(gamma)
    sin_ga = np.sin(gamma)
    f1 = (cos_be * cos_ga + cos_al) / sin_ga
    f2 = (cos_al * cos_be + cos_ga) / (cos_ga + 1.0 - sin_ga) - 1.0
    return cos_be * cos_be + f1 * f1 - f2 * f2


def critical_quotient(alpha, beta, gamma):
    """(cos alpha cos beta + cos gamma) / (cos gamma + 1 - sin gamma), > 1 on F."""
    cos_ga = np.cos(gamma)
    return (np.cos(alpha) * np.cos(beta) + cos_ga) / (cos_ga + 1.0 - np.sin(gamma))


def quad_coeff_values(alpha, gamma):
    cos_al, cos_ga, sin_ga = np.cos(alpha), np.cos(gamma), np.sin(gamma)
    denom = cos_ga + 1.0 - sin_ga
    qa = 1.0 / (sin_ga * sin_ga) - (cos_al / denom) ** 2
    qb = cos_al * (cos_ga + 1.0) / (sin_ga * sin_ga)
    qc = (cos_al / sin_ga) ** 2 - ((1.0 - sin_ga) / denom) ** 2
    return qa, qb, qc


def z_values(gamma, alpha):
    """
    Boundary curve beta = z_gamma(alpha) with its guards:
    negative discriminant -> -qb/(2 qa); a solution outside [-1, 1] -> 0;
    otherwise min(arccos(sol), pi - alpha - gamma). A vanishing qa has the
    single root -qc/qb < 0, which lands on the same guards.
    """
    gamma = np.asarray(gamma, dtype=np.float64)
    alpha = np.asarray(alpha, dtype=np.float64)
    qa, qb, qc = quad_coeff_values(alpha, gamma)
    disc = qb * qb - 4.0 * qa * qc
    with np.errstate(divide="ignore", invalid="ignore"):
        root = np.where(disc >= 0.0, (-qb - np.sqrt(np.maximum(disc, 0.0))) / (2.0 * qa), -qb / (2.0 * qa))
        sol = np.where(qa == 0.0, -qc / qb, root)
        inside = (sol >= -1.0) & (sol <= 1.0)
        z = np.where(inside, np.minimum(np.arccos(np.clip(sol, -1.0, 1.0)), math.pi - alpha - gamma), 0.0)
    return z


def plus_root_values(alpha, gamma):
    """
    The discarded root (-qb + sqrt(disc)) / (2 qa), written as -2 qc / (qb + sqrt(disc)).
    NaN where the discriminant is negative.
    """
    qa, qb, qc = quad_coeff_values(alpha, gamma)
    disc = qb * qb - 4.0 * qa * qc
    with np.errstate(invalid="ignore"):
        return np.where(disc >= 0.0, -2.0 * qc / (qb + np.sqrt(np.maximum(disc, 0.0))), np.nan)


def i_values(gamma):
    sin_ga, cos_ga = np.sin(gamma), np.cos(gamma)
    arg = ((sin_ga - 1.0) ** 2 + cos_ga) / (2.0 * sin_ga - cos_ga - 1.0)
    return np.arccos(np.clip(arg, -1.0, 1.0))


def e_values(gamma):
    gamma = np.asarray(gamma, dtype=np.float64)
    # tan(gamma/2) - 3/4 = tan(gamma/2) - tan(B/2), exactly zero at gamma = B
    d = np.sin((gamma - bb_bound()) / 2.0) / (np.cos(gamma / 2.0) * _COS_HALF_BB)
    sol = np.where(d < 0.0, 0.5, 0.5 - np.sqrt(np.maximum(d, 0.0)))
    return 2.0 * np.arctan(sol)


# ------------------------------------------------------------
# Checked scalar operations
# ------------------------------------------------------------

def _check_in_F(alpha: float, beta: float, gamma: float) -> None:
    if not (alpha > 0.0 and beta > 0.0):
        raise ValueError(f"criterion needs positive alpha, beta; got ({alpha!r}, {beta!r})")
    if not (max(alpha, beta) < gamma < HALF_PI):
        raise ValueError(
            f"criterion domain is max(alpha, beta) < gamma < pi/2; got "
            f"alpha={alpha!r}, beta={beta!r}, gamma={gamma!r}"
        )
    if not (alpha + beta + gamma < math.pi):
        raise ValueError(f"angle sum must be < pi; got {alpha + beta + gamma!r}")


def f_value(alpha: float, beta: float, gamma: float) -> float:
    """
    f > 0 iff a + b > c + h, f = 0 iff a + b = c + h, on F only.
    """
    _check_in_F(alpha, beta, gamma)
    return float(f_values(alpha, beta, gamma))


def quad_coeffs(alpha: float, gamma: float) -> QuadCoeffs:
    if not (0.0 < alpha < gamma < HALF_PI):
        raise ValueError(f"quad_coeffs needs 0 < alpha < gamma < pi/2; got alpha={alpha!r}, gamma={gamma!r}")
    qa, qb, qc = quad_coeff_values(alpha, gamma)
    return QuadCoeffs(qa=float(qa), qb=float(qb), qc=float(qc))


def z_of_alpha(gamma: float, alpha: float) -> float:
    if not (gamma_crit() < gamma < HALF_PI):
        raise ValueError(f"z_of_alpha needs Gamma < gamma < pi/2; got gamma={gamma!r}")
    if not (0.0 < alpha < gamma):
        raise ValueError(f"z_of_alpha needs 0 < alpha < gamma; got alpha={alpha!r}, gamma={gamma!r}")
    return float(z_values(gamma, alpha))


def i_of_gamma(gamma: float) -> float:
    """
    i_gamma = lim_{alpha -> 0+} z_gamma(alpha), closed form.
    """
    if not (gamma_crit() <= gamma < HALF_PI):
        raise ValueError(f"i_of_gamma needs Gamma <= gamma < pi/2; got gamma={gamma!r}")
    return float(i_values(gamma))


def e_of_gamma(gamma: float) -> float:
    """
    alpha-coordinate where the zero set meets the Euclidean diagonal
    alpha + beta + gamma = pi (smaller of the two symmetric solutions).
    """
    if not (0.0 < gamma < HALF_PI):
        raise ValueError(f"e_of_gamma needs 0 < gamma < pi/2; got gamma={gamma!r}")
    return float(e_values(gamma))


def admissible_area(gamma: float) -> float:
    """
    Area of the slice {alpha, beta < gamma, alpha + beta < pi - gamma} of F;
    an upper bound for mu(N_gamma). Equals gamma^2 for gamma <= pi/3.
    """
    if not (0.0 < gamma < math.pi):
        raise ValueError(f"admissible_area needs 0 < gamma < pi; got gamma={gamma!r}")
    corner = max(0.0, math.pi - 3.0 * gamma)
    return (math.pi - gamma) ** 2 / 2.0 - max(0.0, math.pi - 2.0 * gamma) ** 2 + corner * corner / 2.0
