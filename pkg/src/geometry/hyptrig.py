"""
Hyperbolic triangles (curvature -1) determined by their three angles.

Sides a, b, c are opposite alpha, beta, gamma; h is the altitude to c. The
"strength" of a labelled triangle is a + b - c - h, positive exactly when the
strong triangle inequality a + b > c + h holds.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AngleTriple:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            value = getattr(self, name)
            if not (0.0 < value < math.pi):
                raise ValueError(f"{name} must lie in (0, pi), got {value!r}")
        if not (self.alpha + self.beta + self.gamma < math.pi):
            raise ValueError(
                f"angle sum must be < pi for a hyperbolic triangle, got "
                f"{self.alpha!r} + {self.beta!r} + {self.gamma!r}"
            )

    @property
    def defect(self) -> float:
        return math.pi - self.alpha - self.beta - self.gamma

    def swapped(self) -> "AngleTriple":
        return AngleTriple(self.beta, self.alpha, self.gamma)


@dataclass(frozen=True)
class TriangleSolution:
    a: float
    b: float
    c: float
    h: float
    strength: float


def _cosh_excess(half_sum, opposite, sin_u, sin_v):
    # cosh(side) - 1 = (cos(opp) + cos(u+v)) / (sin u sin v)
    #                = 2 cos(S/2) cos(S/2 - opp) / (sin u sin v)
    t = 2.0 * np.cos(half_sum) * np.cos(half_sum - opposite) / (sin_u * sin_v)
    return np.maximum(t, 0.0)


def _arccosh1p(t):
    return np.log1p(t + np.sqrt(t * (t + 2.0)))


def _sinh_from_excess(t):
    return np.sqrt(t * (t + 2.0))


def side_lengths(alpha, beta, gamma):
    """
    Vectorized sides and altitude (a, b, c, h) for arrays of valid angles.
    No domain checks.
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    beta = np.asarray(beta, dtype=np.float64)
    gamma = np.asarray(gamma, dtype=np.float64)

    half_sum = (alpha + beta + gamma) / 2.0
    sin_al, sin_be, sin_ga = np.sin(alpha), np.sin(beta), np.sin(gamma)

    ta = _cosh_excess(half_sum, alpha, sin_be, sin_ga)
    tb = _cosh_excess(half_sum, beta, sin_al, sin_ga)
    tc = _cosh_excess(half_sum, gamma, sin_al, sin_be)

    a, b, c = _arccosh1p(ta), _arccosh1p(tb), _arccosh1p(tc)
    # sinh h = sinh b sin(alpha) = sinh a sin(beta); the product form is symmetric
    sinh_h = np.sqrt((_sinh_from_excess(ta) * sin_be) * (_sinh_from_excess(tb) * sin_al))
    h = np.arcsinh(sinh_h)
    return a, b, c, h


def strength_values(alpha, beta, gamma):
    a, b, c, h = side_lengths(alpha, beta, gamma)
    return (a + b) - (c + h)


def euclidean_ratio_values(alpha, beta, gamma):
    a, b, c, h = side_lengths(alpha, beta, gamma)
    return (a + b - c) / h


def solve_triangle(angles: AngleTriple) -> TriangleSolution:
    a, b, c, h = (float(x) for x in side_lengths(angles.alpha, angles.beta, angles.gamma))
    return TriangleSolution(a=a, b=b, c=c, h=h, strength=(a + b) - (c + h))


def sti_holds(angles: AngleTriple) -> bool:
    return solve_triangle(angles).strength > 0.0


def euclidean_strength_ratio(angles: AngleTriple) -> float:
    """
    (a + b - c) / h of the hyperbolic triangle. The strong triangle inequality
    holds iff this exceeds 1; for vanishing triangles it tends to the ratio of
    the Euclidean triangle with the limiting angles.
    """
    sol = solve_triangle(angles)
    return (sol.a + sol.b - sol.c) / sol.h


def euclidean_limit_ratio(alpha: float, beta: float, gamma: float) -> float:
    """
    (a + b - c) / h for a Euclidean triangle with the given angles (sum pi).
    By the law of sines the sides scale as sin of the opposite angle and
    h = b sin(alpha).
    """
    if abs(alpha + beta + gamma - math.pi) > 1e-12:
        raise ValueError(f"Euclidean angles must sum to pi, got {alpha + beta + gamma!r}")
    sa, sb, sc = math.sin(alpha), math.sin(beta), math.sin(gamma)
    return (sa + sb - sc) / (sb * sa)


def altitude_identity_residual(angles: AngleTriple) -> float:
    """
    Relative residual of cosh^2 h = cos^2 beta + ((cos beta cos gamma + cos alpha)/sin gamma)^2.
    """
    al, be, ga = angles.alpha, angles.beta, angles.gamma
    h = solve_triangle(angles).h
    lhs = math.cosh(h) ** 2
    rhs = math.cos(be) ** 2 + ((math.cos(be) * math.cos(ga) + math.cos(al)) / math.sin(ga)) ** 2
    return abs(lhs - rhs) / abs(rhs)


def area_identity_residual(angles: AngleTriple) -> float:
    """
    Relative residual of sinh c sinh h = sinh a sinh b sin gamma.
    """
    sol = solve_triangle(angles)
    lhs = math.sinh(sol.c) * math.sinh(sol.h)
    rhs = math.sinh(sol.a) * math.sinh(sol.b) * math.sin(angles.gamma)
    return abs(lhs - rhs) / abs(rhs)
