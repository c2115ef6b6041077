from .quadrature import failure_volume_quadrature, probability_quadrature, unit_rule
from .riemann import (
    BoundInterval,
    Method,
    ProbabilityResult,
    band_area,
    band_integral,
    mu_bounds,
    mu_integral_bounds,
    mu_N,
    probability,
    probability_from_volume,
    vol_failure_region,
    vol_midpoint_estimate,
)

__all__ = [
    "BoundInterval",
    "Method",
    "ProbabilityResult",
    "mu_bounds",
    "mu_N",
    "band_area",
    "band_integral",
    "mu_integral_bounds",
    "vol_failure_region",
    "vol_midpoint_estimate",
    "probability_from_volume",
    "probability",
    "probability_quadrature",
    "failure_volume_quadrature",
    "unit_rule",
]
