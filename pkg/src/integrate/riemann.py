"""
Certified bracketing of vol(S-bar) = int_Gamma^{pi/2} mu(N_gamma) d gamma and of
the probability that the strong triangle inequality holds.

Inner integrals use that z_gamma is decreasing in alpha (left sums over,
right sums under). mu(N_gamma) rises and then falls on [Gamma, pi/2], so the
outer sums bracket the increasing mu(N_gamma) + band_area(gamma) and subtract
the band integral in closed form. Every summed term is padded by a relative
RIEMANN_TERM_PAD so that floating-point accumulation cannot invert a bracket.
"""
import logging
import math
import time
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from joblib import Parallel, delayed

from src.constants import (
    DEFAULT_INNER_RESOLUTION,
    DEFAULT_OUTER_RESOLUTION,
    HALF_PI,
    PROBABILITY_CEILING,
    RIEMANN_TERM_PAD,
    VOLUME_TO_PROBABILITY,
)
from src.geometry.criterion import bb_bound, e_values, gamma_crit, i_values, z_values
from src.utils import resolve_n_jobs, split_chunks, uniform_grid

logger = logging.getLogger(__name__)

# gamma nodes evaluated together; one block is CHUNK x (inner + 1) doubles
GAMMA_CHUNK = 32
# mu(N_gamma) at gamma = pi/2: the whole triangle alpha + beta < pi/2
FULL_SLICE_AREA = (math.pi - HALF_PI) ** 2 / 2.0


class Method(str, Enum):
    RIEMANN_CERTIFIED = "riemann-certified"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class BoundInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise ValueError(f"BoundInterval needs lo <= hi, got [{self.lo!r}, {self.hi!r}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= value <= self.hi + slack

    def within(self, other: "BoundInterval", slack: float = 0.0) -> bool:
        return other.lo - slack <= self.lo and self.hi <= other.hi + slack

    def overlaps(self, other: "BoundInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


@dataclass(frozen=True)
class ProbabilityResult:
    estimate: float
    bounds: Optional[BoundInterval]
    method: Method
    outer_resolution: int
    inner_resolution: int

    def __post_init__(self):
        if not (0.0 <= self.estimate <= 1.0):
            raise ValueError(f"probability estimate outside [0, 1]: {self.estimate!r}")
        if self.bounds is not None and not self.bounds.contains(self.estimate):
            raise ValueError(f"estimate {self.estimate!r} outside its bounds {self.bounds}")

    @property
    def conditional_estimate(self) -> float:
        """Probability given gamma < pi/2 (the slab gamma >= pi/2 always fails)."""
        return self.estimate / PROBABILITY_CEILING

    def to_dict(self) -> dict:
        out = {
            "estimate": self.estimate,
            "lower": None if self.bounds is None else self.bounds.lo,
            "upper": None if self.bounds is None else self.bounds.hi,
            "method": self.method.value,
            "outer_resolution": self.outer_resolution,
            "inner_resolution": self.inner_resolution,
            "conditional_estimate": self.conditional_estimate,
        }
        if self.bounds is not None:
            out["width"] = self.bounds.width
        return out


# ------------------------------------------------------------
# Inner integrals, vectorized over a block of gamma nodes
# ------------------------------------------------------------

def _bracket_decreasing(z: np.ndarray, step: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Rows of z sampled on uniform grids with spacing step; z decreasing in each
    row. Returns (right sum, left sum) = (lower, upper) per row.
    """
    upper = step * np.sum(z[:, :-1], axis=1) * (1.0 + RIEMANN_TERM_PAD)
    lower = step * np.sum(z[:, 1:], axis=1) * (1.0 - RIEMANN_TERM_PAD)
    return lower, upper


def _mu_regime_one(gammas: np.ndarray, inner: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gamma < gamma < B: mu = int_0^{i_gamma} z_gamma."""
    ends = i_values(gammas)
    fractions = np.arange(inner + 1, dtype=np.float64) / inner
    alphas = ends[:, None] * fractions[None, :]
    z = z_values(gammas[:, None], alphas)
    z[:, 0] = ends
    z[:, -1] = 0.0
    return _bracket_decreasing(z, ends / inner)


def _mu_regime_two(gammas: np.ndarray, inner: int) -> Tuple[np.ndarray, np.ndarray]:
    """B <= gamma < pi/2: mu = 2 int_0^{e_gamma} z_gamma - e^2 + (pi - gamma - 2e)^2 / 2."""
    ends = e_values(gammas)
    fractions = np.arange(inner + 1, dtype=np.float64) / inner
    alphas = ends[:, None] * fractions[None, :]
    z = z_values(gammas[:, None], alphas)
    z[:, 0] = np.minimum(i_values(gammas), math.pi - gammas)
    z[:, -1] = math.pi - gammas - ends
    int_lo, int_hi = _bracket_decreasing(z, ends / inner)

    tail = (math.pi - gammas - 2.0 * ends) ** 2 / 2.0 - ends * ends
    slack = RIEMANN_TERM_PAD * (ends * ends + np.abs(tail))
    return 2.0 * int_lo + tail - slack, 2.0 * int_hi + tail + slack


def mu_bounds(gammas: np.ndarray, inner: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Enclosures (lo, hi) of mu(N_gamma) for an array of gamma in (Gamma, pi/2).
    No domain checks.
    """
    gammas = np.atleast_1d(np.asarray(gammas, dtype=np.float64))
    lo = np.empty_like(gammas)
    hi = np.empty_like(gammas)
    first = gammas < bb_bound()
    if np.any(first):
        lo[first], hi[first] = _mu_regime_one(gammas[first], inner)
    if np.any(~first):
        lo[~first], hi[~first] = _mu_regime_two(gammas[~first], inner)
    lo = np.maximum(lo, 0.0)
    return lo, hi


def _mu_midpoints(gammas: np.ndarray, inner: int) -> np.ndarray:
    """Midpoint-rule (uncertified) value of mu(N_gamma)."""
    gammas = np.atleast_1d(np.asarray(gammas, dtype=np.float64))
    out = np.empty_like(gammas)
    mids = (np.arange(inner, dtype=np.float64) + 0.5) / inner
    first = gammas < bb_bound()
    if np.any(first):
        g = gammas[first]
        ends = i_values(g)
        z = z_values(g[:, None], ends[:, None] * mids[None, :])
        out[first] = ends / inner * np.sum(z, axis=1)
    if np.any(~first):
        g = gammas[~first]
        ends = e_values(g)
        z = z_values(g[:, None], ends[:, None] * mids[None, :])
        integral = ends / inner * np.sum(z, axis=1)
        out[~first] = 2.0 * integral - ends * ends + (math.pi - g - 2.0 * ends) ** 2 / 2.0
    return out


def _map_chunks(func, gammas: np.ndarray, inner: int, threads: Optional[int]):
    """
    Evaluate func over blocks of gamma nodes on a thread pool and reassemble
    in node order.
    """
    chunks = split_chunks(len(gammas), GAMMA_CHUNK)
    n_jobs = resolve_n_jobs(threads)
    if n_jobs == 1 or len(chunks) == 1:
        parts = [func(gammas[s], inner) for s in chunks]
    else:
        parts = Parallel(n_jobs=n_jobs, prefer="threads")(delayed(func)(gammas[s], inner) for s in chunks)
    return parts


def _check_resolution(name: str, value: int) -> None:
    if int(value) != value or value < 2:
        raise ValueError(f"{name} must be an integer >= 2, got {value!r}")


# ------------------------------------------------------------
# Public operations
# ------------------------------------------------------------

def mu_N(gamma: float, inner_resolution: int = DEFAULT_INNER_RESOLUTION) -> BoundInterval:
    """
    Enclosure of mu(N_gamma), the area of {(alpha, beta) : strength < 0} at
    fixed gamma, for Gamma < gamma < pi/2.
    """
    if not (gamma_crit() < gamma < HALF_PI):
        raise ValueError(f"mu_N needs Gamma < gamma < pi/2; got gamma={gamma!r}")
    _check_resolution("inner_resolution", inner_resolution)
    lo, hi = mu_bounds(np.array([gamma]), int(inner_resolution))
    return BoundInterval(float(lo[0]), float(hi[0]))


def band_area(gamma):
    """
    Area of the band {pi - gamma <= alpha + beta < pi} in the positive
    quadrant. Points of N_gamma that leave F as gamma grows cross the
    diagonal into this band, so mu(N_gamma) + band_area(gamma) is increasing
    even where mu(N_gamma) itself falls.
    """
    gamma = np.asarray(gamma, dtype=np.float64)
    return (math.pi * math.pi - (math.pi - gamma) ** 2) / 2.0


def band_integral(lower_gamma: float, upper_gamma: float) -> float:
    """Closed form of int band_area over [lower_gamma, upper_gamma]."""
    a, b = float(lower_gamma), float(upper_gamma)
    return math.pi * math.pi * (b - a) / 2.0 - ((math.pi - a) ** 3 - (math.pi - b) ** 3) / 6.0


def mu_integral_bounds(
    lower_gamma: float,
    upper_gamma: float,
    outer_resolution: int = DEFAULT_OUTER_RESOLUTION,
    inner_resolution: int = DEFAULT_INNER_RESOLUTION,
    threads: Optional[int] = None,
) -> BoundInterval:
    """
    Certified enclosure of int mu(N_gamma) d gamma over [lower_gamma, upper_gamma],
    Gamma <= lower_gamma < upper_gamma <= pi/2, on a uniform grid of
    outer_resolution intervals. The monotone integrand is
    m = mu + band_area: left sums of mu.lo + band bound from below, right sums
    of mu.hi + band from above, and the band integral is subtracted exactly.
    mu(Gamma) = 0 and mu(pi/2) = pi^2/8 are used at those endpoints.
    """
    _check_resolution("outer_resolution", outer_resolution)
    _check_resolution("inner_resolution", inner_resolution)
    g_lo = gamma_crit()
    if not (g_lo <= lower_gamma < upper_gamma <= HALF_PI):
        raise ValueError(
            f"mu_integral_bounds needs Gamma <= lower < upper <= pi/2; got [{lower_gamma!r}, {upper_gamma!r}]"
        )
    outer, inner = int(outer_resolution), int(inner_resolution)
    grid = uniform_grid(lower_gamma, upper_gamma, outer)
    at_start = lower_gamma == g_lo
    at_end = upper_gamma == HALF_PI
    evaluated = slice(1 if at_start else 0, outer if at_end else outer + 1)

    mu_lo = np.empty_like(grid)
    mu_hi = np.empty_like(grid)
    parts = _map_chunks(mu_bounds, grid[evaluated], inner, threads)
    mu_lo[evaluated] = np.concatenate([p[0] for p in parts])
    mu_hi[evaluated] = np.concatenate([p[1] for p in parts])
    if at_start:
        mu_lo[0] = mu_hi[0] = 0.0
    if at_end:
        mu_lo[-1] = mu_hi[-1] = FULL_SLICE_AREA

    band = band_area(grid)
    widths = np.diff(grid)
    m_lower = np.sum(widths * (mu_lo[:-1] + band[:-1])) * (1.0 - RIEMANN_TERM_PAD)
    m_upper = np.sum(widths * (mu_hi[1:] + band[1:])) * (1.0 + RIEMANN_TERM_PAD)
    offset = band_integral(lower_gamma, upper_gamma)
    slack = RIEMANN_TERM_PAD * abs(offset)
    return BoundInterval(float(max(m_lower - offset - slack, 0.0)), float(m_upper - offset + slack))


def vol_failure_region(
    outer_resolution: int = DEFAULT_OUTER_RESOLUTION,
    inner_resolution: int = DEFAULT_INNER_RESOLUTION,
    threads: Optional[int] = None,
) -> BoundInterval:
    """
    Certified enclosure of vol(S-bar), the sum of mu_integral_bounds over
    [Gamma, B] and [B, pi/2] with outer_resolution intervals each.
    """
    _check_resolution("outer_resolution", outer_resolution)
    _check_resolution("inner_resolution", inner_resolution)
    outer, inner = int(outer_resolution), int(inner_resolution)
    g_lo, g_bb = gamma_crit(), bb_bound()

    started = time.perf_counter()
    first = mu_integral_bounds(g_lo, g_bb, outer, inner, threads)
    second = mu_integral_bounds(g_bb, HALF_PI, outer, inner, threads)
    logger.debug("outer sums (outer %d, inner %d) in %.2fs", outer, inner, time.perf_counter() - started)

    lower, upper = first.lo + second.lo, first.hi + second.hi
    logger.info("vol(S-bar) in [%.12g, %.12g] (outer %d, inner %d)", lower, upper, outer, inner)
    return BoundInterval(float(lower), float(upper))


def vol_midpoint_estimate(
    outer_resolution: int = DEFAULT_OUTER_RESOLUTION,
    inner_resolution: int = DEFAULT_INNER_RESOLUTION,
    threads: Optional[int] = None,
) -> float:
    """Uncertified midpoint-rule estimate of vol(S-bar) on the same split grid."""
    _check_resolution("outer_resolution", outer_resolution)
    _check_resolution("inner_resolution", inner_resolution)
    outer, inner = int(outer_resolution), int(inner_resolution)
    total = 0.0
    for a, b in ((gamma_crit(), bb_bound()), (bb_bound(), HALF_PI)):
        mids = a + (b - a) * ((np.arange(outer, dtype=np.float64) + 0.5) / outer)
        values = np.concatenate(_map_chunks(_mu_midpoints, mids, inner, threads))
        total += (b - a) / outer * float(np.sum(values))
    return total


def probability_from_volume(vol: BoundInterval) -> BoundInterval:
    """P = 7/8 - (6/pi^3) vol; the volume's upper bound gives the lower bound."""
    return BoundInterval(
        PROBABILITY_CEILING - VOLUME_TO_PROBABILITY * vol.hi,
        PROBABILITY_CEILING - VOLUME_TO_PROBABILITY * vol.lo,
    )


def probability(
    outer_resolution: int = DEFAULT_OUTER_RESOLUTION,
    inner_resolution: int = DEFAULT_INNER_RESOLUTION,
    threads: Optional[int] = None,
) -> ProbabilityResult:
    bounds = probability_from_volume(vol_failure_region(outer_resolution, inner_resolution, threads))
    return ProbabilityResult(
        estimate=bounds.midpoint,
        bounds=bounds,
        method=Method.RIEMANN_CERTIFIED,
        outer_resolution=int(outer_resolution),
        inner_resolution=int(inner_resolution),
    )

