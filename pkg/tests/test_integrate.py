import math

import numpy as np
import pytest

from src.constants import PROBABILITY_CEILING, VOLUME_TO_PROBABILITY
from src.geometry import admissible_area
from src.integrate import (
    BoundInterval,
    Method,
    ProbabilityResult,
    band_area,
    band_integral,
    mu_bounds,
    mu_integral_bounds,
    mu_N,
    probability,
    probability_quadrature,
    vol_failure_region,
    vol_midpoint_estimate,
)
from src.integrate import riemann

HALF_PI = math.pi / 2
REPORTED = 0.7867


def test_bound_interval_validation():
    with pytest.raises(ValueError):
        BoundInterval(1.0, 0.0)
    box = BoundInterval(0.25, 0.75)
    assert box.width == 0.5 and box.midpoint == 0.5
    assert box.contains(0.25) and not box.contains(0.8)
    assert BoundInterval(0.3, 0.4).within(box)
    assert box.overlaps(BoundInterval(0.7, 0.9))


def test_probability_result_validation():
    with pytest.raises(ValueError):
        ProbabilityResult(1.5, None, Method.QUADRATURE, 8, 8)
    with pytest.raises(ValueError):
        ProbabilityResult(0.5, BoundInterval(0.6, 0.7), Method.RIEMANN_CERTIFIED, 8, 8)


# ------------------------------------------------------------
# mu_N
# ------------------------------------------------------------

@pytest.mark.parametrize("gamma", [1.0, HALF_PI, 1.7])
def test_mu_domain(gamma):
    with pytest.raises(ValueError):
        mu_N(gamma, 64)


def test_mu_resolution_checked():
    with pytest.raises(ValueError):
        mu_N(1.2, 1)


def test_mu_vanishes_at_gamma_crit(gamma_c):
    box = mu_N(gamma_c + 1e-6, 256)
    assert 0.0 <= box.lo <= box.hi < 1e-4


def test_mu_continuous_across_bb(bb):
    below = mu_N(bb - 1e-6, 1024)
    above = mu_N(bb + 1e-6, 1024)
    assert below.overlaps(above)


def test_regime_formulas_agree_at_bb(bb):
    gammas = np.array([bb])
    one = BoundInterval(*(float(x[0]) for x in riemann._mu_regime_one(gammas, 1024)))
    two = BoundInterval(*(float(x[0]) for x in riemann._mu_regime_two(gammas, 1024)))
    assert one.overlaps(two)


def test_mu_tends_to_full_triangle():
    gamma = HALF_PI - 1e-4
    box = mu_N(gamma, 1024)
    assert box.midpoint == pytest.approx((math.pi - gamma) ** 2 / 2.0, abs=1e-3)


def test_mu_bounded_by_admissible_area(gamma_c):
    gammas = np.linspace(gamma_c + 1e-4, HALF_PI - 1e-4, 60)
    lo, hi = mu_bounds(gammas, 512)
    caps = np.array([admissible_area(g) for g in gammas])
    assert np.all(lo <= hi)
    assert np.all(lo <= caps + 1e-12)


def test_mu_peaks_inside_and_band_sum_increases(gamma_c):
    gammas = np.linspace(gamma_c + 1e-3, HALF_PI - 1e-3, 40)
    lo, hi = mu_bounds(gammas, 2048)
    mid = 0.5 * (lo + hi)
    peak = int(np.argmax(mid))
    assert 0 < peak < len(gammas) - 1
    assert 1.3 < gammas[peak] < 1.5
    assert np.all(np.diff(mid + band_area(gammas)) > 0.0)


def test_band_area_closed_forms():
    assert band_area(0.0) == 0.0
    assert band_area(math.pi) == pytest.approx(math.pi ** 2 / 2.0)
    assert band_integral(0.0, math.pi) == pytest.approx(math.pi ** 3 / 3.0)
    gammas = np.linspace(1.2, 1.5, 20001)
    assert band_integral(1.2, 1.5) == pytest.approx(np.trapezoid(band_area(gammas), gammas), rel=1e-9)


def test_mu_narrows_with_resolution():
    coarse = mu_N(1.3, 128)
    fine = mu_N(1.3, 256)
    assert fine.within(coarse, slack=1e-12)
    assert fine.width < 0.6 * coarse.width


# ------------------------------------------------------------
# Volume and probability
# ------------------------------------------------------------

def test_segment_domain_checked(gamma_c):
    with pytest.raises(ValueError):
        mu_integral_bounds(gamma_c - 1e-3, 1.3, 8, 8)
    with pytest.raises(ValueError):
        mu_integral_bounds(1.3, HALF_PI + 1e-3, 8, 8)
    with pytest.raises(ValueError):
        mu_integral_bounds(1.4, 1.3, 8, 8)


def test_segment_enclosure_holds_where_mu_falls():
    a, b = 1.45, HALF_PI
    box = mu_integral_bounds(a, b, 4, 1024, threads=1)
    cells = 400
    mids = a + (b - a) * (np.arange(cells) + 0.5) / cells
    reference = (b - a) / cells * float(np.sum(riemann._mu_midpoints(mids, 1024)))
    # mu falls on this stretch, so a left sum of mu alone would overshoot
    assert reference < (b - a) * mu_N(a, 1024).lo
    assert box.contains(reference)


def test_volume_is_sum_of_segments(gamma_c, bb):
    first = mu_integral_bounds(gamma_c, bb, 32, 32, threads=1)
    second = mu_integral_bounds(bb, HALF_PI, 32, 32, threads=1)
    total = vol_failure_region(32, 32, threads=1)
    assert total.lo == first.lo + second.lo and total.hi == first.hi + second.hi


def test_enclosures_nest():
    boxes = [vol_failure_region(r, r, threads=1) for r in (32, 64, 128)]
    for coarse, fine in zip(boxes, boxes[1:]):
        assert fine.within(coarse, slack=1e-12)
        assert fine.width < 0.6 * coarse.width


def test_outer_refinement_halves_outer_width():
    inner = 8192
    widths = [vol_failure_region(r, inner, threads=1).width for r in (64, 128)]
    assert widths[1] < 0.55 * widths[0]


def test_midpoint_estimate_inside_enclosure():
    box = vol_failure_region(64, 64, threads=1)
    assert box.contains(vol_midpoint_estimate(256, 256, threads=1))


def test_thread_count_does_not_change_bits():
    one = vol_failure_region(128, 128, threads=1)
    many = vol_failure_region(128, 128, threads=4)
    assert one == many


def test_probability_bounds_transform():
    vol = vol_failure_region(64, 64, threads=1)
    result = probability(64, 64, threads=1)
    assert result.method is Method.RIEMANN_CERTIFIED
    assert result.bounds.lo == PROBABILITY_CEILING - VOLUME_TO_PROBABILITY * vol.hi
    assert result.bounds.hi == PROBABILITY_CEILING - VOLUME_TO_PROBABILITY * vol.lo
    assert result.estimate == result.bounds.midpoint
    assert 0.75 <= result.bounds.lo <= result.bounds.hi <= 0.875


def test_quadrature_rejects_few_nodes():
    with pytest.raises(ValueError):
        probability_quadrature(3)


def test_quadrature_converged():
    p32 = probability_quadrature(32)
    p64 = probability_quadrature(64)
    assert p64.bounds is None and p64.method is Method.QUADRATURE
    assert abs(p64.estimate - p32.estimate) < 1e-6
    assert p64.estimate == pytest.approx(REPORTED, abs=5e-4)


def test_quadrature_inside_moderate_enclosure():
    assert probability(256, 256, threads=1).bounds.contains(probability_quadrature(64).estimate)


@pytest.mark.slow
def test_certified_headline_probability():
    result = probability(2048, 2048)
    assert result.bounds.width <= 2e-3
    assert result.bounds.overlaps(BoundInterval(REPORTED - 5e-5, REPORTED + 5e-5))
    assert 0.894 <= result.conditional_estimate <= 0.904
    assert result.bounds.contains(probability_quadrature(64).estimate)


@pytest.mark.slow
def test_quadrature_inside_1024_enclosure():
    assert probability(1024, 1024).bounds.contains(probability_quadrature(64).estimate)
