"""
Seeded identity and property checks over random points of
F = {max(alpha, beta) < gamma < pi/2, alpha + beta + gamma < pi}.
Each check reports how many sampled cases passed and failed and the worst
observed residual.
"""
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List

import numpy as np

from src.constants import DEFAULT_SEED, DEFAULT_VERIFY_SAMPLES, HALF_PI
from src.geometry.criterion import (
    bb_bound,
    critical_quotient,
    e_of_gamma,
    f_values,
    gamma_crit,
    gamma_crit_function,
    gamma_crit_mp,
    i_of_gamma,
    quad_coeff_values,
    plus_root_values,
    z_values,
)
from src.geometry.hyptrig import euclidean_limit_ratio, euclidean_ratio_values, side_lengths, strength_values

logger = logging.getLogger(__name__)

IDENTITY_TOLERANCE = 1e-10
SIGN_THRESHOLD = 1e-8
INVOLUTION_TOLERANCE = 1e-9
INVOLUTION_MARGIN = 0.05
MONOTONE_SEPARATION = 1e-6
ISOSCELES_MARGIN = 1e-4
LIMIT_STEPS = (1e-3, 1e-4, 1e-5)
LIMIT_TOLERANCE = 1e-3
LIMIT_TARGETS = 100
LIMIT_MIN_ANGLE = 0.5


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    worst: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0


@dataclass
class VerifyReport:
    samples: int
    seed: int
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(c.passed for c in self.checks)

    @property
    def failed(self) -> int:
        return sum(c.failed for c in self.checks)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "samples": self.samples,
            "seed": self.seed,
            "passed": self.passed,
            "failed": self.failed,
            "checks": [dict(asdict(c), ok=c.ok) for c in self.checks],
        }


def _tally(name: str, good: np.ndarray, residual: np.ndarray) -> CheckResult:
    good = np.asarray(good, dtype=bool)
    residual = np.asarray(residual, dtype=np.float64)
    worst = float(np.max(residual)) if residual.size else 0.0
    return CheckResult(name, int(np.count_nonzero(good)), int(np.count_nonzero(~good)), worst)


def sample_f_points(rng: np.random.Generator, count: int) -> np.ndarray:
    """`count` points of F, uniform over F, as rows (alpha, beta, gamma)."""
    out = np.empty((0, 3))
    while len(out) < count:
        draw = rng.uniform(0.0, HALF_PI, size=(4 * count, 3))
        al, be, ga = draw[:, 0], draw[:, 1], draw[:, 2]
        keep = (al > 0.0) & (be > 0.0) & (np.maximum(al, be) < ga) & ((al + be) + ga < math.pi)
        out = np.concatenate([out, draw[keep]])
    return out[:count]


# ------------------------------------------------------------
# Checks; each takes (rng, samples) and returns a CheckResult
# ------------------------------------------------------------

def check_area_identity(rng, samples) -> CheckResult:
    """sinh c sinh h = sinh a sinh b sin gamma."""
    al, be, ga = sample_f_points(rng, samples).T
    a, b, c, h = side_lengths(al, be, ga)
    lhs = np.sinh(c) * np.sinh(h)
    rhs = np.sinh(a) * np.sinh(b) * np.sin(ga)
    residual = np.abs(lhs - rhs) / np.abs(rhs)
    return _tally("area_identity", residual < IDENTITY_TOLERANCE, residual)


def check_altitude_identity(rng, samples) -> CheckResult:
    """cosh^2 h = cos^2 beta + ((cos beta cos gamma + cos alpha) / sin gamma)^2."""
    al, be, ga = sample_f_points(rng, samples).T
    h = side_lengths(al, be, ga)[3]
    lhs = np.cosh(h) ** 2
    rhs = np.cos(be) ** 2 + ((np.cos(be) * np.cos(ga) + np.cos(al)) / np.sin(ga)) ** 2
    residual = np.abs(lhs - rhs) / np.abs(rhs)
    return _tally("altitude_identity", residual < IDENTITY_TOLERANCE, residual)


def check_sign_agreement(rng, samples) -> CheckResult:
    """sign(f) = sign(a + b - c - h) wherever |f| > 1e-8."""
    al, be, ga = sample_f_points(rng, samples).T
    f = f_values(al, be, ga)
    s = strength_values(al, be, ga)
    decided = np.abs(f) > SIGN_THRESHOLD
    agree = np.sign(f[decided]) == np.sign(s[decided])
    return _tally("sign_agreement", agree, np.where(agree, 0.0, np.abs(f[decided])))


def check_f_decreasing_in_gamma(rng, samples) -> CheckResult:
    al, be, ga1 = sample_f_points(rng, samples).T
    top = np.minimum(HALF_PI, math.pi - al - be)
    ga2 = np.maximum(al, be) + rng.uniform(0.0, 1.0, size=samples) * (top - np.maximum(al, be))
    low, high = np.minimum(ga1, ga2), np.maximum(ga1, ga2)
    usable = (high - low > MONOTONE_SEPARATION) & (low > np.maximum(al, be)) & (high < top)
    f_low = f_values(al[usable], be[usable], low[usable])
    f_high = f_values(al[usable], be[usable], high[usable])
    return _tally("f_decreasing_in_gamma", f_high < f_low, np.maximum(f_high - f_low, 0.0))


def check_quotient_exceeds_one(rng, samples) -> CheckResult:
    """(cos alpha cos beta + cos gamma) / (cos gamma + 1 - sin gamma) > 1 on F."""
    al, be, ga = sample_f_points(rng, samples).T
    q = critical_quotient(al, be, ga)
    return _tally("quotient_exceeds_one", q > 1.0, np.maximum(1.0 - q, 0.0))


def check_plus_root_negative(rng, samples) -> CheckResult:
    al, _, ga = sample_f_points(rng, samples).T
    qa, qb, qc = quad_coeff_values(al, ga)
    usable = (qb * qb - 4.0 * qa * qc >= 0.0) & (qa != 0.0)
    root = plus_root_values(al[usable], ga[usable])
    return _tally("plus_root_negative", root < 0.0, np.maximum(root, 0.0))


def _unclamped_z(gamma: np.ndarray, alpha: np.ndarray):
    """z and a mask of points where the quadratic root was used as is."""
    qa, qb, qc = quad_coeff_values(alpha, gamma)
    disc = qb * qb - 4.0 * qa * qc
    with np.errstate(divide="ignore", invalid="ignore"):
        sol = (-qb - np.sqrt(np.maximum(disc, 0.0))) / (2.0 * qa)
        raw = np.arccos(np.clip(sol, -1.0, 1.0))
    ok = (disc > 1e-12) & (qa != 0.0) & (np.abs(sol) < 1.0) & (raw < math.pi - alpha - gamma)
    return z_values(gamma, alpha), ok


def check_z_involution(rng, samples) -> CheckResult:
    """z_gamma(z_gamma(alpha)) = alpha where both applications are unclamped."""
    ga = rng.uniform(gamma_crit(), HALF_PI, size=samples)
    al = rng.uniform(INVOLUTION_MARGIN, 1.0, size=samples) * ga
    beta, first = _unclamped_z(ga, al)
    usable = first & (beta > INVOLUTION_MARGIN) & (beta < ga) & (al > INVOLUTION_MARGIN)
    back, second = _unclamped_z(ga[usable], beta[usable])
    residual = np.abs(back - al[usable])[second]
    return _tally("z_involution", residual < INVOLUTION_TOLERANCE, residual)


def check_isosceles_failure(rng, samples) -> CheckResult:
    """f(alpha, alpha, gamma) < 0 for B <= gamma < pi/2."""
    ga = rng.uniform(bb_bound(), HALF_PI - 1e-6, size=samples)
    al = rng.uniform(0.0, 1.0, size=samples) * ((math.pi - ga) / 2.0 - ISOSCELES_MARGIN)
    usable = al > 0.0
    f = f_values(al[usable], al[usable], ga[usable])
    return _tally("isosceles_failure", f < 0.0, np.maximum(f, 0.0))


def euclidean_targets(rng: np.random.Generator, count: int) -> np.ndarray:
    """Euclidean angle triples (sum pi) with every angle >= 0.5."""
    out = np.empty((0, 3))
    while len(out) < count:
        al = rng.uniform(LIMIT_MIN_ANGLE, math.pi - 2 * LIMIT_MIN_ANGLE, size=4 * count)
        be = rng.uniform(LIMIT_MIN_ANGLE, math.pi - 2 * LIMIT_MIN_ANGLE, size=4 * count)
        ga = math.pi - al - be
        keep = ga >= LIMIT_MIN_ANGLE
        out = np.concatenate([out, np.stack([al[keep], be[keep], ga[keep]], axis=1)])
    return out[:count]


def check_infinitesimal_limit(rng, samples) -> CheckResult:
    """
    Shrinking each angle of a Euclidean triple by t, (a + b - c) / h tends to
    the Euclidean ratio: the error shrinks with t and is < 1e-3 at the last step.
    """
    targets = euclidean_targets(rng, LIMIT_TARGETS)
    exact = np.array([euclidean_limit_ratio(*row) for row in targets])
    errors = np.stack(
        [np.abs(euclidean_ratio_values(*(targets - t).T) - exact) for t in LIMIT_STEPS], axis=1
    )
    good = np.all(np.diff(errors, axis=1) < 0.0, axis=1) & (errors[:, -1] < LIMIT_TOLERANCE)
    return _tally("infinitesimal_limit", good, errors[:, -1])


def check_constants(rng, samples) -> CheckResult:
    g, bb = gamma_crit(), bb_bound()
    residuals = np.array(
        [
            abs(float(gamma_crit_function(g))) / 1e-14,
            0.0 if 1.14 < g < 1.16 else np.inf,
            abs(float(gamma_crit_mp(40)) - g) / 1e-14,
            abs(math.cos(bb) - 7.0 / 25.0) / 1e-15,
            abs(e_of_gamma(bb) - (math.pi - bb) / 2.0) / 1e-12,
            i_of_gamma(g) / 1e-5,
        ]
    )
    # residuals are scaled by their tolerances
    return _tally("constants", residuals < 1.0, residuals)


CHECKS: Dict[str, Callable[[np.random.Generator, int], CheckResult]] = {
    "area_identity": check_area_identity,
    "altitude_identity": check_altitude_identity,
    "sign_agreement": check_sign_agreement,
    "f_decreasing_in_gamma": check_f_decreasing_in_gamma,
    "quotient_exceeds_one": check_quotient_exceeds_one,
    "plus_root_negative": check_plus_root_negative,
    "z_involution": check_z_involution,
    "isosceles_failure": check_isosceles_failure,
    "infinitesimal_limit": check_infinitesimal_limit,
    "constants": check_constants,
}


def run_verification(samples: int = DEFAULT_VERIFY_SAMPLES, seed: int = DEFAULT_SEED) -> VerifyReport:
    if samples < 1:
        raise ValueError(f"verify samples must be >= 1, got {samples!r}")
    report = VerifyReport(samples=int(samples), seed=int(seed))
    children = np.random.SeedSequence(seed).spawn(len(CHECKS))
    for child, (name, check) in zip(children, CHECKS.items()):
        result = check(np.random.Generator(np.random.PCG64(child)), int(samples))
        level = logging.INFO if result.ok else logging.ERROR
        logger.log(level, "%s: %d passed, %d failed (worst %.3g)", name, result.passed, result.failed, result.worst)
        report.checks.append(result)
    return report
