"""
Rejection sampler for uniformly random hyperbolic triangles and a direct
Monte Carlo estimate of how often the strong triangle inequality holds.

The generator is numpy's PCG64 seeded with the integer seed; parallel runs
split the seed with SeedSequence.spawn, one child stream per worker.
"""
import logging
import math
from dataclasses import asdict, dataclass
from typing import List, Optional

import numpy as np
from joblib import Parallel, delayed

from src.constants import DEFAULT_SAMPLES, DEFAULT_SEED, HALF_PI, MC_BATCH_PROPOSALS
from src.geometry.hyptrig import AngleTriple, strength_values
from src.utils import resolve_n_jobs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class McEstimate:
    p_hat: float
    std_error: float
    samples: int
    seed: int
    conditional_p_hat: float
    conditional_std_error: float
    conditional_samples: int
    obtuse_samples: int
    obtuse_successes: int
    proposals: int
    streams: int = 1

    @property
    def acceptance_rate(self) -> float:
        return self.samples / self.proposals

    def to_dict(self) -> dict:
        out = asdict(self)
        out["acceptance_rate"] = self.acceptance_rate
        return out


@dataclass
class _Tally:
    accepted: int = 0
    successes: int = 0
    acute: int = 0
    acute_successes: int = 0
    obtuse: int = 0
    obtuse_successes: int = 0
    proposals: int = 0
    gamma_sum: float = 0.0

    def merge(self, other: "_Tally") -> "_Tally":
        return _Tally(*(x + y for x, y in zip(asdict(self).values(), asdict(other).values())))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def spawn_rngs(seed: int, streams: int) -> List[np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(streams)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def _accept_mask(proposals: np.ndarray) -> np.ndarray:
    al, be, ga = proposals[:, 0], proposals[:, 1], proposals[:, 2]
    return (al > 0.0) & (be > 0.0) & (ga > 0.0) & ((al + be) + ga < math.pi)


def sample_triple(rng: np.random.Generator) -> AngleTriple:
    """
    One triple with alpha, beta, gamma i.i.d. uniform on (0, pi) conditioned on
    alpha + beta + gamma < pi.
    """
    while True:
        draw = rng.uniform(0.0, math.pi, size=(1, 3))
        if _accept_mask(draw)[0]:
            return AngleTriple(*(float(x) for x in draw[0]))


def sample_triples(rng: np.random.Generator, count: int):
    """
    `count` accepted triples as an array of shape (count, 3), drawn in batches of
    MC_BATCH_PROPOSALS proposals, plus the number of proposals consumed.
    Proposals of the batch after the last needed acceptance are not counted.
    """
    out = np.empty((count, 3), dtype=np.float64)
    filled, proposals = 0, 0
    while filled < count:
        batch = rng.uniform(0.0, math.pi, size=(MC_BATCH_PROPOSALS, 3))
        mask = _accept_mask(batch)
        need = count - filled
        accepted_idx = np.flatnonzero(mask)
        if len(accepted_idx) >= need:
            proposals += int(accepted_idx[need - 1]) + 1
            accepted_idx = accepted_idx[:need]
        else:
            proposals += MC_BATCH_PROPOSALS
        out[filled : filled + len(accepted_idx)] = batch[accepted_idx]
        filled += len(accepted_idx)
    return out, proposals


def _tally(rng: np.random.Generator, count: int) -> _Tally:
    triples, proposals = sample_triples(rng, count)
    al, be, ga = triples[:, 0], triples[:, 1], triples[:, 2]
    # ties (strength == 0.0) count as failure
    success = strength_values(al, be, ga) > 0.0
    acute = ga < HALF_PI
    return _Tally(
        accepted=count,
        successes=int(np.count_nonzero(success)),
        acute=int(np.count_nonzero(acute)),
        acute_successes=int(np.count_nonzero(success & acute)),
        obtuse=int(np.count_nonzero(~acute)),
        obtuse_successes=int(np.count_nonzero(success & ~acute)),
        proposals=proposals,
        gamma_sum=float(np.sum(ga)),
    )


def _std_error(p: float, n: int) -> float:
    return math.sqrt(p * (1.0 - p) / n) if n > 0 else float("nan")


def estimate(
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    streams: int = 1,
    threads: Optional[int] = None,
) -> McEstimate:
    """
    Fraction of `samples` random triangles satisfying a + b > c + h. With
    streams == 1 the single PCG64(seed) stream is the reference; with more
    streams each spawned child draws its share, and the result depends on
    (samples, seed, streams) but not on the thread count.
    """
    if int(samples) != samples or samples < 1:
        raise ValueError(f"samples must be an integer >= 1, got {samples!r}")
    if streams < 1:
        raise ValueError(f"streams must be >= 1, got {streams!r}")
    samples = int(samples)

    if streams == 1:
        tally = _tally(make_rng(seed), samples)
    else:
        shares = [samples // streams + (1 if k < samples % streams else 0) for k in range(streams)]
        jobs = [(rng, share) for rng, share in zip(spawn_rngs(seed, streams), shares) if share > 0]
        parts = Parallel(n_jobs=resolve_n_jobs(threads), prefer="threads")(
            delayed(_tally)(rng, share) for rng, share in jobs
        )
        tally = _Tally()
        for part in parts:
            tally = tally.merge(part)

    p_hat = tally.successes / tally.accepted
    cond = tally.acute_successes / tally.acute if tally.acute else float("nan")
    logger.info(
        "MC: %d/%d successes (p_hat %.6f), %d proposals, mean gamma %.6f",
        tally.successes,
        tally.accepted,
        p_hat,
        tally.proposals,
        tally.gamma_sum / tally.accepted,
    )
    if tally.obtuse_successes:
        logger.warning("%d samples with gamma >= pi/2 satisfied the inequality", tally.obtuse_successes)
    return McEstimate(
        p_hat=p_hat,
        std_error=_std_error(p_hat, tally.accepted),
        samples=tally.accepted,
        seed=int(seed),
        conditional_p_hat=cond,
        conditional_std_error=_std_error(cond, tally.acute),
        conditional_samples=tally.acute,
        obtuse_samples=tally.obtuse,
        obtuse_successes=tally.obtuse_successes,
        proposals=tally.proposals,
        streams=int(streams),
    )
