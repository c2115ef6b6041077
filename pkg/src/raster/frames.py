"""
Strength field of the (alpha, beta) square at fixed gamma, classified into
50 bands on [0, 1) plus Negative / Saturated / Infeasible cells.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional

import numpy as np
from joblib import Parallel, delayed

from src.constants import (
    BAND_COUNT,
    BYTE_BAND_BASE,
    BYTE_BAND_STEP,
    BYTE_INFEASIBLE,
    BYTE_NEGATIVE,
    BYTE_SATURATED,
    CELL_INFEASIBLE,
    CELL_NEGATIVE,
    CELL_SATURATED,
    DEFAULT_FRAME_COUNT,
    DEFAULT_POINTS,
    HALF_PI,
    RASTER_ROW_BLOCK,
)
from src.geometry.hyptrig import strength_values
from src.utils import resolve_n_jobs, split_chunks

logger = logging.getLogger(__name__)

MIN_POINTS = 16


class CellTag(str, Enum):
    INFEASIBLE = "infeasible"
    NEGATIVE = "negative"
    BAND = "band"
    SATURATED = "saturated"


@dataclass(frozen=True)
class CellClass:
    tag: CellTag
    band: Optional[int] = None

    @classmethod
    def from_code(cls, code: int) -> "CellClass":
        if code == CELL_INFEASIBLE:
            return cls(CellTag.INFEASIBLE)
        if code == CELL_NEGATIVE:
            return cls(CellTag.NEGATIVE)
        if code == CELL_SATURATED:
            return cls(CellTag.SATURATED)
        if 0 <= code < BAND_COUNT:
            return cls(CellTag.BAND, int(code))
        raise ValueError(f"invalid cell code {code!r}")


@dataclass(frozen=True)
class FrameGrid:
    """
    cells[i, j] holds the class code of the midpoint
    (alpha, beta) = ((j + 0.5) pi / points, (i + 0.5) pi / points):
    -2 infeasible, -1 negative, 0..49 band, 50 saturated.
    """
    gamma: float
    points: int
    cells: np.ndarray

    def cell(self, i: int, j: int) -> CellClass:
        return CellClass.from_code(int(self.cells[i, j]))

    def count(self, code: int) -> int:
        return int(np.count_nonzero(self.cells == code))

    @property
    def cell_area(self) -> float:
        return (math.pi / self.points) ** 2


def cell_midpoints(points: int) -> np.ndarray:
    return (np.arange(points, dtype=np.float64) + 0.5) * (math.pi / points)


def classify_strength(strength: np.ndarray) -> np.ndarray:
    bands = np.floor(strength * BAND_COUNT)
    codes = np.clip(bands, 0, BAND_COUNT - 1).astype(np.int16)
    codes[strength >= 1.0] = CELL_SATURATED
    codes[strength < 0.0] = CELL_NEGATIVE
    return codes


def _render_rows(gamma: float, mids: np.ndarray, rows: slice) -> np.ndarray:
    beta = mids[rows][:, None]
    alpha = mids[None, :]
    al, be = np.broadcast_arrays(alpha, beta)
    codes = np.full(al.shape, CELL_INFEASIBLE, dtype=np.int16)
    # strength is never evaluated off the open simplex
    feasible = (al + be) + gamma < math.pi
    if np.any(feasible):
        codes[feasible] = classify_strength(strength_values(al[feasible], be[feasible], gamma))
    return codes


def render_frame(gamma: float, points: int = DEFAULT_POINTS, threads: Optional[int] = None) -> FrameGrid:
    if not (0.0 < gamma < HALF_PI):
        raise ValueError(f"render_frame needs 0 < gamma < pi/2; got gamma={gamma!r}")
    if int(points) != points or points < MIN_POINTS:
        raise ValueError(f"points must be an integer >= {MIN_POINTS}, got {points!r}")
    points = int(points)
    mids = cell_midpoints(points)
    blocks = split_chunks(points, RASTER_ROW_BLOCK)
    n_jobs = resolve_n_jobs(threads)
    if n_jobs == 1 or len(blocks) == 1:
        parts = [_render_rows(gamma, mids, rows) for rows in blocks]
    else:
        parts = Parallel(n_jobs=n_jobs, prefer="threads")(
            delayed(_render_rows)(gamma, mids, rows) for rows in blocks
        )
    cells = np.concatenate(parts, axis=0)
    cells.setflags(write=False)
    logger.debug("rendered gamma=%.6f at %d x %d", gamma, points, points)
    return FrameGrid(gamma=float(gamma), points=points, cells=cells)


def negative_fraction(frame: FrameGrid) -> float:
    """Raster estimate of mu(N_gamma): Negative cell count times cell area."""
    return frame.count(CELL_NEGATIVE) * frame.cell_area


_BYTE_LUT = np.array(
    [BYTE_INFEASIBLE, BYTE_NEGATIVE]
    + [BYTE_BAND_BASE + BYTE_BAND_STEP * k for k in range(BAND_COUNT)]
    + [BYTE_SATURATED],
    dtype=np.uint8,
)


def pixel_bytes(frame: FrameGrid) -> np.ndarray:
    """Graymap bytes with row 0 at beta near pi (image top)."""
    return _BYTE_LUT[frame.cells[::-1] - CELL_INFEASIBLE]


def guide_lines(gamma: float) -> List[Dict[str, float]]:
    """
    Euclidean diagonal alpha + beta = pi - gamma and the top and right sides of
    the square where gamma is the greatest angle.
    """
    side = min(math.pi - 2.0 * gamma, gamma)
    return [
        {"x1": 0.0, "y1": math.pi - gamma, "x2": math.pi - gamma, "y2": 0.0},
        {"x1": 0.0, "y1": gamma, "x2": side, "y2": gamma},
        {"x1": gamma, "y1": 0.0, "x2": gamma, "y2": side},
    ]


def frame_gammas(number: int = DEFAULT_FRAME_COUNT) -> np.ndarray:
    """
    gamma_i = (i + 1) (pi/2) / number, i = 0..number-1. The last one is pi/2
    itself, outside the domain of render_frame.
    """
    if number < 1:
        raise ValueError(f"number of frames must be >= 1, got {number!r}")
    return (np.arange(number, dtype=np.float64) + 1.0) * (HALF_PI / number)
