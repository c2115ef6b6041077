import logging
import os
import sys
from typing import Any, Iterable, List, Sequence

import numpy as np

from src.constants import JSON_SIGNIFICANT_DIGITS, THREADS_ENV


def setup_logging(verbose: bool = False) -> None:
    """
    Route library logs to stderr; stdout is reserved for JSON.
    """
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.INFO,
        format="[%(levelname)s] %(name)s: %(message)s",
        force=True,
    )


def resolve_n_jobs(threads: int | None = None) -> int:
    """
    Worker count for joblib. `threads` wins over the STI_THREADS environment
    variable; 0 (or unset) means all cores, which joblib spells -1.
    """
    if threads is None:
        raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
        try:
            threads = int(raw)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be a non-negative integer, got {raw!r}")
    if threads < 0:
        raise ValueError(f"thread count must be >= 0, got {threads}")
    return -1 if threads == 0 else threads


def split_chunks(n: int, chunk: int) -> List[slice]:
    return [slice(start, min(start + chunk, n)) for start in range(0, n, chunk)]


def round_significant(x: float, digits: int = JSON_SIGNIFICANT_DIGITS) -> float:
    if not np.isfinite(x) or x == 0:
        return float(x)
    return float(np.format_float_positional(x, precision=digits, unique=False, fractional=False, trim="-"))


def to_json_ready(obj: Any) -> Any:
    """
    Recursively convert numpy scalars/arrays and floats into plain JSON values,
    rounding floats to 12 significant digits.
    """
    if isinstance(obj, dict):
        return {str(k): to_json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json_ready(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_json_ready(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        if not np.isfinite(obj):
            return None
        return round_significant(float(obj))
    return obj


def uniform_grid(a: float, b: float, n: int) -> np.ndarray:
    """
    n+1 nodes a + (b-a)*k/n with the last node pinned to b. For power-of-two
    n the grids of n and 2n share their common nodes bit for bit.
    """
    grid = a + (b - a) * (np.arange(n + 1, dtype=np.float64) / n)
    grid[-1] = b
    return grid


def as_float_array(values: Iterable[float] | Sequence[float] | float) -> np.ndarray:
    return np.asarray(values, dtype=np.float64)
