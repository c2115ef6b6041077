"""
Command-line front end.

    python -m src.cli prob [--outer-resolution N] [--inner-resolution N]
    python -m src.cli quad [--nodes N]
    python -m src.cli mc [--samples N] [--seed S] [--streams K]
    python -m src.cli frame --gamma G [--degrees] [--points N] --out F.pgm
    python -m src.cli verify [--verify-samples N] [--seed S]
    python -m src.cli constants [--tables N]

prob brackets P with certified bounds; the headline 78.67% is that probability
rounded to four digits, so a fine bracket such as [0.786739, 0.786766] can
exclude 0.7867 itself.

Flags come from the argument dataclasses in src.params through
HfArgumentParser; both --outer-resolution and --outer_resolution spellings work.
JSON goes to stdout, logs to stderr. Exit codes: 0 ok, 1 invalid input or
I/O failure, 2 failed verification.
"""
import dataclasses
import json
import logging
import math
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from transformers import HfArgumentParser

from src.constants import CELL_NEGATIVE, HALF_PI
from src.geometry.criterion import (
    admissible_area,
    bb_bound,
    e_of_gamma,
    e_values,
    gamma_crit,
    gamma_crit_function,
    gamma_crit_mp,
    i_of_gamma,
    i_values,
)
from src.integrate import mu_bounds, probability, probability_quadrature
from src.params import (
    COMMANDS,
    FrameArguments,
    IntegrationArguments,
    RunArguments,
    RunConfig,
    SamplingArguments,
)
from src.raster import frame_digest, negative_fraction, render_frame, write_pgm, write_sidecar
from src.sampling import estimate
from src.utils import setup_logging, to_json_ready
from src.verify import run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VERIFY_FAILED = 2


class UsageError(ValueError):
    pass


class ConfigParser(HfArgumentParser):
    """HfArgumentParser that reports bad flags as UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message)


ARGUMENT_TYPES = (IntegrationArguments, SamplingArguments, FrameArguments, RunArguments)


def build_parser() -> ConfigParser:
    return ConfigParser(
        ARGUMENT_TYPES,
        prog="python -m src.cli {" + ",".join(COMMANDS) + "}",
        description="Strong triangle inequality probability tools.",
    )


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in COMMANDS:
        raise UsageError(f"first argument must be one of {', '.join(COMMANDS)}; got {argv[:1]}")
    command, rest = argv[0], argv[1:]
    parts = build_parser().parse_args_into_dataclasses(args=rest, look_for_args_file=False)
    merged = {}
    for part in parts:
        merged.update(dataclasses.asdict(part))
    return RunConfig(command=command, **merged).validate()


# ------------------------------------------------------------
# Subcommands
# ------------------------------------------------------------

def _run_prob(config: RunConfig) -> Tuple[dict, int]:
    result = probability(config.outer_resolution, config.inner_resolution, threads=config.threads)
    return result.to_dict(), EXIT_OK


def _run_quad(config: RunConfig) -> Tuple[dict, int]:
    result = probability_quadrature(config.nodes)
    out = result.to_dict()
    out["nodes"] = config.nodes
    return out, EXIT_OK


def _run_mc(config: RunConfig) -> Tuple[dict, int]:
    result = estimate(config.samples, config.seed, streams=config.streams, threads=config.threads)
    return result.to_dict(), EXIT_OK


def _run_frame(config: RunConfig) -> Tuple[dict, int]:
    frame = render_frame(config.gamma_radians, config.points, threads=config.threads)
    path = write_pgm(frame, config.output_path)
    out = {
        "path": str(path),
        "sidecar": None,
        "gamma": frame.gamma,
        "points": frame.points,
        "negative_cells": frame.count(CELL_NEGATIVE),
        "negative_fraction": negative_fraction(frame),
        "sha256": frame_digest(frame),
    }
    if config.sidecar:
        out["sidecar"] = str(write_sidecar(frame, path))
    return out, EXIT_OK


def _run_verify(config: RunConfig) -> Tuple[dict, int]:
    report = run_verification(config.verify_samples, config.seed)
    return report.to_dict(), (EXIT_OK if report.ok else EXIT_VERIFY_FAILED)


def constants_table(rows: int, inner_resolution: int) -> List[dict]:
    g_lo = gamma_crit()
    gammas = g_lo + (HALF_PI - g_lo) * (np.arange(rows, dtype=np.float64) / rows)
    mu_lo, mu_hi = np.full(rows, np.nan), np.full(rows, np.nan)
    inside = gammas > g_lo
    mu_lo[inside], mu_hi[inside] = mu_bounds(gammas[inside], inner_resolution)
    table = []
    for k, g in enumerate(gammas):
        table.append(
            {
                "gamma": g,
                "i_gamma": float(i_values(g)),
                "e_gamma": float(e_values(g)),
                "admissible_area": admissible_area(g),
                "mu_lower": None if np.isnan(mu_lo[k]) else mu_lo[k],
                "mu_upper": None if np.isnan(mu_hi[k]) else mu_hi[k],
            }
        )
    return table


def _run_constants(config: RunConfig) -> Tuple[dict, int]:
    g, bb = gamma_crit(), bb_bound()
    out = {
        "gamma_crit": g,
        "gamma_crit_degrees": math.degrees(g),
        "gamma_crit_residual": float(gamma_crit_function(g)),
        "gamma_crit_mp": float(gamma_crit_mp()),
        "bb_bound": bb,
        "bb_bound_degrees": math.degrees(bb),
        "cos_bb": math.cos(bb),
        "sin_bb": math.sin(bb),
        "e_bb": e_of_gamma(bb),
        "i_gamma_crit": i_of_gamma(g),
        "table": constants_table(config.tables, config.inner_resolution),
    }
    return out, EXIT_OK


HANDLERS: Dict[str, Callable[[RunConfig], Tuple[dict, int]]] = {
    "prob": _run_prob,
    "quad": _run_quad,
    "mc": _run_mc,
    "frame": _run_frame,
    "verify": _run_verify,
    "constants": _run_constants,
}


def emit(payload: dict, compact: bool = False) -> None:
    ready = to_json_ready(payload)
    if compact:
        text = json.dumps(ready, ensure_ascii=False, separators=(",", ":"))
    else:
        text = json.dumps(ready, ensure_ascii=False, indent=2)
    sys.stdout.write(text + "\n")
    sys.stdout.flush()


def run(config: RunConfig) -> int:
    try:
        config.validate()
        payload, code = HANDLERS[config.command](config)
    except (ValueError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_INVALID
    emit(payload, compact=config.json)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = parse_config(argv)
    except ValueError as exc:
        setup_logging()
        logger.error("%s", exc)
        return EXIT_INVALID
    setup_logging(config.verbose)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
