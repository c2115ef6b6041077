import math
from dataclasses import dataclass, field
from typing import Optional

from src.constants import (
    DEFAULT_INNER_RESOLUTION,
    DEFAULT_OUTER_RESOLUTION,
    DEFAULT_POINTS,
    DEFAULT_QUAD_NODES,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_VERIFY_SAMPLES,
    HALF_PI,
)

COMMANDS = ("prob", "quad", "mc", "frame", "verify", "constants")


@dataclass
class IntegrationArguments:
    outer_resolution: int = field(
        default=DEFAULT_OUTER_RESOLUTION,
        metadata={"help": "Riemann intervals per gamma regime ([Gamma, B] and [B, pi/2])."},
    )
    inner_resolution: int = field(
        default=DEFAULT_INNER_RESOLUTION,
        metadata={"help": "Riemann intervals of the inner alpha integral."},
    )
    nodes: int = field(
        default=DEFAULT_QUAD_NODES,
        metadata={"help": "Gauss-Legendre nodes per nested level (quad)."},
    )


@dataclass
class SamplingArguments:
    samples: int = field(
        default=DEFAULT_SAMPLES,
        metadata={"help": "Accepted triangles for the Monte Carlo estimate."},
    )
    seed: int = field(
        default=DEFAULT_SEED,
        metadata={"help": "Seed of the PCG64 generator (mc, verify)."},
    )
    streams: int = field(
        default=1,
        metadata={"help": "Independent PCG64 streams spawned from the seed (mc). 1 is the reference."},
    )


@dataclass
class FrameArguments:
    gamma: Optional[float] = field(
        default=None,
        metadata={"help": "Angle gamma of the frame, radians unless --degrees."},
    )
    points: int = field(
        default=DEFAULT_POINTS,
        metadata={"help": "Frame side in cells (points x points)."},
    )
    output_path: Optional[str] = field(
        default=None,
        metadata={"help": "Output .pgm path (frame).", "aliases": ["--out", "-o"]},
    )
    degrees: bool = field(
        default=False,
        metadata={"help": "Interpret --gamma in degrees."},
    )
    sidecar: bool = field(
        default=True,
        metadata={"help": "Write the guide-line JSON next to the frame."},
    )


@dataclass
class RunArguments:
    threads: Optional[int] = field(
        default=None,
        metadata={"help": "Worker threads; 0 uses every core. Defaults to $STI_THREADS."},
    )
    verify_samples: int = field(
        default=DEFAULT_VERIFY_SAMPLES,
        metadata={"help": "Random F-points per verify check."},
    )
    tables: int = field(
        default=16,
        metadata={"help": "Rows of the gamma table printed by constants."},
    )
    json: bool = field(
        default=False,
        metadata={"help": "Print compact single-line JSON instead of indented JSON."},
    )
    verbose: bool = field(
        default=False,
        metadata={"help": "Debug logging on stderr.", "aliases": ["-v"]},
    )


@dataclass
class RunConfig(IntegrationArguments, SamplingArguments, FrameArguments, RunArguments):
    command: str = field(
        default="prob",
        metadata={"help": f"One of {', '.join(COMMANDS)}."},
    )

    @property
    def gamma_radians(self) -> Optional[float]:
        if self.gamma is None:
            return None
        return math.radians(self.gamma) if self.degrees else float(self.gamma)

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command: {self.command!r}. Expected one of {COMMANDS}")
        for name in ("outer_resolution", "inner_resolution"):
            if getattr(self, name) < 2:
                raise ValueError(f"{name} must be >= 2, got {getattr(self, name)}")
        if self.nodes < 4:
            raise ValueError(f"nodes must be >= 4, got {self.nodes}")
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if self.streams < 1:
            raise ValueError(f"streams must be >= 1, got {self.streams}")
        if self.points < 16:
            raise ValueError(f"points must be >= 16, got {self.points}")
        if self.verify_samples < 1:
            raise ValueError(f"verify_samples must be >= 1, got {self.verify_samples}")
        if self.tables < 2:
            raise ValueError(f"tables must be >= 2, got {self.tables}")
        if self.threads is not None and self.threads < 0:
            raise ValueError(f"threads must be >= 0, got {self.threads}")
        if self.command == "frame":
            if self.gamma is None:
                raise ValueError("frame needs --gamma")
            if not (0.0 < self.gamma_radians < HALF_PI):
                raise ValueError(f"frame needs 0 < gamma < pi/2 radians, got {self.gamma_radians!r}")
            if not self.output_path:
                raise ValueError("frame needs --out")
        return self
