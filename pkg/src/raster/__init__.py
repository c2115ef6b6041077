from .frames import (
    CellClass,
    CellTag,
    FrameGrid,
    cell_midpoints,
    classify_strength,
    frame_gammas,
    guide_lines,
    negative_fraction,
    pixel_bytes,
    render_frame,
)
from .pgm import encode_pgm, frame_digest, sidecar_path, write_pgm, write_sidecar

__all__ = [
    "CellClass",
    "CellTag",
    "FrameGrid",
    "cell_midpoints",
    "classify_strength",
    "render_frame",
    "negative_fraction",
    "pixel_bytes",
    "guide_lines",
    "frame_gammas",
    "encode_pgm",
    "frame_digest",
    "sidecar_path",
    "write_pgm",
    "write_sidecar",
]
