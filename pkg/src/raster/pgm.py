"""
Binary graymap (P5, maxval 255) output of strength frames, plus a sidecar
JSON with the guide-line segments that are not drawn into the pixels.
"""
import hashlib
import io
import json
import logging
from pathlib import Path
from typing import Union

from PIL import Image

from src.raster.frames import FrameGrid, guide_lines, pixel_bytes
from src.utils import to_json_ready

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def encode_pgm(frame: FrameGrid) -> bytes:
    """P5 bytes: header "P5\\n<w> <h>\\n255\\n" followed by the rows."""
    image = Image.fromarray(pixel_bytes(frame))
    buf = io.BytesIO()
    image.save(buf, format="PPM")
    return buf.getvalue()


def frame_digest(frame: FrameGrid) -> str:
    return hashlib.sha256(encode_pgm(frame)).hexdigest()


def sidecar_path(path: PathLike) -> Path:
    return Path(path).with_suffix(".json")


def sidecar_payload(frame: FrameGrid) -> dict:
    return {"gamma": frame.gamma, "points": frame.points, "guide_lines": guide_lines(frame.gamma)}


def _write_bytes(path: Path, data: bytes, what: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    except OSError as exc:
        raise OSError(f"cannot write {what} to {path}: {exc}") from exc


def write_pgm(frame: FrameGrid, path: PathLike) -> Path:
    path = Path(path)
    _write_bytes(path, encode_pgm(frame), "frame")
    logger.debug("wrote %s", path)
    return path


def write_sidecar(frame: FrameGrid, path: PathLike) -> Path:
    """Write the guide-line JSON next to the frame at `path` (suffix .json)."""
    target = sidecar_path(path)
    text = json.dumps(to_json_ready(sidecar_payload(frame)), ensure_ascii=False, indent=2)
    _write_bytes(target, (text + "\n").encode("utf-8"), "sidecar")
    return target
