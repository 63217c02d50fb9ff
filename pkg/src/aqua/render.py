"""Viewable image production: grayscale index renders, false-color band
composites, and border overlays.

Outputs are binary PGM/PPM by default; PNG goes through Pillow behind
the same contracts.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from . import pnm
from .calibration import ReflectanceStack
from .indices import IndexGrid

DEFAULT_STRETCH = (2.0, 98.0)
DEFAULT_COMPOSITE = (5, 4, 3)
MID_GRAY = 128


def stretch_to_bytes(values: np.ndarray, stretch: tuple[float, float] = DEFAULT_STRETCH) -> np.ndarray:
    """Linear percentile stretch to uint8; a flat stretch interval maps
    everything to mid-gray 128."""
    low, high = stretch
    if not (0.0 <= low < high <= 100.0):
        raise ValueError(f"stretch percentiles {stretch} must satisfy 0 <= low < high <= 100")
    values = np.asarray(values, dtype=np.float64)
    lo = float(np.percentile(values, low))
    hi = float(np.percentile(values, high))
    if hi == lo:
        return np.full(values.shape, MID_GRAY, dtype=np.uint8)
    scaled = (values - lo) / (hi - lo) * 255.0
    return np.clip(np.rint(scaled), 0, 255).astype(np.uint8)


def render_grayscale(grid: IndexGrid | np.ndarray,
                     stretch: tuple[float, float] = DEFAULT_STRETCH) -> np.ndarray:
    values = grid.values if isinstance(grid, IndexGrid) else grid
    return stretch_to_bytes(values, stretch)


def false_color(stack: ReflectanceStack,
                band_order: tuple[int, int, int] = DEFAULT_COMPOSITE,
                stretch: tuple[float, float] = DEFAULT_STRETCH) -> np.ndarray:
    """(h, w, 3) uint8 composite; each channel stretched independently."""
    channels = [stretch_to_bytes(stack.band(b), stretch) for b in band_order]
    return np.stack(channels, axis=-1)


def overlay_border(pixels: np.ndarray, border: np.ndarray,
                   color: tuple[int, int, int] = (255, 0, 0)) -> np.ndarray:
    pixels = np.asarray(pixels, dtype=np.uint8)
    border = np.asarray(border, dtype=bool)
    if pixels.shape[:2] != border.shape:
        raise ValueError(f"image {pixels.shape[:2]} and border {border.shape} dimensions differ")
    out = pixels.copy()
    out[border] = np.asarray(color, dtype=np.uint8)
    return out


def encode_png(array: np.ndarray) -> bytes:
    from PIL import Image

    mode = "L" if array.ndim == 2 else "RGB"
    buf = io.BytesIO()
    Image.fromarray(np.ascontiguousarray(array, dtype=np.uint8), mode).save(buf, format="PNG")
    return buf.getvalue()


def encode_image(array: np.ndarray, format: str) -> bytes:
    format = format.lower()
    if format == "png":
        return encode_png(array)
    if format in ("ppm", "pnm") and array.ndim == 3:
        return pnm.encode_ppm(array)
    if format in ("pgm", "pnm") and array.ndim == 2:
        return pnm.encode_pgm(array)
    raise ValueError(f"cannot encode {array.ndim}-D image as {format!r}")


def write_image(path: str | Path, array: np.ndarray) -> None:
    """Write by extension: .pgm for 2-D, .ppm for RGB, .png for either."""
    path = Path(path)
    suffix = path.suffix.lower().lstrip(".")
    if suffix not in ("pgm", "ppm", "png"):
        raise ValueError(f"unsupported image extension {path.suffix!r}")
    path.write_bytes(encode_image(array, suffix))
