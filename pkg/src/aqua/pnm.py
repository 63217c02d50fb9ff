"""Binary PGM (P5) and PPM (P6) readers/writers, maxval 255.

PGM is the fixture format for band rasters and the storage format for
segmentation mask artifacts; PPM is the default output for color renders.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np


def _read_header_tokens(data: bytes, count: int) -> tuple[list[int], int]:
    """Read `count` whitespace-separated numeric tokens after the magic,
    honoring '#' comments. Returns (tokens, offset_past_header)."""
    tokens: list[int] = []
    i = 2  # past magic
    while len(tokens) < count:
        if i >= len(data):
            raise OSError("truncated PNM header")
        c = data[i:i + 1]
        if c == b"#":
            while i < len(data) and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < len(data) and not data[j:j + 1].isspace() and data[j:j + 1] != b"#":
                j += 1
            tok = data[i:j]
            if not tok.isdigit():
                raise OSError(f"bad PNM header token {tok!r}")
            tokens.append(int(tok))
            i = j
    # exactly one whitespace byte separates the header from raster data
    if i >= len(data) or not data[i:i + 1].isspace():
        raise OSError("missing separator after PNM header")
    return tokens, i + 1


def read_pgm(path: str | Path) -> np.ndarray:
    """Decode a binary P5 PGM with maxval 255 into a (h, w) uint8 array."""
    data = Path(path).read_bytes()
    return decode_pgm(data)


def decode_pgm(data: bytes) -> np.ndarray:
    if data[:2] != b"P5":
        raise OSError("not a binary PGM (P5) file")
    (width, height, maxval), offset = _read_header_tokens(data, 3)
    if maxval != 255:
        raise OSError(f"unsupported PGM maxval {maxval} (expected 255)")
    need = width * height
    raster = data[offset:offset + need]
    if len(raster) < need:
        raise OSError("truncated PGM raster")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()


def encode_pgm(grid: np.ndarray) -> bytes:
    grid = np.ascontiguousarray(grid, dtype=np.uint8)
    if grid.ndim != 2:
        raise ValueError("PGM grid must be 2-D")
    h, w = grid.shape
    return b"P5\n%d %d\n255\n" % (w, h) + grid.tobytes()


def write_pgm(path: str | Path, grid: np.ndarray) -> None:
    Path(path).write_bytes(encode_pgm(grid))


def encode_ppm(pixels: np.ndarray) -> bytes:
    pixels = np.ascontiguousarray(pixels, dtype=np.uint8)
    if pixels.ndim != 3 or pixels.shape[2] != 3:
        raise ValueError("PPM pixels must be (h, w, 3)")
    h, w, _ = pixels.shape
    return b"P6\n%d %d\n255\n" % (w, h) + pixels.tobytes()


def write_ppm(path: str | Path, pixels: np.ndarray) -> None:
    Path(path).write_bytes(encode_ppm(pixels))
