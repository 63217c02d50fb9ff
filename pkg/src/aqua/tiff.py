"""Baseline TIFF subset decoder and fixture writer.

Supported: 8-bit, one sample per pixel, uncompressed, strip-organized,
either byte order. Anything else fails loudly with TiffFormatError;
grids decode byte-for-byte identical to the file contents.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import TiffFormatError

# tag ids (TIFF 6.0 baseline)
TAG_IMAGE_WIDTH = 256
TAG_IMAGE_LENGTH = 257
TAG_BITS_PER_SAMPLE = 258
TAG_COMPRESSION = 259
TAG_PHOTOMETRIC = 262
TAG_STRIP_OFFSETS = 273
TAG_ORIENTATION = 274
TAG_SAMPLES_PER_PIXEL = 277
TAG_ROWS_PER_STRIP = 278
TAG_STRIP_BYTE_COUNTS = 279
TAG_PLANAR_CONFIG = 284

_TYPE_SIZES = {1: 1, 2: 1, 3: 2, 4: 4, 5: 8, 6: 1, 7: 1, 8: 2, 9: 4, 10: 8, 11: 4, 12: 8}
_INT_TYPES = {1, 3, 4}  # BYTE, SHORT, LONG


def _read_values(data: bytes, endian: str, type_: int, count: int, field: bytes) -> list[int]:
    """Decode an IFD entry's integer values (inline or at offset)."""
    if type_ not in _INT_TYPES:
        raise TiffFormatError(f"unsupported TIFF tag type {type_}")
    size = _TYPE_SIZES[type_]
    total = size * count
    if total <= 4:
        raw = field[:total]
    else:
        (offset,) = struct.unpack(endian + "I", field)
        raw = data[offset:offset + total]
        if len(raw) < total:
            raise OSError("TIFF tag data outside file bounds")
    fmt = {1: "B", 3: "H", 4: "I"}[type_]
    return list(struct.unpack(endian + fmt * count, raw))


def decode_tiff(data: bytes) -> np.ndarray:
    """Decode baseline TIFF bytes into a (h, w) uint8 grid."""
    if len(data) < 8:
        raise TiffFormatError("not a TIFF: file shorter than header")
    if data[:2] == b"II":
        endian = "<"
    elif data[:2] == b"MM":
        endian = ">"
    else:
        raise TiffFormatError("not a TIFF: bad byte-order mark")
    (magic, ifd_offset) = struct.unpack(endian + "HI", data[2:8])
    if magic != 42:
        raise TiffFormatError("not a TIFF: bad magic number")

    if ifd_offset + 2 > len(data):
        raise OSError("TIFF IFD offset outside file bounds")
    (n_entries,) = struct.unpack(endian + "H", data[ifd_offset:ifd_offset + 2])
    tags: dict[int, list[int]] = {}
    for i in range(n_entries):
        p = ifd_offset + 2 + 12 * i
        entry = data[p:p + 12]
        if len(entry) < 12:
            raise OSError("truncated TIFF IFD")
        tag, type_, count = struct.unpack(endian + "HHI", entry[:8])
        if tag in (TAG_IMAGE_WIDTH, TAG_IMAGE_LENGTH, TAG_BITS_PER_SAMPLE,
                   TAG_COMPRESSION, TAG_STRIP_OFFSETS, TAG_ORIENTATION,
                   TAG_SAMPLES_PER_PIXEL, TAG_ROWS_PER_STRIP,
                   TAG_STRIP_BYTE_COUNTS, TAG_PLANAR_CONFIG):
            tags[tag] = _read_values(data, endian, type_, count, entry[8:12])
        # other tags (photometric, resolution, GeoTIFF keys...) are ignored

    def required(tag: int, name: str) -> list[int]:
        if tag not in tags:
            raise TiffFormatError(f"missing required TIFF tag {name}")
        return tags[tag]

    width = required(TAG_IMAGE_WIDTH, "ImageWidth")[0]
    height = required(TAG_IMAGE_LENGTH, "ImageLength")[0]
    compression = tags.get(TAG_COMPRESSION, [1])[0]
    if compression != 1:
        raise TiffFormatError(f"unsupported TIFF feature: Compression={compression}")
    bits = tags.get(TAG_BITS_PER_SAMPLE, [1])
    if bits != [8]:
        raise TiffFormatError(f"unsupported TIFF feature: BitsPerSample={bits}")
    samples = tags.get(TAG_SAMPLES_PER_PIXEL, [1])[0]
    if samples != 1:
        raise TiffFormatError(f"unsupported TIFF feature: SamplesPerPixel={samples}")
    if tags.get(TAG_PLANAR_CONFIG, [1])[0] != 1:
        raise TiffFormatError("unsupported TIFF feature: planar configuration")
    if tags.get(TAG_ORIENTATION, [1])[0] != 1:
        raise TiffFormatError("unsupported TIFF feature: non-default orientation")
    if width <= 0 or height <= 0:
        raise TiffFormatError("bad TIFF dimensions")

    offsets = required(TAG_STRIP_OFFSETS, "StripOffsets")
    counts = required(TAG_STRIP_BYTE_COUNTS, "StripByteCounts")
    rows_per_strip = tags.get(TAG_ROWS_PER_STRIP, [height])[0]
    if len(offsets) != len(counts):
        raise TiffFormatError("StripOffsets/StripByteCounts length mismatch")
    expected_strips = (height + rows_per_strip - 1) // rows_per_strip
    if len(offsets) != expected_strips:
        raise TiffFormatError("strip count does not match RowsPerStrip")

    out = np.empty(width * height, dtype=np.uint8)
    row = 0
    pos = 0
    for offset, count in zip(offsets, counts):
        rows_here = min(rows_per_strip, height - row)
        need = rows_here * width
        if count != need:
            raise OSError(f"truncated TIFF strip at offset {offset}: "
                          f"{count} bytes for {need} pixels")
        chunk = data[offset:offset + count]
        if len(chunk) < count:
            raise OSError("truncated TIFF strip: data past end of file")
        out[pos:pos + need] = np.frombuffer(chunk, dtype=np.uint8)
        row += rows_here
        pos += need
    return out.reshape(height, width)


def read_tiff(path: str | Path) -> np.ndarray:
    return decode_tiff(Path(path).read_bytes())


def encode_tiff(grid: np.ndarray, byte_order: str = "<", rows_per_strip: int | None = None) -> bytes:
    """Encode a (h, w) uint8 grid as a baseline strip TIFF.

    Fixture writer for round-trip tests and synthetic scene packages;
    `byte_order` is "<" (II) or ">" (MM).
    """
    if byte_order not in ("<", ">"):
        raise ValueError("byte_order must be '<' or '>'")
    grid = np.ascontiguousarray(grid, dtype=np.uint8)
    if grid.ndim != 2:
        raise ValueError("TIFF grid must be 2-D")
    h, w = grid.shape
    if rows_per_strip is None:
        rows_per_strip = h
    rows_per_strip = max(1, min(rows_per_strip, h))
    n_strips = (h + rows_per_strip - 1) // rows_per_strip

    e = byte_order
    header = (b"II" if e == "<" else b"MM") + struct.pack(e + "HI", 42, 0)
    body = bytearray(header)

    strip_offsets: list[int] = []
    strip_counts: list[int] = []
    for s in range(n_strips):
        r0 = s * rows_per_strip
        r1 = min(r0 + rows_per_strip, h)
        raw = grid[r0:r1].tobytes()
        strip_offsets.append(len(body))
        strip_counts.append(len(raw))
        body += raw

    # IFD goes after the pixel data; long value arrays after the IFD
    entries: list[tuple[int, int, int, bytes | int]] = []  # (tag, type, count, value)

    def short(v: int) -> tuple[int, int, bytes]:
        return 3, 1, struct.pack(e + "HH", v, 0)

    def long_(v: int) -> tuple[int, int, bytes]:
        return 4, 1, struct.pack(e + "I", v)

    extra = bytearray()
    n_tags = 10
    ifd_offset = len(body)
    extra_base = ifd_offset + 2 + 12 * n_tags + 4

    def long_array(values: list[int]) -> tuple[int, int, bytes]:
        if len(values) == 1:
            return 4, 1, struct.pack(e + "I", values[0])
        off = extra_base + len(extra)
        extra.extend(struct.pack(e + "I" * len(values), *values))
        return 4, len(values), struct.pack(e + "I", off)

    for tag, (type_, count, field) in (
        (TAG_IMAGE_WIDTH, long_(w)),
        (TAG_IMAGE_LENGTH, long_(h)),
        (TAG_BITS_PER_SAMPLE, short(8)),
        (TAG_COMPRESSION, short(1)),
        (TAG_PHOTOMETRIC, short(1)),  # BlackIsZero
        (TAG_STRIP_OFFSETS, long_array(strip_offsets)),
        (TAG_SAMPLES_PER_PIXEL, short(1)),
        (TAG_ROWS_PER_STRIP, long_(rows_per_strip)),
        (TAG_STRIP_BYTE_COUNTS, long_array(strip_counts)),
        (TAG_ORIENTATION, short(1)),
    ):
        entries.append((tag, type_, count, field))
    entries.sort(key=lambda t: t[0])
    assert len(entries) == n_tags

    ifd = bytearray(struct.pack(e + "H", n_tags))
    for tag, type_, count, field in entries:
        ifd += struct.pack(e + "HHI", tag, type_, count) + field
    ifd += struct.pack(e + "I", 0)  # no next IFD

    body += ifd
    body += extra
    struct.pack_into(e + "I", body, 4, ifd_offset)
    return bytes(body)


def write_tiff(path: str | Path, grid: np.ndarray, byte_order: str = "<",
               rows_per_strip: int | None = None) -> None:
    Path(path).write_bytes(encode_tiff(grid, byte_order, rows_per_strip))
