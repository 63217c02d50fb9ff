"""Geometric measurement of segmented regions.

Area comes from the member-pixel count at 30 m pixels (0.0009 km^2
each). The perimeter uses the boundary-pixel pair-counting scheme: a
boundary pixel (member with a false 4-neighbor, image frame excluded)
adds a lateral pair if its right or down neighbor is boundary, and a
diagonal pair if its down-left or down-right neighbor is, with the
diagonal weighted 1.41. That scheme is preserved verbatim, including
the frame exclusion and the 1.41 factor.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

PIXEL_SIZE_KM = 0.030
PIXEL_AREA_KM2 = 0.0009  # (0.030 km)^2
DIAGONAL_WEIGHT = 1.41


class Hemisphere(enum.Enum):
    NORTH = "North"
    SOUTH = "South"


@dataclass(frozen=True)
class GeoTransform:
    ul_easting: float
    ul_northing: float
    pixel_size: float
    utm_zone: int
    hemisphere: Hemisphere

    def __post_init__(self):
        if self.pixel_size <= 0:
            raise ValueError("pixel_size must be positive")


def _as_mask(region) -> np.ndarray:
    member = getattr(region, "member", region)
    return np.asarray(member, dtype=bool)


def area_km2(region) -> float:
    return int(np.count_nonzero(_as_mask(region))) * PIXEL_AREA_KM2


def boundary_pixels(mask: np.ndarray) -> np.ndarray:
    """Member pixels with at least one false 4-neighbor; the outermost
    image rows/columns never qualify (frame exclusion)."""
    mask = _as_mask(mask)
    out = np.zeros_like(mask)
    if mask.shape[0] < 3 or mask.shape[1] < 3:
        return out
    core = mask[1:-1, 1:-1]
    up = mask[:-2, 1:-1]
    down = mask[2:, 1:-1]
    left = mask[1:-1, :-2]
    right = mask[1:-1, 2:]
    out[1:-1, 1:-1] = core & ~(up & down & left & right)
    return out


@dataclass(frozen=True)
class PerimeterResult:
    perimeter_km: float
    p_lado: int
    p_diag: int


def perimeter_km(region) -> PerimeterResult:
    """Perimeter = p_lado*0.030 + 1.41*p_diag*0.030 over boundary-pixel pairs."""
    mask = _as_mask(region)
    b = boundary_pixels(mask)
    if mask.shape[0] < 3 or mask.shape[1] < 3:
        return PerimeterResult(0.0, 0, 0)
    core = b[1:-1, 1:-1]
    right = b[1:-1, 2:]
    down = b[2:, 1:-1]
    down_left = b[2:, :-2]
    down_right = b[2:, 2:]
    p_lado = int(np.count_nonzero(core & (right | down)))
    p_diag = int(np.count_nonzero(core & (down_left | down_right)))
    return PerimeterResult(p_lado * PIXEL_SIZE_KM + DIAGONAL_WEIGHT * p_diag * PIXEL_SIZE_KM,
                           p_lado, p_diag)


def centroid(region) -> tuple[float, float]:
    """Arithmetic mean (row, col) of the member pixels."""
    mask = _as_mask(region)
    rows, cols = np.nonzero(mask)
    if rows.size == 0:
        raise ValueError("centroid of an empty region")
    return float(rows.mean()), float(cols.mean())


def pixel_to_utm(row: float, col: float, gt: GeoTransform) -> tuple[float, float]:
    """Pixel (row, col) to UTM meters; the UL corner keys address the
    center of pixel (0, 0)."""
    return (gt.ul_easting + col * gt.pixel_size,
            gt.ul_northing - row * gt.pixel_size)


def utm_to_pixel(easting: float, northing: float, gt: GeoTransform) -> tuple[float, float]:
    return ((gt.ul_northing - northing) / gt.pixel_size,
            (easting - gt.ul_easting) / gt.pixel_size)


@dataclass(frozen=True)
class RegionMetrics:
    area_km2: float
    perimeter_km: float
    p_lado: int
    p_diag: int
    centroid_pixel: tuple[float, float]
    centroid_utm: tuple[float, float] | None


def region_metrics(region, gt: GeoTransform | None = None) -> RegionMetrics:
    mask = _as_mask(region)
    perim = perimeter_km(mask)
    centroid_px = centroid(mask)
    centroid_utm = pixel_to_utm(*centroid_px, gt) if gt is not None else None
    return RegionMetrics(area_km2(mask), perim.perimeter_km, perim.p_lado,
                         perim.p_diag, centroid_px, centroid_utm)


# Moore-neighbor order, clockwise starting west
_MOORE = ((0, -1), (-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1))


def trace_outer_ring(mask: np.ndarray) -> list[tuple[int, int]]:
    """Ordered outer contour of the true pixels (Moore boundary tracing).

    The walk starts at the lexicographically first true pixel, follows
    the component's boundary clockwise, and stops when its (pixel,
    backtrack) state repeats; the emitted ring is that cycle, so the
    last pixel is 8-adjacent to the first. Single-pixel masks yield a
    one-entry ring. The walk state space is finite (8 per pixel), so
    tracing always terminates.
    """
    mask = _as_mask(mask)
    rows, cols = np.nonzero(mask)
    if rows.size == 0:
        return []
    order = np.lexsort((cols, rows))
    start = (int(rows[order[0]]), int(cols[order[0]]))

    h, w = mask.shape

    def at(pos: tuple[int, int]) -> bool:
        r, c = pos
        return 0 <= r < h and 0 <= c < w and mask[r, c]

    # the start pixel's west neighbor is false by choice of start
    cur, back = start, (start[0], start[1] - 1)
    seen: dict[tuple[tuple[int, int], tuple[int, int]], int] = {}
    trail: list[tuple[int, int]] = []
    while (cur, back) not in seen:
        seen[(cur, back)] = len(trail)
        trail.append(cur)
        back_dir = _MOORE.index((back[0] - cur[0], back[1] - cur[1]))
        nxt = None
        for step in range(1, 9):
            d = (back_dir + step) % 8
            cand = (cur[0] + _MOORE[d][0], cur[1] + _MOORE[d][1])
            if at(cand):
                prev = (back_dir + step - 1) % 8
                nxt = cand
                new_back = (cur[0] + _MOORE[prev][0], cur[1] + _MOORE[prev][1])
                break
        if nxt is None:
            return [start]  # isolated single pixel
        cur, back = nxt, new_back
    # drop any pre-cycle tail so the ring closes on itself
    return trail[seen[(cur, back)]:]


def decimate_ring(ring: list, max_vertices: int = 500) -> list:
    """Uniformly subsample a ring down to at most max_vertices points."""
    if len(ring) <= max_vertices:
        return list(ring)
    idx = np.linspace(0, len(ring) - 1, max_vertices).astype(int)
    seen: set[int] = set()
    out = []
    for i in idx:
        if int(i) not in seen:
            seen.add(int(i))
            out.append(ring[int(i)])
    return out
