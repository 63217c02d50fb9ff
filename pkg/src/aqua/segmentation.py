"""Seed-driven water-body segmentation.

Pipeline: study the histogram of a window around the user's seed to pick
an Otsu threshold, binarize the index grid toward its water polarity,
keep the 8-connected component nearest the seed, fill interior holes,
and extract a border band by dilating the region and subtracting the
erosion of that dilation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import NoBimodalStructureError, NoWaterNearSeedError
from .indices import IndexGrid, IndexKind, WaterPolarity

OTSU_BINS = 256
DEFAULT_WINDOW = 101      # ~3 km at 30 m pixels
DEFAULT_MAX_RADIUS = 25.0  # pixels


@dataclass(frozen=True)
class StructuringElement:
    """Symmetric set of (drow, dcol) offsets containing the origin."""
    offsets: tuple[tuple[int, int], ...]

    def __post_init__(self):
        offs = set(self.offsets)
        if (0, 0) not in offs:
            raise ValueError("structuring element must contain (0, 0)")
        if any((-r, -c) not in offs for (r, c) in offs):
            raise ValueError("structuring element must be symmetric under negation")
        object.__setattr__(self, "offsets", tuple(sorted(offs)))

    @property
    def radius(self) -> int:
        return max(max(abs(r), abs(c)) for r, c in self.offsets)


def octagon3() -> StructuringElement:
    """Integer octagon of radius 3: |dr| <= 3, |dc| <= 3, |dr|+|dc| <= 4."""
    offsets = tuple((dr, dc)
                    for dr in range(-3, 4) for dc in range(-3, 4)
                    if abs(dr) + abs(dc) <= 4)
    return StructuringElement(offsets)


def dilate(mask: np.ndarray, se: StructuringElement) -> np.ndarray:
    """Minkowski sum; offsets falling outside the image are ignored."""
    mask = np.asarray(mask, dtype=bool)
    h, w = mask.shape
    out = np.zeros_like(mask)
    for dr, dc in se.offsets:
        src_r = slice(max(0, -dr), min(h, h - dr))
        dst_r = slice(max(0, dr), min(h, h + dr))
        src_c = slice(max(0, -dc), min(w, w - dc))
        dst_c = slice(max(0, dc), min(w, w + dc))
        out[dst_r, dst_c] |= mask[src_r, src_c]
    return out


def erode(mask: np.ndarray, se: StructuringElement) -> np.ndarray:
    """Minkowski difference; a pixel survives only if the whole element
    footprint stays inside the image and inside the mask."""
    mask = np.asarray(mask, dtype=bool)
    r = se.radius
    padded = np.zeros((mask.shape[0] + 2 * r, mask.shape[1] + 2 * r), dtype=bool)
    padded[r:r + mask.shape[0], r:r + mask.shape[1]] = mask
    out = np.ones_like(mask)
    for dr, dc in se.offsets:
        out &= padded[r + dr:r + dr + mask.shape[0], r + dc:r + dc + mask.shape[1]]
    return out


def binarize(values: np.ndarray, threshold: float, polarity: WaterPolarity) -> np.ndarray:
    """Threshold toward water; the comparison is inclusive on the water side."""
    values = np.asarray(values)
    if polarity is WaterPolarity.HIGH_IS_WATER:
        return values >= threshold
    return values <= threshold


def otsu_bin(counts: np.ndarray) -> int:
    """Cut bin maximizing between-class variance over 256-bin histograms.

    Classes are bins [0..t] and [t+1..255]; ties resolve to the lowest t.
    """
    counts = np.asarray(counts, dtype=np.int64)
    if counts.ndim != 1 or counts.size != OTSU_BINS:
        raise ValueError(f"histogram must have {OTSU_BINS} bins")
    if int(np.count_nonzero(counts)) < 2:
        raise NoBimodalStructureError("no bimodal structure in threshold window")
    total = int(counts.sum())
    bins = np.arange(OTSU_BINS, dtype=np.int64)
    w0 = np.cumsum(counts)                    # pixels in class 0 at cut t
    s0 = np.cumsum(counts * bins)             # their summed bin values
    w1 = total - w0
    s1 = int(s0[-1]) - s0
    valid = (w0 > 0) & (w1 > 0)
    mu0 = np.divide(s0, w0, out=np.zeros(OTSU_BINS), where=valid)
    mu1 = np.divide(s1, w1, out=np.zeros(OTSU_BINS), where=valid)
    sigma = np.where(valid,
                     w0.astype(np.float64) * w1.astype(np.float64) * (mu0 - mu1) ** 2,
                     0.0)
    return int(np.argmax(sigma))


def window_bounds(shape: tuple[int, int], seed: tuple[int, int],
                  window: int) -> tuple[int, int, int, int]:
    """Half-window around the seed, clipped to the grid."""
    half = window // 2
    r, c = seed
    return (max(0, r - half), min(shape[0], r + half + 1),
            max(0, c - half), min(shape[1], c + half + 1))


def local_threshold(grid: IndexGrid | np.ndarray, seed: tuple[int, int],
                    window: int = DEFAULT_WINDOW) -> float:
    """Otsu threshold of the seed's window, in index units.

    The window values are quantized to 256 bins across their min-max
    range; the returned threshold is the lower edge of the first bin of
    the upper class, so `value >= threshold` reproduces the bin split.
    """
    values = grid.values if isinstance(grid, IndexGrid) else np.asarray(grid)
    if window < 3 or window % 2 == 0:
        raise ValueError("window must be an odd pixel count >= 3")
    r, c = seed
    if not (0 <= r < values.shape[0] and 0 <= c < values.shape[1]):
        raise ValueError(f"seed {seed} outside grid {values.shape}")
    r0, r1, c0, c1 = window_bounds(values.shape, seed, window)
    patch = values[r0:r1, c0:c1]
    vmin = float(patch.min())
    vmax = float(patch.max())
    if vmax == vmin:
        raise NoBimodalStructureError("no bimodal structure in threshold window")
    scaled = (patch - vmin) * (OTSU_BINS / (vmax - vmin))
    bins = np.clip(scaled.astype(np.int64), 0, OTSU_BINS - 1)
    counts = np.bincount(bins.ravel(), minlength=OTSU_BINS)
    t = otsu_bin(counts)
    return vmin + (t + 1) * (vmax - vmin) / OTSU_BINS


@dataclass(frozen=True)
class RegionMask:
    member: np.ndarray  # bool grid, one 8-connected component
    seed: tuple[int, int]

    @property
    def pixel_count(self) -> int:
        return int(np.count_nonzero(self.member))

    @property
    def shape(self) -> tuple[int, int]:
        return self.member.shape


_NEIGHBORS_8 = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))
_NEIGHBORS_4 = ((-1, 0), (0, -1), (0, 1), (1, 0))


def _grow_component(binary: np.ndarray, start: tuple[int, int]) -> np.ndarray:
    h, w = binary.shape
    member = np.zeros_like(binary)
    member[start] = True
    queue = deque([start])
    while queue:
        r, c = queue.popleft()
        for dr, dc in _NEIGHBORS_8:
            nr, nc = r + dr, c + dc
            if 0 <= nr < h and 0 <= nc < w and binary[nr, nc] and not member[nr, nc]:
                member[nr, nc] = True
                queue.append((nr, nc))
    return member


def component_near(binary: np.ndarray, seed: tuple[int, int],
                   max_radius: float = DEFAULT_MAX_RADIUS) -> RegionMask:
    """The 8-connected component at the seed, or the one whose nearest
    pixel is closest (Euclidean, within max_radius); distance ties break
    toward the smaller (row, col) pixel."""
    binary = np.asarray(binary, dtype=bool)
    if max_radius < 0:
        raise ValueError("max_radius must be >= 0")
    h, w = binary.shape
    r, c = seed
    if not (0 <= r < h and 0 <= c < w):
        raise ValueError(f"seed {seed} outside grid {binary.shape}")
    if binary[r, c]:
        return RegionMask(_grow_component(binary, (r, c)), (r, c))

    reach = int(max_radius)
    best: tuple[float, int, int] | None = None
    for nr in range(max(0, r - reach), min(h, r + reach + 1)):
        for nc in range(max(0, c - reach), min(w, c + reach + 1)):
            if not binary[nr, nc]:
                continue
            dist2 = (nr - r) ** 2 + (nc - c) ** 2
            if dist2 > max_radius * max_radius:
                continue
            key = (dist2, nr, nc)
            if best is None or key < best:
                best = key
    if best is None:
        raise NoWaterNearSeedError(
            f"no water body within {max_radius} px of seed {seed}")
    return RegionMask(_grow_component(binary, (best[1], best[2])), (r, c))


def fill_holes(mask: np.ndarray) -> np.ndarray:
    """Fill false regions not 4-connected to the grid border."""
    mask = np.asarray(mask, dtype=bool)
    rows, cols = np.nonzero(mask)
    if rows.size == 0:
        return mask.copy()
    # holes can only lie inside the bounding box of the true pixels; pad
    # the box with a false frame standing in for everything outside it
    r0, r1 = int(rows.min()), int(rows.max())
    c0, c1 = int(cols.min()), int(cols.max())
    box = mask[r0:r1 + 1, c0:c1 + 1]
    bh, bw = box.shape
    padded = np.zeros((bh + 2, bw + 2), dtype=bool)
    padded[1:-1, 1:-1] = box
    outside = np.zeros_like(padded)
    queue: deque[tuple[int, int]] = deque()
    for rr in range(padded.shape[0]):
        for cc in (0, padded.shape[1] - 1):
            if not outside[rr, cc]:
                outside[rr, cc] = True
                queue.append((rr, cc))
    for cc in range(padded.shape[1]):
        for rr in (0, padded.shape[0] - 1):
            if not outside[rr, cc]:
                outside[rr, cc] = True
                queue.append((rr, cc))
    while queue:
        rr, cc = queue.popleft()
        for dr, dc in _NEIGHBORS_4:
            nr, nc = rr + dr, cc + dc
            if (0 <= nr < padded.shape[0] and 0 <= nc < padded.shape[1]
                    and not padded[nr, nc] and not outside[nr, nc]):
                outside[nr, nc] = True
                queue.append((nr, nc))
    filled = mask.copy()
    holes = ~padded[1:-1, 1:-1] & ~outside[1:-1, 1:-1]
    filled[r0:r1 + 1, c0:c1 + 1] |= holes
    return filled


def extract_border(region: np.ndarray, se: StructuringElement | None = None) -> np.ndarray:
    """Border band: dilate the region, erode the dilation, subtract."""
    if se is None:
        se = octagon3()
    dilated = dilate(region, se)
    eroded = erode(dilated, se)
    return dilated & ~eroded


@dataclass(frozen=True)
class SegmentParams:
    window: int = DEFAULT_WINDOW
    max_radius: float = DEFAULT_MAX_RADIUS
    se: StructuringElement = field(default_factory=octagon3)

    def __post_init__(self):
        if self.window < 3 or self.window % 2 == 0:
            raise ValueError("window must be an odd pixel count >= 3")
        if self.max_radius < 0:
            raise ValueError("max_radius must be >= 0")


@dataclass(frozen=True)
class SegmentationResult:
    region: RegionMask
    border: np.ndarray
    threshold: float
    index_kind: IndexKind
    window_size: int
    flags: tuple[str, ...] = ()


def segment_at_seed(grid: IndexGrid, seed: tuple[int, int],
                    params: SegmentParams | None = None) -> SegmentationResult:
    if params is None:
        params = SegmentParams()
    flags: list[str] = []
    r0, r1, c0, c1 = window_bounds(grid.shape, seed, params.window)
    if (r1 - r0, c1 - c0) != (params.window, params.window):
        flags.append("threshold window clipped at grid edge")
    if grid.degenerate_count:
        flags.append(f"{grid.degenerate_count} degenerate index pixels")

    threshold = local_threshold(grid, seed, params.window)
    binary = binarize(grid.values, threshold, grid.water_polarity)
    region = component_near(binary, seed, params.max_radius)
    if not binary[seed]:
        flags.append("seed off water; snapped to nearest component")
    filled = fill_holes(region.member)
    if int(np.count_nonzero(filled)) != region.pixel_count:
        flags.append("interior holes filled")
        region = RegionMask(filled, region.seed)
    border = extract_border(region.member, params.se)
    return SegmentationResult(region, border, threshold, grid.kind,
                              params.window, tuple(flags))
