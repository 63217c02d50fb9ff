"""Normalized-difference indices over the reflectance stack.

Band roles on TM: VIS (red) = band 3, VISV (green) = band 2,
NIR = band 4, SWIR = band 5. The NDWI here is (SWIR-NIR)/(SWIR+NIR) and
the MNDWI is (VISV-NIR)/(VISV+NIR); each index carries an explicit
water polarity so downstream thresholding never assumes a direction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .calibration import ReflectanceStack


class IndexKind(enum.Enum):
    NDVI = "ndvi"
    NDWI = "ndwi"
    MNDWI = "mndwi"


class WaterPolarity(enum.Enum):
    HIGH_IS_WATER = "high-is-water"
    LOW_IS_WATER = "low-is-water"


BAND_ROLE_VIS = 3
BAND_ROLE_VISV = 2
BAND_ROLE_NIR = 4
BAND_ROLE_SWIR = 5

# (numerator band a, band b) -> (a - b)/(a + b), plus polarity
_INDEX_DEFS: dict[IndexKind, tuple[int, int, WaterPolarity]] = {
    IndexKind.NDVI: (BAND_ROLE_NIR, BAND_ROLE_VIS, WaterPolarity.LOW_IS_WATER),
    IndexKind.NDWI: (BAND_ROLE_SWIR, BAND_ROLE_NIR, WaterPolarity.HIGH_IS_WATER),
    IndexKind.MNDWI: (BAND_ROLE_VISV, BAND_ROLE_NIR, WaterPolarity.HIGH_IS_WATER),
}


@dataclass(frozen=True)
class IndexGrid:
    kind: IndexKind
    values: np.ndarray
    water_polarity: WaterPolarity
    degenerate_count: int = 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


def normalized_difference(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, int]:
    """(a - b)/(a + b) with zero-denominator pixels forced to 0 and counted."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    den = a + b
    degenerate = den == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(degenerate, 0.0, (a - b) / np.where(degenerate, 1.0, den))
    return values, int(np.count_nonzero(degenerate))


def compute_index(stack: ReflectanceStack, kind: IndexKind) -> IndexGrid:
    band_a, band_b, polarity = _INDEX_DEFS[kind]
    values, degenerate = normalized_difference(stack.band(band_a), stack.band(band_b))
    return IndexGrid(kind, values, polarity, degenerate)
