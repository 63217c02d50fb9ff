"""Radiometric calibration and dark-object atmospheric correction.

Digital numbers become spectral radiance through the per-band linear
gain, then surface reflectance through the dark-object subtraction
model: the darkest populated histogram bin is assumed to image a target
of zero true reflectance, so its radiance is atmospheric path radiance
and is removed before the reflectance conversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import REFLECTIVE_BANDS, load_band_constants
from .ingest import BandRaster, ScenePackage
from .mtl import MtlMetadata

# downward transmittance per band (Chavez); the SWIR bands are treated
# as fully transmitting for lack of a published value
TRANSMITTANCE_T1 = {1: 0.70, 2: 0.78, 3: 0.85, 4: 0.91, 5: 1.0, 7: 1.0}

DARK_OBJECT_PERCENTILE = 0.01  # percent of pixels


@dataclass(frozen=True)
class BandCalibration:
    band_number: int
    lmin: float
    lmax: float
    irradiance: float
    dmax: int = 255

    def __post_init__(self):
        if self.lmax <= self.lmin:
            raise ValueError(f"band {self.band_number}: Lmax must exceed Lmin")
        if self.irradiance <= 0:
            raise ValueError(f"band {self.band_number}: irradiance must be positive")
        if self.dmax < 1:
            raise ValueError(f"band {self.band_number}: dmax must be >= 1")


def band_calibrations(meta: MtlMetadata) -> dict[int, BandCalibration]:
    """Per-band calibration: radiance bounds from the MTL, irradiance from
    the constants table."""
    constants = load_band_constants()
    return {
        band: BandCalibration(band, meta.radiance_min[band], meta.radiance_max[band],
                              constants[band].irradiance, meta.dmax)
        for band in REFLECTIVE_BANDS
    }


def default_calibrations(dmax: int = 255) -> dict[int, BandCalibration]:
    """Calibrations built purely from the shipped constants table."""
    constants = load_band_constants()
    return {
        band: BandCalibration(band, c.lmin, c.lmax, c.irradiance, dmax)
        for band, c in constants.items()
    }


@dataclass(frozen=True)
class SolarGeometry:
    day_of_year: int
    sun_elevation_deg: float

    def __post_init__(self):
        if not (0.0 < self.sun_elevation_deg < 90.0):
            raise ValueError(f"sun elevation {self.sun_elevation_deg} outside (0, 90)")
        if not (1 <= self.day_of_year <= 366):
            raise ValueError(f"day of year {self.day_of_year} outside 1..366")

    @property
    def sun_zenith_deg(self) -> float:
        return 90.0 - self.sun_elevation_deg

    @property
    def earth_sun_distance_au(self) -> float:
        return earth_sun_distance(self.day_of_year)

    @classmethod
    def from_metadata(cls, meta: MtlMetadata) -> "SolarGeometry":
        return cls(meta.day_of_year, meta.sun_elevation_deg)


def radiance_of(nd, cal: BandCalibration):
    """ND -> spectral radiance, L = Lmin + nd*(Lmax - Lmin)/dmax.

    Accepts a scalar or an array; values must lie in [0, dmax].
    """
    nd_arr = np.asarray(nd)
    if np.any(nd_arr < 0) or np.any(nd_arr > cal.dmax):
        raise ValueError(f"digital number outside [0, {cal.dmax}]")
    result = cal.lmin + nd_arr.astype(np.float64) * (cal.lmax - cal.lmin) / cal.dmax
    return float(result) if np.isscalar(nd) or nd_arr.ndim == 0 else result


def earth_sun_distance(day_of_year: int) -> float:
    """Earth-sun distance in AU; the 0.98563 deg/day rate makes the cosine
    argument a degree quantity."""
    if not (1 <= day_of_year <= 366):
        raise ValueError(f"day of year {day_of_year} outside 1..366")
    return 1.0 - 0.01674 * math.cos(math.radians(0.98563 * (day_of_year - 4)))


def toa_reflectance(radiance, cal: BandCalibration, sol: SolarGeometry):
    """Top-of-atmosphere reflectance, rho = pi * d^2 * L / (E * cos z)."""
    d = sol.earth_sun_distance_au
    cos_z = math.cos(math.radians(sol.sun_zenith_deg))
    return math.pi * d * d * np.asarray(radiance, dtype=np.float64) / (cal.irradiance * cos_z)


def dark_object_nd(nd_grid: np.ndarray, dmax: int,
                   percentile: float = DARK_OBJECT_PERCENTILE) -> int:
    """Smallest ND whose cumulative histogram count reaches `percentile`
    percent of the pixels (at least one pixel)."""
    flat = np.asarray(nd_grid).ravel()
    if flat.size == 0:
        raise ValueError("empty grid")
    counts = np.bincount(flat, minlength=dmax + 1)
    needed = max(1.0, flat.size * (percentile / 100.0))
    cumulative = np.cumsum(counts)
    return int(np.searchsorted(cumulative, needed, side="left"))


def dark_object_radiance(raster: BandRaster | np.ndarray, cal: BandCalibration,
                         percentile: float = DARK_OBJECT_PERCENTILE) -> float:
    grid = raster.nd if isinstance(raster, BandRaster) else raster
    return radiance_of(dark_object_nd(grid, cal.dmax, percentile), cal)


def surface_reflectance(radiance, dark_radiance: float, cal: BandCalibration,
                        sol: SolarGeometry, t1: float, t2: float):
    """Dark-object corrected reflectance,
    rho = pi * d^2 * (L - La) / (E * cos z * t1 * t2).

    Negative outputs are kept; they are counted, not clamped.
    """
    if not (0.0 < t1 <= 1.0 and 0.0 < t2 <= 1.0):
        raise ValueError("transmittances must lie in (0, 1]")
    d = sol.earth_sun_distance_au
    cos_z = math.cos(math.radians(sol.sun_zenith_deg))
    num = math.pi * d * d * (np.asarray(radiance, dtype=np.float64) - dark_radiance)
    return num / (cal.irradiance * cos_z * t1 * t2)


@dataclass(frozen=True)
class AtmosphericParams:
    la_per_band: dict[int, float]
    t1_per_band: dict[int, float]
    t2: float
    dark_nd_per_band: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if not (0.0 < self.t2 <= 1.0):
            raise ValueError(f"t2 {self.t2} outside (0, 1]")
        for band, t1 in self.t1_per_band.items():
            if not (0.0 < t1 <= 1.0):
                raise ValueError(f"band {band}: t1 {t1} outside (0, 1]")


@dataclass(frozen=True)
class ReflectanceStack:
    metadata: MtlMetadata
    grids: dict[int, np.ndarray]  # float64 surface reflectance per band
    atmosphere: AtmosphericParams
    negative_counts: dict[int, int]

    @property
    def shape(self) -> tuple[int, int]:
        return self.grids[REFLECTIVE_BANDS[0]].shape

    def band(self, number: int) -> np.ndarray:
        if number not in self.grids:
            raise ValueError(f"band {number} not present in reflectance stack")
        return self.grids[number]


def calibrate_scene(pkg: ScenePackage,
                    percentile: float = DARK_OBJECT_PERCENTILE) -> ReflectanceStack:
    """Full ND -> radiance -> surface reflectance conversion for all six
    reflective bands, with per-band dark-object radiance."""
    meta = pkg.metadata
    cals = band_calibrations(meta)
    sol = SolarGeometry.from_metadata(meta)
    t2 = math.cos(math.radians(sol.sun_zenith_deg))

    grids: dict[int, np.ndarray] = {}
    la: dict[int, float] = {}
    dark_nd: dict[int, int] = {}
    negatives: dict[int, int] = {}
    for band in REFLECTIVE_BANDS:
        raster = pkg.bands[band]
        cal = cals[band]
        nd_star = dark_object_nd(raster.nd, cal.dmax, percentile)
        la_band = radiance_of(nd_star, cal)
        radiance = radiance_of(raster.nd, cal)
        rho = surface_reflectance(radiance, la_band, cal, sol,
                                  TRANSMITTANCE_T1[band], t2)
        grids[band] = rho
        la[band] = la_band
        dark_nd[band] = nd_star
        negatives[band] = int(np.count_nonzero(rho < 0))

    atm = AtmosphericParams(la, dict(TRANSMITTANCE_T1), t2, dark_nd)
    return ReflectanceStack(meta, grids, atm, negatives)
