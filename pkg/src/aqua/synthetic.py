"""Synthetic scene-package generator for demos and fixtures.

Builds a package directory (MTL + six band files) containing one
circular lake: green reflectance up and NIR/SWIR down over water, so
the water indices separate cleanly. Placement defaults put the lake
centroid inside the sample Ancash boundary fixtures.
"""

from __future__ import annotations

import datetime as dt
from pathlib import Path

import numpy as np

from . import pnm, tiff
from .mtl import MtlMetadata, serialize_mtl

DEFAULT_SCENE_ID = "LT50080662009179CUB00"

# ND levels per band as (land, water); glacial-lake style: visible
# bands brighter over water than over dark land, NIR/SWIR much darker.
# Water sits above the dark floor in the visible bands so the NDVI and
# MNDWI denominators stay away from zero after dark-object subtraction.
BAND_LEVELS = {
    1: (70, 90),
    2: (60, 120),
    3: (50, 90),
    4: (180, 20),
    5: (140, 15),
    7: (120, 12),
}

TM_RADIANCE_MIN = {1: -1.52, 2: -2.84, 3: -1.17, 4: -1.51, 5: -0.37, 7: -0.15}
TM_RADIANCE_MAX = {1: 193.0, 2: 365.0, 3: 264.0, 4: 221.0, 5: 30.2, 7: 16.5}


def make_metadata(scene_id: str = DEFAULT_SCENE_ID, rows: int = 200, cols: int = 200,
                  ul_easting: float = 190000.0, ul_northing: float = 9100000.0,
                  sun_elevation: float = 55.0) -> MtlMetadata:
    year = int(scene_id[9:13])
    doy = int(scene_id[13:16])
    date = dt.date(year, 1, 1) + dt.timedelta(days=doy - 1)
    return MtlMetadata(
        scene_id=scene_id,
        acquisition_date=date,
        day_of_year=doy,
        sun_elevation_deg=sun_elevation,
        sun_azimuth_deg=45.0,
        dmax=255,
        radiance_min=dict(TM_RADIANCE_MIN),
        radiance_max=dict(TM_RADIANCE_MAX),
        utm_zone=18,
        corner_ul_easting=ul_easting,
        corner_ul_northing=ul_northing,
        pixel_size=30.0,
        rows=rows,
        cols=cols,
        cloud_cover=5.0,
    )


def lake_mask(shape: tuple[int, int], center: tuple[int, int], radius: float) -> np.ndarray:
    rr, cc = np.ogrid[: shape[0], : shape[1]]
    return (rr - center[0]) ** 2 + (cc - center[1]) ** 2 <= radius * radius


def build_scene_package(root: str | Path, scene_id: str = DEFAULT_SCENE_ID,
                        shape: tuple[int, int] = (200, 200),
                        lake_center: tuple[int, int] = (100, 100),
                        lake_radius: float = 30.0,
                        band_format: str = "pgm",
                        noise_seed: int = 7) -> Path:
    """Write the package under root/<scene_id> and return its directory."""
    root = Path(root)
    pkg_dir = root / scene_id
    pkg_dir.mkdir(parents=True, exist_ok=True)
    water = lake_mask(shape, lake_center, lake_radius)
    rng = np.random.default_rng(noise_seed)
    for band, (land_nd, water_nd) in BAND_LEVELS.items():
        grid = np.where(water, water_nd, land_nd).astype(np.int16)
        grid = grid + rng.integers(-3, 4, size=shape, dtype=np.int16)
        grid = np.clip(grid, 5, 250).astype(np.uint8)
        if band_format == "pgm":
            pnm.write_pgm(pkg_dir / f"{scene_id}_B{band}.PGM", grid)
        else:
            tiff.write_tiff(pkg_dir / f"{scene_id}_B{band}.TIFF", grid)
    meta = make_metadata(scene_id, rows=shape[0], cols=shape[1])
    (pkg_dir / f"{scene_id}_MTL.TXT").write_text(serialize_mtl(meta))
    return pkg_dir
