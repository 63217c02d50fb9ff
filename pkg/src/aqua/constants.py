"""Sensor constants table shipped with the package.

The TM band constants (radiance bounds and solar irradiance) live in
data/tm_constants.txt so they can be versioned and reviewed as data, not
code. Radiance bounds from a scene's MTL take precedence; the table is
the fallback and the irradiance source.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

REFLECTIVE_BANDS = (1, 2, 3, 4, 5, 7)
DEFAULT_DMAX = 255


@dataclass(frozen=True)
class BandConstants:
    band_number: int
    lmin: float
    lmax: float
    irradiance: float


@lru_cache(maxsize=1)
def load_band_constants() -> dict[int, BandConstants]:
    text = resources.files("aqua").joinpath("data/tm_constants.txt").read_text()
    table: dict[int, BandConstants] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        band_s, lmin_s, lmax_s, irr_s = line.split()
        band = int(band_s)
        table[band] = BandConstants(band, float(lmin_s), float(lmax_s), float(irr_s))
    missing = set(REFLECTIVE_BANDS) - set(table)
    if missing:
        raise RuntimeError(f"constants table missing bands {sorted(missing)}")
    return table
