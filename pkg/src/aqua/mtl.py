"""MTL metadata parsing and canonical serialization.

The MTL file is `KEY = VALUE` text with `GROUP x` / `END_GROUP = x`
nesting and a final `END`. Glovis packages span two key vocabularies
(roughly pre/post 2012); both are accepted, older keys first.
"""

from __future__ import annotations

import datetime as dt
import re
from dataclasses import dataclass, field

from .constants import DEFAULT_DMAX, REFLECTIVE_BANDS, load_band_constants
from .errors import MtlError

# vocabulary alternatives, first match wins
_SCENE_ID_KEYS = ("LANDSAT_SCENE_ID", "SCENE_ID")
_BAND1_FILE_KEYS = ("BAND1_FILE_NAME", "FILE_NAME_BAND_1")
_DATE_KEYS = ("ACQUISITION_DATE", "DATE_ACQUIRED")
_DMAX_KEYS = ("QCALMAX_BAND1", "QUANTIZE_CAL_MAX_BAND_1")
_ZONE_KEYS = ("ZONE_NUMBER", "UTM_ZONE")
_UL_X_KEYS = ("PRODUCT_UL_CORNER_MAPX", "CORNER_UL_PROJECTION_X_PRODUCT")
_UL_Y_KEYS = ("PRODUCT_UL_CORNER_MAPY", "CORNER_UL_PROJECTION_Y_PRODUCT")
_PIXEL_SIZE_KEYS = ("GRID_CELL_SIZE_REF", "GRID_CELL_SIZE_REFLECTIVE")
_ROWS_KEYS = ("PRODUCT_LINES_REF", "REFLECTIVE_LINES")
_COLS_KEYS = ("PRODUCT_SAMPLES_REF", "REFLECTIVE_SAMPLES")


def _lmin_keys(band: int) -> tuple[str, ...]:
    return (f"LMIN_BAND{band}", f"RADIANCE_MINIMUM_BAND_{band}")


def _lmax_keys(band: int) -> tuple[str, ...]:
    return (f"LMAX_BAND{band}", f"RADIANCE_MAXIMUM_BAND_{band}")


@dataclass(frozen=True)
class MtlMetadata:
    scene_id: str
    acquisition_date: dt.date
    day_of_year: int
    sun_elevation_deg: float
    sun_azimuth_deg: float
    dmax: int
    radiance_min: dict[int, float]
    radiance_max: dict[int, float]
    utm_zone: int
    corner_ul_easting: float
    corner_ul_northing: float
    pixel_size: float
    rows: int
    cols: int
    cloud_cover: float
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        problems = []
        if not (0.0 < self.sun_elevation_deg < 90.0):
            problems.append(f"SUN_ELEVATION {self.sun_elevation_deg} outside (0, 90)")
        if self.dmax < 1:
            problems.append(f"dmax {self.dmax} < 1")
        if self.rows <= 0 or self.cols <= 0:
            problems.append(f"non-positive dimensions {self.rows}x{self.cols}")
        if self.pixel_size <= 0:
            problems.append(f"non-positive pixel size {self.pixel_size}")
        if not (1 <= self.day_of_year <= 366):
            problems.append(f"day of year {self.day_of_year} outside 1..366")
        for band in REFLECTIVE_BANDS:
            if self.radiance_max[band] <= self.radiance_min[band]:
                problems.append(f"band {band}: Lmax <= Lmin")
        if problems:
            raise MtlError("; ".join(problems))


def _parse_value(raw: str) -> str | int | float:
    raw = raw.strip()
    if len(raw) >= 2 and raw[0] == '"' and raw[-1] == '"':
        return raw[1:-1]
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        return raw


def scan_mtl(text: str) -> dict[str, str | int | float]:
    """Flatten the MTL document to a key/value dict, checking GROUP nesting."""
    values: dict[str, str | int | float] = {}
    stack: list[str] = []
    ended = False
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line:
            continue
        if ended:
            raise MtlError("content after END", line=lineno)
        if line == "END":
            ended = True
            continue
        m = re.match(r"^([A-Za-z0-9_]+)\s*=\s*(.*)$", line)
        if m is None:
            raise MtlError(f"unparseable line {line!r}", line=lineno)
        key, raw_value = m.group(1), m.group(2)
        if key == "GROUP":
            stack.append(raw_value.strip())
        elif key == "END_GROUP":
            name = raw_value.strip()
            if not stack:
                raise MtlError(f"END_GROUP {name} with no open GROUP", line=lineno)
            if stack[-1] != name:
                raise MtlError(f"END_GROUP {name} does not match open GROUP {stack[-1]}",
                               line=lineno)
            stack.pop()
        else:
            values[key] = _parse_value(raw_value)
    if stack:
        raise MtlError(f"unclosed GROUP {stack[-1]}")
    return values


def _first(values: dict, keys: tuple[str, ...]):
    for key in keys:
        if key in values:
            return values[key]
    return None


def _require(values: dict, keys: tuple[str, ...]):
    got = _first(values, keys)
    if got is None:
        raise MtlError(f"missing required key {keys[0]}")
    return got


def _parse_date(raw) -> dt.date:
    try:
        return dt.date.fromisoformat(str(raw).strip('"'))
    except ValueError as exc:
        raise MtlError(f"bad acquisition date {raw!r}") from exc


def parse_mtl(text: str) -> MtlMetadata:
    values = scan_mtl(text)
    notes: list[str] = []

    scene_id = _first(values, _SCENE_ID_KEYS)
    if scene_id is None:
        band1 = _first(values, _BAND1_FILE_KEYS)
        if isinstance(band1, str) and "_B1" in band1:
            scene_id = band1.split("_B1")[0]
            notes.append("scene_id derived from band-1 file name")
    if scene_id is None:
        raise MtlError(f"missing required key {_SCENE_ID_KEYS[0]}")

    date = _parse_date(_require(values, _DATE_KEYS))
    constants = load_band_constants()
    radiance_min: dict[int, float] = {}
    radiance_max: dict[int, float] = {}
    for band in REFLECTIVE_BANDS:
        lmin = _first(values, _lmin_keys(band))
        lmax = _first(values, _lmax_keys(band))
        if lmin is None or lmax is None:
            radiance_min[band] = constants[band].lmin
            radiance_max[band] = constants[band].lmax
            notes.append(f"band {band}: radiance bounds from constants table")
        else:
            radiance_min[band] = float(lmin)
            radiance_max[band] = float(lmax)

    dmax_raw = _first(values, _DMAX_KEYS)
    if dmax_raw is None:
        dmax = DEFAULT_DMAX
        notes.append("dmax defaulted to 255")
    else:
        dmax = int(round(float(dmax_raw)))

    return MtlMetadata(
        scene_id=str(scene_id),
        acquisition_date=date,
        day_of_year=date.timetuple().tm_yday,
        sun_elevation_deg=float(_require(values, ("SUN_ELEVATION",))),
        sun_azimuth_deg=float(_require(values, ("SUN_AZIMUTH",))),
        dmax=dmax,
        radiance_min=radiance_min,
        radiance_max=radiance_max,
        utm_zone=int(_require(values, _ZONE_KEYS)),
        corner_ul_easting=float(_require(values, _UL_X_KEYS)),
        corner_ul_northing=float(_require(values, _UL_Y_KEYS)),
        pixel_size=float(_require(values, _PIXEL_SIZE_KEYS)),
        rows=int(_require(values, _ROWS_KEYS)),
        cols=int(_require(values, _COLS_KEYS)),
        cloud_cover=float(values.get("CLOUD_COVER", 0.0)),
        notes=tuple(notes),
    )


def _fmt(value: float) -> str:
    # repr round-trips doubles exactly, keeping parse(serialize(m)) == m
    return repr(float(value))


def serialize_mtl(meta: MtlMetadata) -> str:
    """Emit the metadata as canonical MTL text (2012-era vocabulary)."""
    lines = [
        "GROUP = L1_METADATA_FILE",
        "  GROUP = METADATA_FILE_INFO",
        f'    LANDSAT_SCENE_ID = "{meta.scene_id}"',
        "  END_GROUP = METADATA_FILE_INFO",
        "  GROUP = PRODUCT_METADATA",
        f"    DATE_ACQUIRED = {meta.acquisition_date.isoformat()}",
        f"    REFLECTIVE_LINES = {meta.rows}",
        f"    REFLECTIVE_SAMPLES = {meta.cols}",
        f"    CORNER_UL_PROJECTION_X_PRODUCT = {_fmt(meta.corner_ul_easting)}",
        f"    CORNER_UL_PROJECTION_Y_PRODUCT = {_fmt(meta.corner_ul_northing)}",
        "  END_GROUP = PRODUCT_METADATA",
        "  GROUP = IMAGE_ATTRIBUTES",
        f"    CLOUD_COVER = {_fmt(meta.cloud_cover)}",
        f"    SUN_AZIMUTH = {_fmt(meta.sun_azimuth_deg)}",
        f"    SUN_ELEVATION = {_fmt(meta.sun_elevation_deg)}",
        "  END_GROUP = IMAGE_ATTRIBUTES",
        "  GROUP = MIN_MAX_RADIANCE",
    ]
    for band in REFLECTIVE_BANDS:
        lines.append(f"    RADIANCE_MAXIMUM_BAND_{band} = {_fmt(meta.radiance_max[band])}")
        lines.append(f"    RADIANCE_MINIMUM_BAND_{band} = {_fmt(meta.radiance_min[band])}")
    lines += [
        "  END_GROUP = MIN_MAX_RADIANCE",
        "  GROUP = MIN_MAX_PIXEL_VALUE",
        f"    QUANTIZE_CAL_MAX_BAND_1 = {meta.dmax}",
        "  END_GROUP = MIN_MAX_PIXEL_VALUE",
        "  GROUP = PROJECTION_PARAMETERS",
        f"    GRID_CELL_SIZE_REFLECTIVE = {_fmt(meta.pixel_size)}",
        f"    UTM_ZONE = {meta.utm_zone}",
        "  END_GROUP = PROJECTION_PARAMETERS",
        "END_GROUP = L1_METADATA_FILE",
        "END",
    ]
    return "\n".join(lines) + "\n"
