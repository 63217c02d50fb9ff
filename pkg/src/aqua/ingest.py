"""Scene package discovery and band raster loading.

A package is one Landsat-5 acquisition directory: an MTL metadata file
plus the six reflective band rasters (bands 1-5 and 7). Band 6
(thermal) files are ignored when present. Band files may be the
baseline-TIFF subset or binary PGM (fixtures).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import pnm, tiff
from .constants import REFLECTIVE_BANDS
from .errors import PackageError
from .mtl import MtlMetadata, parse_mtl

SCENE_ID_PATTERN = re.compile(
    r"^LT5(?P<path>\d{3})(?P<row>\d{3})(?P<year>\d{4})(?P<doy>\d{3})(?P<suffix>\w+)$"
)
_BAND_EXTENSIONS = (".tif", ".tiff", ".pgm")


@dataclass(frozen=True)
class SceneId:
    scene_id: str
    wrs_path: int
    wrs_row: int
    year: int
    day_of_year: int

    @property
    def hemisphere(self) -> str:
        # WRS-2 rows beyond the descending equator crossing are southern
        return "South" if self.wrs_row >= 61 else "North"


def parse_scene_id(scene_id: str) -> SceneId:
    m = SCENE_ID_PATTERN.match(scene_id)
    if m is None:
        raise PackageError(f"scene id {scene_id!r} does not match the Landsat-5 pattern")
    doy = int(m.group("doy"))
    if not (1 <= doy <= 366):
        raise PackageError(f"scene id {scene_id!r} has day-of-year {doy} outside 1..366")
    return SceneId(scene_id, int(m.group("path")), int(m.group("row")),
                   int(m.group("year")), doy)


@dataclass(frozen=True)
class ScenePackageRef:
    scene_id: str
    root_path: Path
    band_files: dict[int, Path]
    mtl_file: Path


@dataclass(frozen=True)
class InvalidPackage:
    root_path: Path
    reason: str


@dataclass(frozen=True)
class DiscoveryResult:
    packages: list[ScenePackageRef]
    invalid: list[InvalidPackage]


def _find_mtl(directory: Path) -> Path | None:
    hits = sorted(p for p in directory.iterdir()
                  if p.is_file() and p.name.upper().endswith("_MTL.TXT"))
    return hits[0] if hits else None


def _find_band_file(directory: Path, scene_id: str, band: int) -> Path | None:
    stem = f"{scene_id}_B{band}".upper()
    hits = sorted(p for p in directory.iterdir()
                  if p.is_file()
                  and p.suffix.lower() in _BAND_EXTENSIONS
                  and p.stem.upper() == stem)
    return hits[0] if hits else None


def examine_package_dir(directory: Path) -> ScenePackageRef | InvalidPackage | None:
    """Classify one directory: a package ref, an invalid report, or not a
    package at all (no MTL file)."""
    mtl_file = _find_mtl(directory)
    if mtl_file is None:
        return None
    scene_id = mtl_file.name[: -len("_MTL.TXT")]
    try:
        parse_scene_id(scene_id)
    except PackageError as exc:
        return InvalidPackage(directory, str(exc))
    band_files: dict[int, Path] = {}
    missing: list[int] = []
    for band in REFLECTIVE_BANDS:
        path = _find_band_file(directory, scene_id, band)
        if path is None:
            missing.append(band)
        else:
            band_files[band] = path
    if missing:
        return InvalidPackage(
            directory,
            f"missing band file(s) {', '.join(str(b) for b in missing)} "
            f"for scene {scene_id}")
    return ScenePackageRef(scene_id, directory, band_files, mtl_file)


def discover_packages(root: str | Path) -> DiscoveryResult:
    """Scan the immediate subdirectories of `root` for scene packages.

    Output order is lexicographic by scene_id regardless of filesystem
    enumeration order; incomplete packages are reported, not dropped.
    """
    root = Path(root)
    if not root.is_dir():
        raise OSError(f"data root {root} is not a readable directory")
    packages: list[ScenePackageRef] = []
    invalid: list[InvalidPackage] = []
    for sub in sorted(p for p in root.iterdir() if p.is_dir()):
        result = examine_package_dir(sub)
        if isinstance(result, ScenePackageRef):
            packages.append(result)
        elif isinstance(result, InvalidPackage):
            invalid.append(result)
    packages.sort(key=lambda ref: ref.scene_id)
    invalid.sort(key=lambda bad: str(bad.root_path))
    return DiscoveryResult(packages, invalid)


@dataclass(frozen=True)
class BandRaster:
    band_number: int
    nd: np.ndarray  # (height, width) uint8 digital numbers

    @property
    def height(self) -> int:
        return self.nd.shape[0]

    @property
    def width(self) -> int:
        return self.nd.shape[1]


_BAND_SUFFIX = re.compile(r"_B(\d)$", re.IGNORECASE)


def read_band_raster(path: str | Path, band_number: int | None = None) -> BandRaster:
    """Decode one band file (TIFF baseline subset or binary PGM).

    Format is sniffed from the leading bytes, not the extension. The band
    number is taken from the `_B<n>` file-name suffix when not given.
    """
    path = Path(path)
    if band_number is None:
        m = _BAND_SUFFIX.search(path.stem)
        if m is None:
            raise PackageError(f"cannot infer band number from file name {path.name!r}")
        band_number = int(m.group(1))
    data = path.read_bytes()
    if data[:2] in (b"II", b"MM"):
        grid = tiff.decode_tiff(data)
    elif data[:2] == b"P5":
        grid = pnm.decode_pgm(data)
    else:
        raise PackageError(f"{path.name}: neither baseline TIFF nor binary PGM")
    return BandRaster(band_number, grid)


@dataclass(frozen=True)
class ScenePackage:
    ref: ScenePackageRef
    metadata: MtlMetadata
    bands: dict[int, BandRaster]

    @property
    def scene_id(self) -> str:
        return self.ref.scene_id

    @property
    def shape(self) -> tuple[int, int]:
        first = self.bands[REFLECTIVE_BANDS[0]]
        return first.nd.shape


def load_package(ref: ScenePackageRef) -> ScenePackage:
    metadata = parse_mtl(ref.mtl_file.read_text())
    bands: dict[int, BandRaster] = {}
    shape: tuple[int, int] | None = None
    for band in REFLECTIVE_BANDS:
        if band not in ref.band_files:
            raise PackageError(f"scene {ref.scene_id}: missing band {band}")
        raster = read_band_raster(ref.band_files[band], band_number=band)
        if shape is None:
            shape = raster.nd.shape
        elif raster.nd.shape != shape:
            raise PackageError(
                f"scene {ref.scene_id}: band {band} is {raster.nd.shape}, "
                f"expected {shape}")
        bands[band] = raster
    return ScenePackage(ref, metadata, bands)
