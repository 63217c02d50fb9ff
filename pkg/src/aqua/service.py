"""HTTP API backing the interactive seed-selection UI.

Calibrated stacks and index grids are cached per scene (LRU, default 3
scenes) so repeated clicks on one scene stay interactive. Registry
writes funnel through one lock; everything else is read-only and safe
under concurrent requests.
"""

from __future__ import annotations

import json
import threading
from collections import OrderedDict
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import cadastre, pipeline, render
from .calibration import ReflectanceStack
from .errors import (AquaError, NoBimodalStructureError, NotFoundError,
                     NoWaterNearSeedError, RecordValidationError,
                     RegistryConflictError)
from .geodesy import AdminBoundarySet, load_boundaries
from .indices import IndexGrid, IndexKind
from .ingest import ScenePackage, discover_packages, parse_scene_id
from .measurement import pixel_to_utm
from .mtl import parse_mtl
from .segmentation import SegmentParams

DEFAULT_CACHE_SCENES = 3


@dataclass
class ServiceConfig:
    data_root: Path
    registry_path: Path
    boundaries_path: Path | None = None
    cache_scenes: int = DEFAULT_CACHE_SCENES
    cors_origins: tuple[str, ...] = ("*",)
    ui_dir: Path | None = None


@dataclass
class _CacheEntry:
    package: ScenePackage
    stack: ReflectanceStack
    indices: dict[IndexKind, IndexGrid] = dc_field(default_factory=dict)


class SceneCache:
    """LRU over calibrated scenes; index grids piggyback on the entry."""

    def __init__(self, data_root: Path, capacity: int):
        self._data_root = data_root
        self._capacity = max(1, capacity)
        self._entries: OrderedDict[str, _CacheEntry] = OrderedDict()
        self._lock = threading.Lock()

    def entry(self, scene_id: str) -> _CacheEntry:
        with self._lock:
            if scene_id in self._entries:
                self._entries.move_to_end(scene_id)
                return self._entries[scene_id]
        ref = pipeline.find_scene(self._data_root, scene_id)
        pkg, stack = pipeline.load_stack(ref)
        entry = _CacheEntry(pkg, stack)
        with self._lock:
            self._entries[scene_id] = entry
            self._entries.move_to_end(scene_id)
            while len(self._entries) > self._capacity:
                self._entries.popitem(last=False)
        return entry

    def index_grid(self, scene_id: str, kind: IndexKind) -> tuple[_CacheEntry, IndexGrid]:
        entry = self.entry(scene_id)
        with self._lock:
            grid = entry.indices.get(kind)
        if grid is None:
            grid = pipeline.index_for(entry.stack, kind)
            with self._lock:
                entry.indices[kind] = grid
        return entry, grid


class SegmentRequest(BaseModel):
    kind: str = "mndwi"
    seed: tuple[int, int] = Field(description="(col, row) pixel coordinates")
    window: int = 101
    max_radius: float = 25.0


class RegisterRequest(BaseModel):
    scene_id: str
    name: str
    cuenca: str = ""
    year: int | None = None
    area_km2: float
    perimeter_km: float = 0.0
    centroid_lat: float
    centroid_lon: float
    region: str | None = None
    provincia: str | None = None
    distrito: str | None = None
    border_ring: list[tuple[float, float]] | None = None


def _error(status: int, code: str, message: str, detail: str = "") -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"code": code, "message": message, "detail": detail})


_ERROR_MAP: tuple[tuple[type[Exception], int, str], ...] = (
    (NotFoundError, 404, "not_found"),
    (NoWaterNearSeedError, 422, "no_water_near_seed"),
    (NoBimodalStructureError, 422, "no_bimodal_structure"),
    (RegistryConflictError, 409, "conflict"),
    (RecordValidationError, 400, "invalid_record"),
)


def create_app(config: ServiceConfig) -> FastAPI:
    app = FastAPI(title="aqua", version="0.1.0")
    app.add_middleware(CORSMiddleware, allow_origins=list(config.cors_origins),
                       allow_methods=["*"], allow_headers=["*"])

    cache = SceneCache(Path(config.data_root), config.cache_scenes)
    registry_lock = threading.Lock()
    boundaries: AdminBoundarySet | None = None
    if config.boundaries_path is not None:
        boundaries = load_boundaries(config.boundaries_path)

    @app.exception_handler(AquaError)
    async def aqua_error_handler(request: Request, exc: AquaError):
        for klass, status, code in _ERROR_MAP:
            if isinstance(exc, klass):
                return _error(status, code, str(exc))
        return _error(400, "domain_error", str(exc))

    @app.exception_handler(ValueError)
    async def value_error_handler(request: Request, exc: ValueError):
        return _error(400, "bad_request", str(exc))

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        return _error(400, "malformed_request", "request body failed validation",
                      detail=str(exc.errors()))

    @app.get("/scenes")
    def list_scenes() -> list[dict]:
        result = discover_packages(config.data_root)
        scenes = []
        for ref in result.packages:
            pkg_meta = parse_mtl(ref.mtl_file.read_text())
            gt = pipeline.geotransform_of(pkg_meta)
            lr_e, lr_n = pixel_to_utm(pkg_meta.rows - 1, pkg_meta.cols - 1, gt)
            scenes.append({
                "scene_id": ref.scene_id,
                "date": pkg_meta.acquisition_date.isoformat(),
                "rows": pkg_meta.rows,
                "cols": pkg_meta.cols,
                "utm_zone": pkg_meta.utm_zone,
                "cloud_cover": pkg_meta.cloud_cover,
                "bounds": {"ul_easting": gt.ul_easting, "ul_northing": gt.ul_northing,
                           "lr_easting": lr_e, "lr_northing": lr_n},
            })
        return scenes

    @app.get("/scenes/{scene_id}/composite")
    def composite(scene_id: str, bands: str = Query("5,4,3"), format: str = Query("ppm")):
        try:
            order = tuple(int(b) for b in bands.split(","))
        except ValueError:
            raise ValueError(f"bands must be three comma-separated numbers, got {bands!r}")
        if len(order) != 3:
            raise ValueError(f"bands must name exactly three bands, got {bands!r}")
        entry = cache.entry(scene_id)
        pixels = render.false_color(entry.stack, order)  # unknown band -> ValueError
        payload = render.encode_image(pixels, format)
        media = "image/png" if format.lower() == "png" else "image/x-portable-pixmap"
        return Response(content=payload, media_type=media)

    @app.post("/scenes/{scene_id}/segment")
    def segment(scene_id: str, req: SegmentRequest) -> dict:
        try:
            kind = IndexKind(req.kind.lower())
        except ValueError:
            raise ValueError(f"unknown index kind {req.kind!r}")
        col, row = req.seed
        if col < 0 or row < 0:
            raise ValueError("seed coordinates must be non-negative")
        params = SegmentParams(window=req.window, max_radius=req.max_radius)
        entry, grid = cache.index_grid(scene_id, kind)
        outcome = pipeline.segment_and_measure(grid, (row, col), params,
                                               entry.package.metadata, boundaries)
        return outcome.to_dict()

    @app.post("/registry", status_code=201)
    def register(req: RegisterRequest) -> dict:
        year = req.year
        if year is None:
            year = parse_scene_id(req.scene_id).year
        ring = tuple((lon, lat) for lon, lat in req.border_ring) if req.border_ring else None
        record = cadastre.CadastralRecord(
            scene_id=req.scene_id, year=year, name=req.name, cuenca=req.cuenca,
            area_km2=req.area_km2, perimeter_km=req.perimeter_km,
            centroid_lat=req.centroid_lat, centroid_lon=req.centroid_lon,
            region=req.region, provincia=req.provincia, distrito=req.distrito,
            border_ring=ring)
        with registry_lock:
            record_id = cadastre.append_record(config.registry_path, record)
        return {"id": record_id, "record": _record_dict(record)}

    @app.get("/registry")
    def list_records(name: str | None = None) -> list[dict]:
        records = cadastre.load_registry(config.registry_path)
        if name is not None:
            records = [r for r in records if r.name == name]
        return [_record_dict(r) for r in records]

    @app.get("/registry/{name}/timeline")
    def registry_timeline(name: str) -> dict:
        tl = cadastre.timeline(config.registry_path, name)
        return {"name": tl.name,
                "points": [[year, area] for year, area in tl.points],
                "areas": [area for _, area in tl.points],
                "deltas": list(tl.deltas)}

    @app.get("/registry.kml")
    def registry_kml() -> Response:
        records = cadastre.load_registry(config.registry_path)
        return Response(content=cadastre.export_kml(records),
                        media_type="application/vnd.google-earth.kml+xml")

    if config.ui_dir is not None and Path(config.ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/ui", StaticFiles(directory=str(config.ui_dir), html=True), name="ui")

    return app


def _record_dict(record: cadastre.CadastralRecord) -> dict:
    return json.loads(record.to_json())
