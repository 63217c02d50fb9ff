"""End-to-end flow shared by the CLI and the HTTP service:
scene lookup -> calibration -> index -> segmentation -> measurement ->
geodetic centroid -> administrative attribution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calibration import ReflectanceStack, calibrate_scene
from .errors import NotFoundError
from .geodesy import (AdminBoundarySet, AdminLocation, GeodeticCoord, UtmCoord,
                      locate_admin, utm_to_geodetic)
from .indices import IndexGrid, IndexKind, compute_index
from .ingest import ScenePackage, ScenePackageRef, discover_packages, load_package, parse_scene_id
from .measurement import (GeoTransform, Hemisphere, RegionMetrics, pixel_to_utm,
                          region_metrics, trace_outer_ring)
from .mtl import MtlMetadata
from .segmentation import SegmentationResult, SegmentParams, segment_at_seed


def find_scene(data_root, scene_id: str) -> ScenePackageRef:
    result = discover_packages(data_root)
    for ref in result.packages:
        if ref.scene_id == scene_id:
            return ref
    known = ", ".join(r.scene_id for r in result.packages) or "none"
    raise NotFoundError(f"scene {scene_id!r} not found under {data_root} (known: {known})")


def geotransform_of(meta: MtlMetadata) -> GeoTransform:
    try:
        hemisphere = Hemisphere(parse_scene_id(meta.scene_id).hemisphere)
    except Exception:
        hemisphere = Hemisphere.NORTH
    return GeoTransform(meta.corner_ul_easting, meta.corner_ul_northing,
                        meta.pixel_size, meta.utm_zone, hemisphere)


def rle_encode(mask: np.ndarray) -> dict:
    """Row-major run-length encoding; runs alternate false/true counts,
    starting with false."""
    flat = np.asarray(mask, dtype=bool).ravel()
    runs: list[int] = []
    if flat.size:
        changes = np.flatnonzero(np.diff(flat.astype(np.int8))) + 1
        edges = np.concatenate(([0], changes, [flat.size]))
        lengths = np.diff(edges).tolist()
        if flat[0]:
            runs.append(0)
        runs.extend(int(n) for n in lengths)
    h, w = np.asarray(mask).shape
    return {"width": int(w), "height": int(h), "runs": runs}


def rle_decode(encoded: dict) -> np.ndarray:
    w, h = encoded["width"], encoded["height"]
    flat = np.zeros(w * h, dtype=bool)
    pos = 0
    value = False
    for run in encoded["runs"]:
        if value:
            flat[pos:pos + run] = True
        pos += run
        value = not value
    if pos != w * h:
        raise ValueError("run lengths do not cover the mask")
    return flat.reshape(h, w)


@dataclass(frozen=True)
class SegmentOutcome:
    scene_id: str
    segmentation: SegmentationResult
    metrics: RegionMetrics
    centroid_geodetic: GeodeticCoord
    admin: AdminLocation
    border_ring_pixels: list[tuple[int, int]]        # (col, row)
    border_ring_geodetic: list[tuple[float, float]]  # (lon, lat)

    def to_dict(self) -> dict:
        seg = self.segmentation
        m = self.metrics
        return {
            "scene_id": self.scene_id,
            "index_kind": seg.index_kind.value,
            "threshold": seg.threshold,
            "window": seg.window_size,
            "pixel_count": seg.region.pixel_count,
            "area_km2": m.area_km2,
            "perimeter_km": m.perimeter_km,
            "p_lado": m.p_lado,
            "p_diag": m.p_diag,
            "centroid_pixel": {"row": m.centroid_pixel[0], "col": m.centroid_pixel[1]},
            "centroid_utm": {"easting": m.centroid_utm[0], "northing": m.centroid_utm[1]},
            "centroid": {"lat": self.centroid_geodetic.latitude,
                         "lon": self.centroid_geodetic.longitude},
            "admin": {"region": self.admin.region, "provincia": self.admin.provincia,
                      "distrito": self.admin.distrito},
            "border_ring_pixels": [[c, r] for (c, r) in self.border_ring_pixels],
            "border_ring": [[lon, lat] for (lon, lat) in self.border_ring_geodetic],
            "mask_rle": rle_encode(self.segmentation.region.member),
            "flags": list(seg.flags) + list(self.admin.flags),
        }


def segment_and_measure(grid: IndexGrid, seed: tuple[int, int], params: SegmentParams,
                        meta: MtlMetadata,
                        boundaries: AdminBoundarySet | None = None) -> SegmentOutcome:
    """Segment at a (row, col) seed and derive every measured/derived field."""
    seg = segment_at_seed(grid, seed, params)
    gt = geotransform_of(meta)
    metrics = region_metrics(seg.region, gt)
    centroid_geo = utm_to_geodetic(UtmCoord(metrics.centroid_utm[0], metrics.centroid_utm[1],
                                            gt.utm_zone, gt.hemisphere.value))
    admin = (locate_admin(centroid_geo, boundaries)
             if boundaries is not None else AdminLocation())

    ring_px = trace_outer_ring(seg.border)
    ring_pixels = [(c, r) for (r, c) in ring_px]
    ring_geo = []
    for r, c in ring_px:
        e, n = pixel_to_utm(r, c, gt)
        pt = utm_to_geodetic(UtmCoord(e, n, gt.utm_zone, gt.hemisphere.value))
        ring_geo.append((pt.longitude, pt.latitude))
    return SegmentOutcome(meta.scene_id, seg, metrics, centroid_geo, admin,
                          ring_pixels, ring_geo)


def load_stack(ref: ScenePackageRef) -> tuple[ScenePackage, ReflectanceStack]:
    pkg = load_package(ref)
    return pkg, calibrate_scene(pkg)


def index_for(stack: ReflectanceStack, kind: IndexKind) -> IndexGrid:
    return compute_index(stack, kind)
