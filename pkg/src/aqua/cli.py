"""Batch command-line front end.

Machine-readable JSON goes to stdout, diagnostics go to stderr.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from . import cadastre, pipeline, render
from .calibration import earth_sun_distance
from .errors import AquaError
from .indices import IndexKind
from .ingest import discover_packages, parse_scene_id
from .segmentation import SegmentParams

ENV_DATA_ROOT = "AQUA_DATA_ROOT"


@dataclass(frozen=True)
class CliConfig:
    data_root: Path = Path(".")
    registry_path: Path | None = None
    boundaries_path: Path | None = None
    window: int = 101
    max_radius: float = 25.0
    stretch: tuple[float, float] = (2.0, 98.0)

    def registry(self) -> Path:
        return self.registry_path if self.registry_path is not None \
            else self.data_root / "registry.jsonl"


def read_config_file(path: Path) -> dict[str, str]:
    """`key = value` lines; '#' starts a comment."""
    values: dict[str, str] = {}
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise AquaError(f"config line {raw!r} is not key = value")
        key, value = line.split("=", 1)
        values[key.strip().lower()] = value.strip()
    return values


def resolve_config(args: argparse.Namespace) -> CliConfig:
    """Precedence: flag > config file > environment > default."""
    cfg = CliConfig()
    env_root = os.environ.get(ENV_DATA_ROOT)
    if env_root:
        cfg = replace(cfg, data_root=Path(env_root))
    if args.config is not None:
        raw = read_config_file(Path(args.config))
        if "data_root" in raw:
            cfg = replace(cfg, data_root=Path(raw["data_root"]))
        if "registry" in raw:
            cfg = replace(cfg, registry_path=Path(raw["registry"]))
        if "boundaries" in raw:
            cfg = replace(cfg, boundaries_path=Path(raw["boundaries"]))
        if "window" in raw:
            cfg = replace(cfg, window=int(raw["window"]))
        if "max_radius" in raw:
            cfg = replace(cfg, max_radius=float(raw["max_radius"]))
        if "stretch_low" in raw or "stretch_high" in raw:
            low = float(raw.get("stretch_low", cfg.stretch[0]))
            high = float(raw.get("stretch_high", cfg.stretch[1]))
            cfg = replace(cfg, stretch=(low, high))
    if args.data_root is not None:
        cfg = replace(cfg, data_root=Path(args.data_root))
    if args.registry is not None:
        cfg = replace(cfg, registry_path=Path(args.registry))
    if args.boundaries is not None:
        cfg = replace(cfg, boundaries_path=Path(args.boundaries))
    return cfg


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _parse_seed(text: str) -> tuple[int, int]:
    try:
        col_s, row_s = text.split(",")
        return int(col_s), int(row_s)
    except ValueError:
        raise AquaError(f"seed must be COL,ROW integers, got {text!r}")


def _parse_seed_utm(text: str) -> tuple[float, float]:
    try:
        e_s, n_s = text.split(",")
        return float(e_s), float(n_s)
    except ValueError:
        raise AquaError(f"--seed-utm must be EASTING,NORTHING, got {text!r}")


def _seed_row_col(args, meta) -> tuple[int, int]:
    """Seeds are pixel COL,ROW; --seed-utm converts through the transform."""
    if getattr(args, "seed_utm", None):
        easting, northing = _parse_seed_utm(args.seed_utm)
        gt = pipeline.geotransform_of(meta)
        row = int(round((gt.ul_northing - northing) / gt.pixel_size))
        col = int(round((easting - gt.ul_easting) / gt.pixel_size))
        return row, col
    if not getattr(args, "seed", None):
        raise AquaError("one of --seed or --seed-utm is required")
    col, row = _parse_seed(args.seed)
    return row, col


def cmd_ingest(args, cfg: CliConfig) -> int:
    root = Path(args.directory) if args.directory else cfg.data_root
    result = discover_packages(root)
    for bad in result.invalid:
        print(f"invalid package {bad.root_path}: {bad.reason}", file=sys.stderr)
    _emit({
        "packages": [{
            "scene_id": ref.scene_id,
            "path": str(ref.root_path),
            "mtl": str(ref.mtl_file),
            "bands": {str(b): str(p) for b, p in sorted(ref.band_files.items())},
        } for ref in result.packages],
        "invalid": [{"path": str(b.root_path), "reason": b.reason}
                    for b in result.invalid],
    })
    return 0


def cmd_calibrate(args, cfg: CliConfig) -> int:
    ref = pipeline.find_scene(cfg.data_root, args.scene)
    pkg, stack = pipeline.load_stack(ref)
    atm = stack.atmosphere
    _emit({
        "scene_id": pkg.scene_id,
        "bands": {str(b): {
            "dark_object_nd": atm.dark_nd_per_band[b],
            "path_radiance": atm.la_per_band[b],
            "t1": atm.t1_per_band[b],
            "negative_reflectance_pixels": stack.negative_counts[b],
            "reflectance_min": float(stack.grids[b].min()),
            "reflectance_max": float(stack.grids[b].max()),
        } for b in sorted(stack.grids)},
        "t2": atm.t2,
        "earth_sun_distance_au": earth_sun_distance(pkg.metadata.day_of_year),
    })
    return 0


def cmd_index(args, cfg: CliConfig) -> int:
    ref = pipeline.find_scene(cfg.data_root, args.scene)
    _, stack = pipeline.load_stack(ref)
    grid = pipeline.index_for(stack, IndexKind(args.kind))
    _emit({
        "scene_id": ref.scene_id,
        "kind": grid.kind.value,
        "water_polarity": grid.water_polarity.value,
        "min": float(grid.values.min()),
        "max": float(grid.values.max()),
        "mean": float(grid.values.mean()),
        "degenerate_pixels": grid.degenerate_count,
    })
    return 0


def _run_segment(args, cfg: CliConfig):
    ref = pipeline.find_scene(cfg.data_root, args.scene)
    pkg, stack = pipeline.load_stack(ref)
    grid = pipeline.index_for(stack, IndexKind(args.kind))
    seed = _seed_row_col(args, pkg.metadata)
    params = SegmentParams(window=args.window or cfg.window,
                           max_radius=args.max_radius if args.max_radius is not None
                           else cfg.max_radius)
    boundaries = None
    if cfg.boundaries_path is not None:
        from .geodesy import load_boundaries
        boundaries = load_boundaries(cfg.boundaries_path)
    outcome = pipeline.segment_and_measure(grid, seed, params, pkg.metadata, boundaries)
    return pkg, outcome


def cmd_segment(args, cfg: CliConfig) -> int:
    _, outcome = _run_segment(args, cfg)
    _emit(outcome.to_dict())
    return 0


def cmd_register(args, cfg: CliConfig) -> int:
    pkg, outcome = _run_segment(args, cfg)
    record = cadastre.CadastralRecord(
        scene_id=pkg.scene_id,
        year=parse_scene_id(pkg.scene_id).year,
        name=args.name,
        cuenca=args.cuenca,
        area_km2=outcome.metrics.area_km2,
        perimeter_km=outcome.metrics.perimeter_km,
        centroid_lat=outcome.centroid_geodetic.latitude,
        centroid_lon=outcome.centroid_geodetic.longitude,
        region=outcome.admin.region,
        provincia=outcome.admin.provincia,
        distrito=outcome.admin.distrito,
        border_ring=tuple(outcome.border_ring_geodetic) or None,
    )
    record_id = cadastre.append_record(cfg.registry(), record)
    mask_path = cadastre.store_mask_artifact(cfg.registry(), pkg.scene_id, args.name,
                                             outcome.segmentation.region.member)
    print(f"mask artifact: {mask_path}", file=sys.stderr)
    _emit({"id": record_id, "record": json.loads(record.to_json()),
           "mask_artifact": str(mask_path)})
    return 0


def cmd_timeline(args, cfg: CliConfig) -> int:
    tl = cadastre.timeline(cfg.registry(), args.name)
    _emit({
        "name": tl.name,
        "points": [[year, area] for year, area in tl.points],
        "areas": [area for _, area in tl.points],
        "deltas": list(tl.deltas),
    })
    return 0


def cmd_export_kml(args, cfg: CliConfig) -> int:
    records = cadastre.load_registry(cfg.registry())
    text = cadastre.export_kml(records)
    Path(args.out).write_text(text)
    _emit({"count": len(records), "path": str(args.out)})
    return 0


def cmd_render(args, cfg: CliConfig) -> int:
    ref = pipeline.find_scene(cfg.data_root, args.scene)
    _, stack = pipeline.load_stack(ref)
    try:
        order = tuple(int(b) for b in args.composite.split(","))
    except ValueError:
        raise AquaError(f"--composite must be three comma-separated bands, got {args.composite!r}")
    if len(order) != 3:
        raise AquaError(f"--composite must name exactly three bands, got {args.composite!r}")
    pixels = render.false_color(stack, order, cfg.stretch)
    render.write_image(args.out, pixels)
    _emit({"path": str(args.out), "width": int(pixels.shape[1]),
           "height": int(pixels.shape[0])})
    return 0


def cmd_serve(args, cfg: CliConfig) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    ui_dir = Path(args.ui_dir) if args.ui_dir else None
    app = create_app(ServiceConfig(
        data_root=cfg.data_root,
        registry_path=cfg.registry(),
        boundaries_path=cfg.boundaries_path,
        ui_dir=ui_dir,
    ))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aqua",
        description="Landsat-5 water-body cadastre toolkit")
    parser.add_argument("--data-root", help=f"scene package root (default ${ENV_DATA_ROOT} or .)")
    parser.add_argument("--registry", help="registry file (default <data-root>/registry.jsonl)")
    parser.add_argument("--boundaries", help="administrative boundary JSON")
    parser.add_argument("--config", help="key = value config file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="discover scene packages")
    p.add_argument("directory", nargs="?", help="directory to scan (default: data root)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("calibrate", help="calibrate a scene to surface reflectance")
    p.add_argument("scene")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("index", help="compute a water/vegetation index")
    p.add_argument("scene")
    p.add_argument("--kind", required=True, choices=[k.value for k in IndexKind])
    p.set_defaults(func=cmd_index)

    def add_segment_flags(p):
        p.add_argument("--kind", default="mndwi", choices=[k.value for k in IndexKind])
        p.add_argument("--seed", help="seed pixel COL,ROW")
        p.add_argument("--seed-utm", help="seed EASTING,NORTHING in meters")
        p.add_argument("--window", type=int, default=None, help="odd window size in pixels")
        p.add_argument("--max-radius", type=float, default=None,
                       help="seed search radius in pixels")

    p = sub.add_parser("segment", help="segment a water body at a seed")
    p.add_argument("scene")
    add_segment_flags(p)
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("register", help="segment and register a water body")
    p.add_argument("scene")
    add_segment_flags(p)
    p.add_argument("--name", required=True)
    p.add_argument("--cuenca", required=True, help="hydrographic basin name")
    p.set_defaults(func=cmd_register)

    p = sub.add_parser("timeline", help="area history of a registered water body")
    p.add_argument("--name", required=True)
    p.set_defaults(func=cmd_timeline)

    p = sub.add_parser("export-kml", help="export the registry as KML")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_kml)

    p = sub.add_parser("render", help="write a false-color composite")
    p.add_argument("scene")
    p.add_argument("--composite", default="5,4,3")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", help="static directory to mount at /ui")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return args.func(args, cfg)
    except (AquaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
