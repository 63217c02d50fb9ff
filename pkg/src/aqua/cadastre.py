"""Cadastral registry of measured water bodies.

Persistence is an append-only line-delimited JSON file whose first line
is a schema-version header; every later line is one record. Appends are
single atomic writes, so the file stays valid line-delimited JSON after
any crash. Temporal queries and KML export read the same file.
"""

from __future__ import annotations

import dataclasses
import datetime as dt
import json
import os
import re
import xml.etree.ElementTree as ET
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import pnm
from .errors import NotFoundError, RecordValidationError, RegistryConflictError
from .ingest import parse_scene_id
from .measurement import decimate_ring

SCHEMA_HEADER = {"schema": "aqua-registry", "version": 1}
KML_NS = "http://www.opengis.net/kml/2.2"
MAX_KML_RING_VERTICES = 500


@dataclass(frozen=True)
class CadastralRecord:
    scene_id: str
    year: int
    name: str
    cuenca: str
    area_km2: float
    perimeter_km: float
    centroid_lat: float
    centroid_lon: float
    region: str | None = None
    provincia: str | None = None
    distrito: str | None = None
    registered_at: str = ""
    border_ring: tuple[tuple[float, float], ...] | None = None  # (lon, lat)

    def validate(self) -> None:
        problems = []
        if self.area_km2 <= 0:
            problems.append(f"area_km2 {self.area_km2} must be positive")
        if not (-90.0 <= self.centroid_lat <= 90.0):
            problems.append(f"centroid_lat {self.centroid_lat} outside [-90, 90]")
        if not (-180.0 <= self.centroid_lon <= 180.0):
            problems.append(f"centroid_lon {self.centroid_lon} outside [-180, 180]")
        if self.perimeter_km < 0:
            problems.append(f"perimeter_km {self.perimeter_km} must be >= 0")
        if not self.name:
            problems.append("name must not be empty")
        try:
            embedded = parse_scene_id(self.scene_id).year
            if embedded != self.year:
                problems.append(f"year {self.year} does not match scene id year {embedded}")
        except Exception as exc:
            problems.append(str(exc))
        if problems:
            raise RecordValidationError(problems)

    def to_json(self) -> str:
        data = asdict(self)
        if data["border_ring"] is not None:
            data["border_ring"] = [list(v) for v in data["border_ring"]]
        return json.dumps(data, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "CadastralRecord":
        ring = data.get("border_ring")
        if ring is not None:
            ring = tuple((float(lon), float(lat)) for lon, lat in ring)
        return cls(
            scene_id=data["scene_id"], year=int(data["year"]), name=data["name"],
            cuenca=data.get("cuenca", ""), area_km2=float(data["area_km2"]),
            perimeter_km=float(data.get("perimeter_km", 0.0)),
            centroid_lat=float(data["centroid_lat"]),
            centroid_lon=float(data["centroid_lon"]),
            region=data.get("region"), provincia=data.get("provincia"),
            distrito=data.get("distrito"),
            registered_at=data.get("registered_at", ""),
            border_ring=ring,
        )


def load_registry(path: str | Path) -> list[CadastralRecord]:
    path = Path(path)
    if not path.exists():
        return []
    records = []
    with path.open() as fh:
        first = fh.readline()
        if not first.strip():
            return []
        header = json.loads(first)
        if header.get("schema") != SCHEMA_HEADER["schema"]:
            raise RecordValidationError([f"unexpected registry header {header!r}"])
        for line in fh:
            if line.strip():
                records.append(CadastralRecord.from_dict(json.loads(line)))
    return records


def append_record(path: str | Path, record: CadastralRecord) -> int:
    """Append one validated record; returns its 1-based id.

    A record with the same (scene_id, name) as an existing one is a
    conflict. The write is a single buffered write + fsync.
    """
    record.validate()
    path = Path(path)
    existing = load_registry(path)
    for prior in existing:
        if (prior.scene_id, prior.name) == (record.scene_id, record.name):
            raise RegistryConflictError(
                f"record for scene {record.scene_id} name {record.name!r} already exists")
    if not record.registered_at:
        stamp = dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds")
        record = dataclasses.replace(record, registered_at=stamp)
    payload = ""
    if not path.exists() or path.stat().st_size == 0:
        payload += json.dumps(SCHEMA_HEADER, sort_keys=True) + "\n"
    payload += record.to_json() + "\n"
    with path.open("a") as fh:
        fh.write(payload)
        fh.flush()
        os.fsync(fh.fileno())
    return len(existing) + 1


@dataclass(frozen=True)
class Timeline:
    name: str
    points: tuple[tuple[int, float], ...]  # (year, area_km2), years increasing
    deltas: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        years = [y for y, _ in self.points]
        if years != sorted(set(years)):
            raise ValueError("timeline years must be strictly increasing")
        areas = [a for _, a in self.points]
        object.__setattr__(self, "deltas",
                           tuple(b - a for a, b in zip(areas, areas[1:])))


def timeline(records: list[CadastralRecord] | str | Path, name: str) -> Timeline:
    if not isinstance(records, list):
        records = load_registry(records)
    matching = [r for r in records if r.name == name]
    if not matching:
        raise NotFoundError(f"no registered water body named {name!r}")
    by_year: dict[int, float] = {}
    for r in matching:  # later registrations of the same year win
        by_year[r.year] = r.area_km2
    points = tuple(sorted(by_year.items()))
    return Timeline(name, points)


def _coords(lon: float, lat: float) -> str:
    return f"{lon},{lat}"


def export_kml(records: list[CadastralRecord], document_name: str = "aqua registry") -> str:
    """KML 2.2 document with one Placemark per record: centroid Point,
    optional border Polygon (decimated), and area/perimeter/year data."""
    ET.register_namespace("", KML_NS)
    kml = ET.Element(f"{{{KML_NS}}}kml")
    doc = ET.SubElement(kml, f"{{{KML_NS}}}Document")
    ET.SubElement(doc, f"{{{KML_NS}}}name").text = document_name
    for record in records:
        placemark = ET.SubElement(doc, f"{{{KML_NS}}}Placemark")
        ET.SubElement(placemark, f"{{{KML_NS}}}name").text = record.name
        extended = ET.SubElement(placemark, f"{{{KML_NS}}}ExtendedData")
        for key, value in (("area_km2", record.area_km2),
                           ("perimeter_km", record.perimeter_km),
                           ("year", record.year),
                           ("cuenca", record.cuenca),
                           ("scene_id", record.scene_id)):
            data = ET.SubElement(extended, f"{{{KML_NS}}}Data", attrib={"name": key})
            ET.SubElement(data, f"{{{KML_NS}}}value").text = str(value)
        point_coords = _coords(record.centroid_lon, record.centroid_lat)
        if record.border_ring:
            geometry = ET.SubElement(placemark, f"{{{KML_NS}}}MultiGeometry")
            point = ET.SubElement(geometry, f"{{{KML_NS}}}Point")
            ET.SubElement(point, f"{{{KML_NS}}}coordinates").text = point_coords
            ring = list(record.border_ring)
            if ring[0] != ring[-1]:
                ring.append(ring[0])
            ring = decimate_ring(ring, MAX_KML_RING_VERTICES)
            if ring[0] != ring[-1]:
                ring.append(ring[0])
            polygon = ET.SubElement(geometry, f"{{{KML_NS}}}Polygon")
            outer = ET.SubElement(polygon, f"{{{KML_NS}}}outerBoundaryIs")
            linear = ET.SubElement(outer, f"{{{KML_NS}}}LinearRing")
            ET.SubElement(linear, f"{{{KML_NS}}}coordinates").text = " ".join(
                _coords(lon, lat) for lon, lat in ring)
        else:
            point = ET.SubElement(placemark, f"{{{KML_NS}}}Point")
            ET.SubElement(point, f"{{{KML_NS}}}coordinates").text = point_coords
    ET.indent(kml)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(kml, encoding="unicode") + "\n"


def _safe_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name)


def store_mask_artifact(registry_path: str | Path, scene_id: str, name: str,
                        mask: np.ndarray) -> Path:
    """Write the segmentation mask as a PGM (0/255) next to the registry."""
    masks_dir = Path(registry_path).parent / "masks"
    masks_dir.mkdir(parents=True, exist_ok=True)
    out = masks_dir / f"{_safe_name(scene_id)}_{_safe_name(name)}.pgm"
    grid = np.where(np.asarray(mask, dtype=bool), 255, 0).astype(np.uint8)
    pnm.write_pgm(out, grid)
    return out
