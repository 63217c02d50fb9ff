"""UTM to geodetic conversion and administrative boundary lookup.

The conversion is the closed-form Coticchia-Surace series on the
Hayford (International 1924) ellipsoid, mirroring the original routine
step for step: the false-easting/false-northing removal, the
6366197.724-based first latitude estimate, the J2/J4/J6 arc series, and
the final latitude correction term. Results are therefore
Hayford-referenced even though Landsat products are WGS84; the
difference (hundreds of meters on the ground) is accepted, not
corrected.

Administrative attribution is an even-odd ray-casting point-in-polygon
over named region/provincia/distrito rings loaded from JSON.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import AquaError


@dataclass(frozen=True)
class Ellipsoid:
    semi_major: float
    semi_minor: float

    @property
    def eccentricity(self) -> float:
        a, b = self.semi_major, self.semi_minor
        return math.sqrt(a * a - b * b) / a

    @property
    def second_eccentricity(self) -> float:
        a, b = self.semi_major, self.semi_minor
        return math.sqrt(a * a - b * b) / b

    @property
    def polar_radius(self) -> float:
        return self.semi_major ** 2 / self.semi_minor


HAYFORD = Ellipsoid(semi_major=6378388.0, semi_minor=6356911.946130)

_K0 = 0.9996
_FIRST_ESTIMATE_RADIUS = 6366197.724


@dataclass(frozen=True)
class UtmCoord:
    easting: float
    northing: float
    zone: int
    hemisphere: str  # "North" | "South"

    def __post_init__(self):
        if not (1 <= self.zone <= 60):
            raise ValueError(f"UTM zone {self.zone} outside 1..60")
        if self.hemisphere not in ("North", "South"):
            raise ValueError(f"hemisphere must be North or South, got {self.hemisphere!r}")

    @property
    def central_meridian_deg(self) -> int:
        return self.zone * 6 - 183


@dataclass(frozen=True)
class GeodeticCoord:
    latitude: float
    longitude: float

    def __post_init__(self):
        if not (-90.0 <= self.latitude <= 90.0):
            raise ValueError(f"latitude {self.latitude} outside [-90, 90]")
        if not (-180.0 <= self.longitude <= 180.0):
            raise ValueError(f"longitude {self.longitude} outside [-180, 180]")


def utm_to_geodetic(u: UtmCoord) -> GeodeticCoord:
    """Coticchia-Surace inverse transverse Mercator on Hayford."""
    X = u.easting
    Y = u.northing
    if Y < 0:
        Y = Y + 10000000.0
    e_prime = HAYFORD.second_eccentricity
    c = HAYFORD.polar_radius
    X = X - 500000.0
    if u.hemisphere == "South":
        Y = Y - 10000000.0
    lambda_cent = u.zone * 6 - 183

    phi = Y / (_FIRST_ESTIMATE_RADIUS * _K0)
    cos_phi = math.cos(phi)
    nu = c * _K0 / math.sqrt(1 + e_prime ** 2 * cos_phi ** 2)
    a = X / nu
    a1 = math.sin(2 * phi)
    a2 = a1 * cos_phi ** 2
    j2 = phi + a1 / 2
    j4 = (3 * j2 + a2) / 4
    j6 = (5 * j4 + a2 * cos_phi ** 2) / 3
    alpha = 0.75 * e_prime ** 2
    beta = 5 * alpha ** 2 / 3
    gamma = 35 * alpha ** 3 / 27
    b_phi = _K0 * c * (phi - alpha * j2 + beta * j4 - gamma * j6)
    b = (Y - b_phi) / nu
    zeta = e_prime ** 2 * a ** 2 * cos_phi ** 2 / 2
    xi = a * (1 - zeta / 3)
    eta = b * (1 - zeta) + phi
    delta_lambda = math.atan(math.sinh(xi) / math.cos(eta))
    tau = math.atan(math.cos(delta_lambda) * math.tan(eta))
    longitude = delta_lambda * 180 / math.pi + lambda_cent
    latitude = (phi + (1 + e_prime ** 2 * cos_phi ** 2
                       - 1.5 * e_prime ** 2 * math.sin(phi) * cos_phi * (tau - phi))
                * (tau - phi)) * 180 / math.pi
    return GeodeticCoord(latitude, longitude)


# --- administrative boundaries -------------------------------------------

LEVELS = ("region", "provincia", "distrito")


@dataclass(frozen=True)
class AdminEntry:
    name: str
    level: str
    parents: tuple[str, ...]
    rings: tuple[tuple[tuple[float, float], ...], ...]  # (lon, lat) loops


@dataclass(frozen=True)
class AdminBoundarySet:
    entries: tuple[AdminEntry, ...]

    def at_level(self, level: str) -> list[AdminEntry]:
        return [e for e in self.entries if e.level == level]


def load_boundaries(path: str | Path) -> AdminBoundarySet:
    """Load the boundary JSON: a list of
    {"name", "level", "parents", "rings": [[[lon, lat], ...], ...]}.

    For a distrito, parents is [region, provincia]; for a provincia,
    [region]; for a region, []. Rings are closed (first == last, at
    least 4 vertices)."""
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, list):
        raise AquaError("boundary file must be a JSON list")
    entries = []
    for i, item in enumerate(raw):
        try:
            name = item["name"]
            level = item["level"]
            parents = tuple(item.get("parents", []))
            rings = tuple(tuple((float(lon), float(lat)) for lon, lat in ring)
                          for ring in item["rings"])
        except (KeyError, TypeError, ValueError) as exc:
            raise AquaError(f"boundary entry {i}: malformed ({exc})") from exc
        if level not in LEVELS:
            raise AquaError(f"boundary entry {i}: unknown level {level!r}")
        for ring in rings:
            if len(ring) < 4:
                raise AquaError(f"boundary entry {i} ({name}): ring with < 4 vertices")
            if ring[0] != ring[-1]:
                raise AquaError(f"boundary entry {i} ({name}): ring not closed")
        entries.append(AdminEntry(name, level, parents, rings))
    return AdminBoundarySet(tuple(entries))


def _on_segment(px: float, py: float, x1: float, y1: float, x2: float, y2: float) -> bool:
    cross = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1)
    if cross != 0.0:
        return False
    return (min(x1, x2) <= px <= max(x1, x2)) and (min(y1, y2) <= py <= max(y1, y2))


def point_in_rings(lon: float, lat: float,
                   rings: tuple[tuple[tuple[float, float], ...], ...]) -> bool:
    """Even-odd inclusion over all rings; points on an edge count inside."""
    inside = False
    for ring in rings:
        for k in range(len(ring) - 1):
            x1, y1 = ring[k]
            x2, y2 = ring[k + 1]
            if _on_segment(lon, lat, x1, y1, x2, y2):
                return True
            if (y1 > lat) != (y2 > lat):
                x_cross = x1 + (lat - y1) * (x2 - x1) / (y2 - y1)
                if lon < x_cross:
                    inside = not inside
    return inside


@dataclass(frozen=True)
class AdminLocation:
    region: str | None = None
    provincia: str | None = None
    distrito: str | None = None
    flags: tuple[str, ...] = ()

    @property
    def found(self) -> bool:
        return any((self.region, self.provincia, self.distrito))


def locate_admin(point: GeodeticCoord, boundaries: AdminBoundarySet) -> AdminLocation:
    """Resolve the administrative names containing the point.

    The innermost matching level wins; a degenerate hit on several
    distritos returns the lexicographically first name with a flag.
    """
    lon, lat = point.longitude, point.latitude
    for level in ("distrito", "provincia", "region"):
        hits = sorted(
            (e for e in boundaries.at_level(level) if point_in_rings(lon, lat, e.rings)),
            key=lambda e: e.name)
        if not hits:
            continue
        flags = ()
        if len(hits) > 1:
            flags = (f"point on shared {level} border: "
                     + ", ".join(e.name for e in hits),)
        chosen = hits[0]
        if level == "distrito":
            region = chosen.parents[0] if len(chosen.parents) > 0 else None
            provincia = chosen.parents[1] if len(chosen.parents) > 1 else None
            return AdminLocation(region, provincia, chosen.name, flags)
        if level == "provincia":
            region = chosen.parents[0] if len(chosen.parents) > 0 else None
            return AdminLocation(region, chosen.name, None, flags)
        return AdminLocation(chosen.name, None, None, flags)
    return AdminLocation()
