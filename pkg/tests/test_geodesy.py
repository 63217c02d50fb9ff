import json
import math

import numpy as np
import pytest

from aqua.errors import AquaError
from aqua.geodesy import (HAYFORD, AdminBoundarySet, AdminEntry, GeodeticCoord,
                          UtmCoord, load_boundaries, locate_admin, point_in_rings,
                          utm_to_geodetic)

import oracles
from conftest import FIXTURES

FIG20_CENTROIDS = {
    "Pelagatos": (-8.179486595, -77.79499326),
    "Paron": (-8.993284653, -77.66900783),
    "Querocha": (-9.717370767, -77.32451465),
}


def test_hayford_derived_quantities():
    a, b = HAYFORD.semi_major, HAYFORD.semi_minor
    assert a == 6378388.0 and b == 6356911.946130
    assert HAYFORD.eccentricity == pytest.approx(math.sqrt(a * a - b * b) / a, rel=1e-15)
    assert HAYFORD.second_eccentricity == pytest.approx(math.sqrt(a * a - b * b) / b,
                                                        rel=1e-15)
    assert HAYFORD.polar_radius == pytest.approx(a * a / b, rel=1e-15)


def test_central_meridian_equator_is_exact():
    got = utm_to_geodetic(UtmCoord(500000.0, 0.0, 18, "North"))
    assert abs(got.latitude - 0.0) <= 1e-9
    assert abs(got.longitude - (-75.0)) <= 1e-9


def test_central_meridian_longitude_independent_of_northing():
    for northing in (1000.0, 500000.0, 4100200.0, 9999999.0):
        got = utm_to_geodetic(UtmCoord(500000.0, northing, 19, "North"))
        assert got.longitude == pytest.approx(-69.0, abs=1e-12)


@pytest.mark.parametrize("name", sorted(FIG20_CENTROIDS))
def test_fig20_round_trip_through_forward_oracle(name):
    lat, lon = FIG20_CENTROIDS[name]
    easting, northing = oracles.forward_transverse_mercator(lat, lon, 18, south=True)
    got = utm_to_geodetic(UtmCoord(easting, northing, 18, "South"))
    assert abs(got.latitude - lat) < 1e-4
    assert abs(got.longitude - lon) < 1e-4


def test_negative_northing_pre_adjustment():
    # a negative (signed) northing and its false-northing form agree
    signed = utm_to_geodetic(UtmCoord(450000.0, -904300.0, 18, "South"))
    false_n = utm_to_geodetic(UtmCoord(450000.0, 9095700.0, 18, "South"))
    assert signed.latitude == pytest.approx(false_n.latitude, abs=1e-12)
    assert signed.longitude == pytest.approx(false_n.longitude, abs=1e-12)


def test_hemisphere_antisymmetry_on_central_meridian():
    for arc in (120000.0, 903000.0, 2500000.0):
        north = utm_to_geodetic(UtmCoord(500000.0, arc, 7, "North"))
        south = utm_to_geodetic(UtmCoord(500000.0, 10000000.0 - arc, 7, "South"))
        assert north.latitude == pytest.approx(-south.latitude, abs=1e-9)
        assert north.longitude == pytest.approx(south.longitude, abs=1e-12)


def test_zone_out_of_range_rejected():
    with pytest.raises(ValueError):
        UtmCoord(500000.0, 0.0, 0, "North")
    with pytest.raises(ValueError):
        UtmCoord(500000.0, 0.0, 61, "South")
    with pytest.raises(ValueError):
        UtmCoord(500000.0, 0.0, 18, "Equator")


def test_geodetic_ranges_enforced():
    with pytest.raises(ValueError):
        GeodeticCoord(91.0, 0.0)
    with pytest.raises(ValueError):
        GeodeticCoord(0.0, -181.0)


# --- boundaries -------------------------------------------------------------

def square_ring(x0, y0, x1, y1):
    return ((x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0))


def test_load_boundaries_fixture():
    bset = load_boundaries(FIXTURES / "boundaries_ancash.json")
    assert len(bset.entries) == 8
    assert {e.level for e in bset.entries} == {"region", "provincia", "distrito"}
    pampas = next(e for e in bset.entries if e.name == "Pampas")
    assert pampas.parents == ("Ancash", "Pallasca")


def test_load_boundaries_validation(tmp_path):
    bad = tmp_path / "b.json"
    bad.write_text(json.dumps([{"name": "X", "level": "distrito", "parents": [],
                                "rings": [[[0, 0], [1, 0], [0, 0]]]}]))
    with pytest.raises(AquaError, match="< 4 vertices"):
        load_boundaries(bad)
    bad.write_text(json.dumps([{"name": "X", "level": "distrito", "parents": [],
                                "rings": [[[0, 0], [1, 0], [1, 1], [0, 1]]]}]))
    with pytest.raises(AquaError, match="not closed"):
        load_boundaries(bad)
    bad.write_text(json.dumps([{"name": "X", "level": "país", "parents": [],
                                "rings": [[[0, 0], [1, 0], [1, 1], [0, 0]]]}]))
    with pytest.raises(AquaError, match="unknown level"):
        load_boundaries(bad)


def test_point_in_lone_square_distrito():
    bset = load_boundaries(FIXTURES / "boundaries_ancash.json")
    loc = locate_admin(GeodeticCoord(-8.2, -77.8), bset)
    assert (loc.region, loc.provincia, loc.distrito) == ("Ancash", "Pallasca", "Pampas")
    assert loc.found


def test_point_outside_everything_not_found():
    bset = load_boundaries(FIXTURES / "boundaries_ancash.json")
    loc = locate_admin(GeodeticCoord(0.0, 0.0), bset)
    assert not loc.found
    assert (loc.region, loc.provincia, loc.distrito) == (None, None, None)


def test_point_in_provincia_but_no_distrito():
    bset = load_boundaries(FIXTURES / "boundaries_ancash.json")
    # inside Pallasca but outside the Pampas box
    loc = locate_admin(GeodeticCoord(-8.5, -77.5), bset)
    assert (loc.region, loc.provincia, loc.distrito) == ("Ancash", "Pallasca", None)


def test_hole_and_island_distrito():
    annulus = AdminEntry("Anillo", "distrito", ("R", "P"),
                         (square_ring(0, 0, 10, 10), square_ring(4, 4, 6, 6)))
    island = AdminEntry("Isla", "distrito", ("R", "P"),
                        (square_ring(4.5, 4.5, 5.5, 5.5),))
    bset = AdminBoundarySet((annulus, island))
    # inside the outer ring, outside the hole: the enclosing distrito
    assert locate_admin(GeodeticCoord(2.0, 2.0), bset).distrito == "Anillo"
    # inside the island
    assert locate_admin(GeodeticCoord(5.0, 5.0), bset).distrito == "Isla"
    # inside the hole but outside the island: neither distrito
    assert not locate_admin(GeodeticCoord(4.2, 5.0), bset).found


def test_point_on_edge_counts_inside():
    entry = AdminEntry("X", "distrito", ("R", "P"), (square_ring(0, 0, 2, 2),))
    bset = AdminBoundarySet((entry,))
    assert locate_admin(GeodeticCoord(0.0, 1.0), bset).distrito == "X"  # on edge
    assert locate_admin(GeodeticCoord(0.0, 0.0), bset).distrito == "X"  # on vertex


def test_shared_border_tie_is_lexicographic_with_flag():
    left = AdminEntry("Beta", "distrito", ("R", "P"), (square_ring(0, 0, 1, 2),))
    right = AdminEntry("Alfa", "distrito", ("R", "P"), (square_ring(1, 0, 2, 2),))
    bset = AdminBoundarySet((left, right))
    loc = locate_admin(GeodeticCoord(1.0, 1.0), bset)
    assert loc.distrito == "Alfa"
    assert any("shared" in f for f in loc.flags)


def test_point_in_rings_agrees_with_oracle_on_random_points():
    # every fixture polygon against the full set of random points
    bset = load_boundaries(FIXTURES / "boundaries_ancash.json")
    rng = np.random.default_rng(23)
    lons = rng.uniform(-80.0, -75.0, size=10_000)
    lats = rng.uniform(-11.0, -6.0, size=10_000)
    for entry in bset.entries:
        for lon, lat in zip(lons, lats):
            assert point_in_rings(lon, lat, entry.rings) == \
                oracles.point_in_rings_oracle(lon, lat, entry.rings)
