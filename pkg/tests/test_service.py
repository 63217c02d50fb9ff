import json
import math
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from aqua.service import ServiceConfig, create_app

from conftest import DEFAULT_SCENE_ID, FIXTURES, build_scene_package

EXPECTED_LAKE_KM2 = math.pi * 30 ** 2 * 0.0009


@pytest.fixture
def client(scene_root, tmp_path):
    config = ServiceConfig(
        data_root=scene_root,
        registry_path=tmp_path / "registry.jsonl",
        boundaries_path=FIXTURES / "boundaries_ancash.json",
    )
    with TestClient(create_app(config), raise_server_exceptions=False) as c:
        yield c


@pytest.fixture
def empty_client(tmp_path):
    root = tmp_path / "empty"
    root.mkdir()
    config = ServiceConfig(data_root=root, registry_path=tmp_path / "registry.jsonl")
    with TestClient(create_app(config), raise_server_exceptions=False) as c:
        yield c


def segment_body(**overrides):
    body = {"kind": "mndwi", "seed": [100, 100], "window": 101, "max_radius": 25}
    body.update(overrides)
    return body


def test_scenes_empty_root(empty_client):
    response = empty_client.get("/scenes")
    assert response.status_code == 200
    assert response.json() == []


def test_scenes_lists_fixture(client):
    scenes = client.get("/scenes").json()
    assert len(scenes) == 1
    entry = scenes[0]
    assert entry["scene_id"] == DEFAULT_SCENE_ID
    assert entry["rows"] == 200 and entry["cols"] == 200
    assert entry["bounds"]["ul_easting"] == 190000.0
    assert entry["date"] == "2009-06-28"


def test_scenes_sorted(tmp_path):
    root = tmp_path / "scenes"
    build_scene_package(root, scene_id="LT50080662011137CUB00")
    build_scene_package(root, scene_id="LT50070692008122CUB00")
    config = ServiceConfig(data_root=root, registry_path=tmp_path / "r.jsonl")
    with TestClient(create_app(config)) as c:
        ids = [s["scene_id"] for s in c.get("/scenes").json()]
    assert ids == sorted(ids) and len(ids) == 2


def test_composite_ppm_dimensions(client):
    response = client.get(f"/scenes/{DEFAULT_SCENE_ID}/composite?bands=5,4,3")
    assert response.status_code == 200
    assert response.headers["content-type"].startswith("image/x-portable-pixmap")
    assert response.content.startswith(b"P6")
    header = response.content.split(b"\n", 3)
    assert header[1] == b"200 200"


def test_composite_png(client):
    response = client.get(f"/scenes/{DEFAULT_SCENE_ID}/composite?format=png")
    assert response.status_code == 200
    assert response.content.startswith(b"\x89PNG")


def test_composite_unknown_scene_404(client):
    response = client.get("/scenes/LT59999992001001XXX00/composite")
    assert response.status_code == 404
    assert response.json()["code"] == "not_found"


def test_composite_bad_band_400(client):
    response = client.get(f"/scenes/{DEFAULT_SCENE_ID}/composite?bands=9,4,3")
    assert response.status_code == 400
    assert "band 9" in response.json()["message"]


def test_segment_full_pipeline(client):
    response = client.post(f"/scenes/{DEFAULT_SCENE_ID}/segment", json=segment_body())
    assert response.status_code == 200
    payload = response.json()
    assert abs(payload["area_km2"] - EXPECTED_LAKE_KM2) / EXPECTED_LAKE_KM2 < 0.02
    assert payload["admin"]["distrito"] == "Pampas"
    assert payload["admin"]["region"] == "Ancash"
    assert -9 < payload["centroid"]["lat"] < -7
    assert -79 < payload["centroid"]["lon"] < -76
    assert payload["perimeter_km"] > 0
    assert len(payload["border_ring"]) == len(payload["border_ring_pixels"])
    assert payload["mask_rle"]["width"] == 200
    runs = payload["mask_rle"]["runs"]
    assert sum(runs) == 200 * 200


def test_segment_idempotent(client):
    a = client.post(f"/scenes/{DEFAULT_SCENE_ID}/segment", json=segment_body()).json()
    b = client.post(f"/scenes/{DEFAULT_SCENE_ID}/segment", json=segment_body()).json()
    assert a == b


def test_segment_seed_on_land_422(client):
    # the window still sees the lake corner (clean bimodal threshold) but
    # the seed sits far beyond max_radius from any water pixel
    response = client.post(f"/scenes/{DEFAULT_SCENE_ID}/segment",
                           json=segment_body(seed=[40, 40], max_radius=25))
    assert response.status_code == 422
    assert response.json()["code"] == "no_water_near_seed"


def test_segment_unknown_scene_404(client):
    response = client.post("/scenes/LT59999992001001XXX00/segment", json=segment_body())
    assert response.status_code == 404


def test_segment_malformed_body_400(client):
    response = client.post(f"/scenes/{DEFAULT_SCENE_ID}/segment",
                           json={"seed": "not a pair"})
    assert response.status_code == 400
    assert response.json()["code"] == "malformed_request"


def test_segment_negative_seed_400(client):
    response = client.post(f"/scenes/{DEFAULT_SCENE_ID}/segment",
                           json=segment_body(seed=[-3, 10]))
    assert response.status_code == 400


def test_segment_bad_kind_400(client):
    response = client.post(f"/scenes/{DEFAULT_SCENE_ID}/segment",
                           json=segment_body(kind="awei"))
    assert response.status_code == 400


def register_from_segment(client, name="Pelagatos"):
    seg = client.post(f"/scenes/{DEFAULT_SCENE_ID}/segment", json=segment_body()).json()
    body = {
        "scene_id": DEFAULT_SCENE_ID,
        "name": name,
        "cuenca": "Santa",
        "area_km2": seg["area_km2"],
        "perimeter_km": seg["perimeter_km"],
        "centroid_lat": seg["centroid"]["lat"],
        "centroid_lon": seg["centroid"]["lon"],
        "region": seg["admin"]["region"],
        "provincia": seg["admin"]["provincia"],
        "distrito": seg["admin"]["distrito"],
        "border_ring": seg["border_ring"],
    }
    return client.post("/registry", json=body)


def test_register_then_list(client):
    response = register_from_segment(client)
    assert response.status_code == 201
    assert response.json()["id"] == 1
    records = client.get("/registry", params={"name": "Pelagatos"}).json()
    assert len(records) == 1
    assert records[0]["year"] == 2009  # derived from the scene id
    assert records[0]["distrito"] == "Pampas"
    assert client.get("/registry").json() == records


def test_register_duplicate_409(client):
    assert register_from_segment(client).status_code == 201
    response = register_from_segment(client)
    assert response.status_code == 409
    assert response.json()["code"] == "conflict"


def test_register_invalid_record_400(client):
    response = client.post("/registry", json={
        "scene_id": DEFAULT_SCENE_ID, "name": "X", "area_km2": -1,
        "centroid_lat": 0, "centroid_lon": 0})
    assert response.status_code == 400
    assert response.json()["code"] == "invalid_record"


def test_timeline_fig19(tmp_path, scene_root, fig19_registry):
    config = ServiceConfig(data_root=scene_root, registry_path=fig19_registry)
    with TestClient(create_app(config)) as c:
        payload = c.get("/registry/Pelagatos/timeline").json()
        assert payload["areas"] == [1.7739, 1.9953, 1.7667]
        assert payload["deltas"] == pytest.approx([0.2214, -0.2286], abs=1e-12)
        assert c.get("/registry/Nessie/timeline").status_code == 404
        kml = c.get("/registry.kml")
        assert kml.status_code == 200
        assert "-77.79499326,-8.179486595" in kml.text


def test_concurrent_registrations_keep_registry_valid(client, tmp_path):
    seg = client.post(f"/scenes/{DEFAULT_SCENE_ID}/segment", json=segment_body()).json()

    def register(i):
        body = {
            "scene_id": DEFAULT_SCENE_ID, "name": f"Lake{i}", "cuenca": "Santa",
            "area_km2": seg["area_km2"], "perimeter_km": seg["perimeter_km"],
            "centroid_lat": seg["centroid"]["lat"],
            "centroid_lon": seg["centroid"]["lon"],
        }
        return client.post("/registry", json=body).status_code

    with ThreadPoolExecutor(max_workers=8) as pool:
        codes = list(pool.map(register, range(12)))
    assert codes == [201] * 12
    records = client.get("/registry").json()
    assert len(records) == 12
    # ids must be unique and the file must stay valid line-delimited JSON
    registry_file = tmp_path / "registry.jsonl"
    lines = registry_file.read_text().splitlines()
    assert len(lines) == 13  # header + 12 records
    for line in lines:
        json.loads(line)


def test_cache_reuse_does_not_change_results(client):
    first = client.post(f"/scenes/{DEFAULT_SCENE_ID}/segment", json=segment_body()).json()
    for _ in range(3):
        client.get(f"/scenes/{DEFAULT_SCENE_ID}/composite?bands=5,4,3")
    again = client.post(f"/scenes/{DEFAULT_SCENE_ID}/segment", json=segment_body()).json()
    assert first == again
