"""Every subcommand's JSON stdout must validate against its published schema."""

import json
from importlib import resources

import jsonschema
import pytest

from aqua.cli import main

from conftest import DEFAULT_SCENE_ID, FIXTURES


@pytest.fixture(scope="module")
def schemas():
    text = resources.files("aqua").joinpath("data/cli_schemas.json").read_text()
    return json.loads(text)


def run_json(capsys, argv):
    assert main(argv) == 0
    return json.loads(capsys.readouterr().out)


def test_every_subcommand_output_validates(capsys, tmp_path, schemas, scene_root,
                                           fig19_registry):
    registry = tmp_path / "registry.jsonl"
    kml_out = tmp_path / "out.kml"
    ppm_out = tmp_path / "out.ppm"
    base = ["--data-root", str(scene_root), "--registry", str(registry),
            "--boundaries", str(FIXTURES / "boundaries_ancash.json")]
    runs = {
        "ingest": base + ["ingest"],
        "calibrate": base + ["calibrate", DEFAULT_SCENE_ID],
        "index": base + ["index", DEFAULT_SCENE_ID, "--kind", "ndwi"],
        "segment": base + ["segment", DEFAULT_SCENE_ID, "--seed", "100,100"],
        "register": base + ["register", DEFAULT_SCENE_ID, "--seed", "100,100",
                            "--name", "Demo", "--cuenca", "Santa"],
        "timeline": ["--registry", str(fig19_registry), "timeline", "--name", "Paron"],
        "export-kml": ["--registry", str(fig19_registry),
                       "export-kml", "--out", str(kml_out)],
        "render": base + ["render", DEFAULT_SCENE_ID, "--composite", "5,4,3",
                          "--out", str(ppm_out)],
    }
    assert set(runs) == set(k for k in schemas if not k.startswith("$"))
    for name, argv in runs.items():
        payload = run_json(capsys, argv)
        jsonschema.validate(payload, schemas[name])
