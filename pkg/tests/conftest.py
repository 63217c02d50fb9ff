import shutil
from pathlib import Path

import pytest

from aqua.synthetic import (BAND_LEVELS, DEFAULT_SCENE_ID, build_scene_package,
                            lake_mask, make_metadata)

__all__ = ["BAND_LEVELS", "DEFAULT_SCENE_ID", "build_scene_package",
           "lake_mask", "make_metadata", "FIXTURES"]

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def scene_root(tmp_path: Path) -> Path:
    root = tmp_path / "scenes"
    build_scene_package(root)
    return root


@pytest.fixture
def fig19_registry(tmp_path: Path) -> Path:
    target = tmp_path / "registry.jsonl"
    shutil.copy(FIXTURES / "fig19_registry.jsonl", target)
    return target


@pytest.fixture
def boundaries_path() -> Path:
    return FIXTURES / "boundaries_ancash.json"
