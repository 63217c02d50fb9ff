#!/usr/bin/env python3
"""Build a demo data root: one synthetic scene package plus sample
administrative boundaries and the sample registry, ready for the CLI
and the HTTP service.

Usage:
    python3 scripts/make_demo_scene.py [--out demo_data] [--format pgm|tiff]
"""

import argparse
import shutil
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from aqua.synthetic import DEFAULT_SCENE_ID, build_scene_package  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="demo_data")
    parser.add_argument("--format", choices=["pgm", "tiff"], default="pgm")
    parser.add_argument("--size", type=int, default=200)
    parser.add_argument("--lake-radius", type=float, default=30.0)
    args = parser.parse_args()

    out = Path(args.out)
    pkg_dir = build_scene_package(
        out, shape=(args.size, args.size),
        lake_center=(args.size // 2, args.size // 2),
        lake_radius=args.lake_radius, band_format=args.format)
    fixtures = REPO / "tests" / "fixtures"
    shutil.copy(fixtures / "boundaries_ancash.json", out / "boundaries.json")
    shutil.copy(fixtures / "fig19_registry.jsonl", out / "sample_registry.jsonl")

    print(f"scene package: {pkg_dir}")
    print(f"boundaries:    {out / 'boundaries.json'}")
    print(f"sample registry: {out / 'sample_registry.jsonl'}")
    print()
    print("try:")
    print(f"  aqua --data-root {out} ingest")
    print(f"  aqua --data-root {out} --boundaries {out / 'boundaries.json'} \\")
    print(f"      segment {DEFAULT_SCENE_ID} --kind mndwi --seed "
          f"{args.size // 2},{args.size // 2}")
    print(f"  aqua --data-root {out} --boundaries {out / 'boundaries.json'} serve --port 8000")
    return 0


if __name__ == "__main__":
    sys.exit(main())
