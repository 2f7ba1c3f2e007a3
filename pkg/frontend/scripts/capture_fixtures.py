#!/usr/bin/env python3
"""Capture real route-service responses for the UI tests.

Builds the grid snapshot in-process, runs the actual HTTP app, and records
/network, /roads, and /compare bodies for the scripted endpoint pairs.
Rerun whenever the service's wire format changes:

    python3 frontend/scripts/capture_fixtures.py
"""

import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(ROOT / "tests"))

from conftest import grid_features, make_network  # noqa: E402
from turnroute.service import create_app  # noqa: E402
from turnroute.snapshot import build_snapshot  # noqa: E402

SCRIPTED_PAIRS = [
    {"name": "corner_to_corner", "from": "0,0", "to": "3,3"},
    {"name": "street_to_street", "from": "0,0", "to": "0,3"},
    {"name": "midblock", "from": "0.5,0", "to": "3,2.5"},
    {"name": "same_point", "from": "1.5,1", "to": "1.5,1"},
]


def main() -> None:
    out_dir = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
    out_dir.mkdir(parents=True, exist_ok=True)
    snapshot = build_snapshot(make_network(grid_features()))
    client = TestClient(create_app(snapshot))

    (out_dir / "network.json").write_text(json.dumps(client.get("/network").json()))
    for kind in ("unsplit", "split"):
        body = client.get("/roads", params={"kind": kind}).json()
        (out_dir / f"roads_{kind}.json").write_text(json.dumps(body))
    pairs = []
    for pair in SCRIPTED_PAIRS:
        res = client.get("/compare", params={"from": pair["from"], "to": pair["to"]})
        res.raise_for_status()
        pairs.append({**pair, "response": res.json()})
    (out_dir / "compare_pairs.json").write_text(json.dumps(pairs, indent=1))
    print(f"wrote fixtures to {out_dir}")


if __name__ == "__main__":
    main()
