"""Engine snapshots: the network plus both road sets and connectivity
graphs, persisted in a versioned binary container so serving is a load, not
a rebuild."""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass
from pathlib import Path

from .connectivity import RoadGraph, build_connectivity_graph
from .geometry import Point, Polyline, SplitParams
from .natural_roads import (
    DEFAULT_JOIN_THRESHOLD_DEG,
    DEFAULT_SPLIT_RATIO,
    NaturalRoad,
    RoadSet,
    make_road,
    build_natural_roads,
    default_split_params,
    split_natural_roads,
)
from .network import Junction, Projection, RoadNetwork, Segment
from .routing import (
    Route,
    fewest_turn_and_shortest_route,
    fewest_turn_route,
    shortest_path,
    simplest_path,
)

MAGIC = b"TRSNAP01"
VERSION = 1


class SnapshotError(ValueError):
    pass


@dataclass(frozen=True)
class EngineSnapshot:
    network: RoadNetwork
    rs_unsplit: RoadSet
    rs_split: RoadSet
    g_unsplit: RoadGraph
    g_split: RoadGraph
    params: dict
    content_hash: str

    def route(self, mode: str, origin, destination, cap: int = 10_000) -> Route:
        mode = mode.lower()
        if mode == "st":
            return shortest_path(self.network, origin, destination, self.rs_unsplit)
        if mode == "sp":
            return simplest_path(self.network, self.rs_unsplit, origin, destination)
        if mode == "ft":
            return fewest_turn_route(
                self.network, self.rs_unsplit, self.g_unsplit, origin, destination, cap
            )
        if mode == "fts":
            return fewest_turn_and_shortest_route(
                self.network,
                self.rs_split,
                self.g_split,
                origin,
                destination,
                self.rs_unsplit,
                cap,
            )
        raise ValueError(f"unknown route mode {mode!r}")

    def roadset_for_mode(self, mode: str) -> RoadSet:
        return self.rs_split if mode.lower() == "fts" else self.rs_unsplit


def build_snapshot(
    net: RoadNetwork,
    angle_deg: float = DEFAULT_JOIN_THRESHOLD_DEG,
    split_distance: float | None = None,
    split_ratio: float = DEFAULT_SPLIT_RATIO,
) -> EngineSnapshot:
    """Derive both road sets and graphs from a network with the given parameters."""
    rs_unsplit = build_natural_roads(net, angle_deg)
    if split_distance is None:
        params = default_split_params(net, split_ratio)
    else:
        params = SplitParams(distance=split_distance, ratio=split_ratio)
    rs_split = split_natural_roads(rs_unsplit, net, params)
    g_unsplit = build_connectivity_graph(rs_unsplit, net)
    g_split = build_connectivity_graph(rs_split, net)
    param_obj = {
        "angle_deg": angle_deg,
        "split_distance": params.distance,
        "split_ratio": params.ratio,
    }
    digest = hashlib.sha256()
    digest.update(json.dumps(param_obj, sort_keys=True).encode())
    digest.update(json.dumps(_network_obj(net), sort_keys=True).encode())
    return EngineSnapshot(
        network=net,
        rs_unsplit=rs_unsplit,
        rs_split=rs_split,
        g_unsplit=g_unsplit,
        g_split=g_split,
        params=param_obj,
        content_hash=digest.hexdigest(),
    )


# --------------------------- serialization ---------------------------


def _network_obj(net: RoadNetwork) -> dict:
    return {
        "crs_note": net.crs_note,
        "projection": {
            "kind": net.projection.kind,
            "lon0": net.projection.lon0,
            "lat0": net.projection.lat0,
        },
        "junctions": [[j.location.x, j.location.y] for j in net.junctions],
        "segments": [
            {
                "points": [[p.x, p.y] for p in s.geometry.points],
                "from": s.from_junction,
                "to": s.to_junction,
                "name": s.name,
                "source_id": s.source_id,
            }
            for s in net.segments
        ],
    }


def _network_from_obj(obj: dict) -> RoadNetwork:
    incident: dict[int, list[tuple[int, int]]] = {}
    segments = []
    for sid, s in enumerate(obj["segments"]):
        segments.append(
            Segment(
                id=sid,
                geometry=Polyline(tuple(Point(x, y) for x, y in s["points"])),
                from_junction=s["from"],
                to_junction=s["to"],
                name=s["name"],
                source_id=s["source_id"],
            )
        )
        incident.setdefault(s["from"], []).append((sid, 0))
        incident.setdefault(s["to"], []).append((sid, 1))
    junctions = tuple(
        Junction(jid, Point(x, y), tuple(sorted(incident.get(jid, []))))
        for jid, (x, y) in enumerate(obj["junctions"])
    )
    proj = obj["projection"]
    return RoadNetwork(
        segments=tuple(segments),
        junctions=junctions,
        crs_note=obj["crs_note"],
        projection=Projection(proj["kind"], proj["lon0"], proj["lat0"]),
    )


def _roadset_obj(rs: RoadSet) -> dict:
    return {
        "kind": rs.kind,
        "threshold_deg": rs.threshold_deg,
        "roads": [
            {
                "chain": [[sid, 1 if rev else 0] for sid, rev in road.chain],
                "junctions": list(road.junctions),
            }
            for road in rs.roads
        ],
    }


def _roadset_from_obj(obj: dict, net: RoadNetwork) -> RoadSet:
    roads: list[NaturalRoad] = []
    for rid, r in enumerate(obj["roads"]):
        chain = [(sid, bool(rev)) for sid, rev in r["chain"]]
        roads.append(make_road(net, rid, chain, list(r["junctions"])))
    seg_to_road = {sid: road.id for road in roads for sid, _ in road.chain}
    return RoadSet(
        kind=obj["kind"],
        roads=tuple(roads),
        segment_to_road=seg_to_road,
        threshold_deg=obj["threshold_deg"],
    )


def _graph_obj(g: RoadGraph) -> dict:
    return {
        "kind": g.kind,
        "adjacency": [
            [[nb, list(shared)] for nb, shared in adj] for adj in g.adjacency
        ],
    }


def _graph_from_obj(obj: dict) -> RoadGraph:
    adjacency = tuple(
        tuple((nb, tuple(shared)) for nb, shared in adj) for adj in obj["adjacency"]
    )
    return RoadGraph(kind=obj["kind"], node_count=len(adjacency), adjacency=adjacency)


def _write_container(path: Path, sections: list[tuple[str, dict]]) -> None:
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", VERSION, len(sections)))
        for name, obj in sections:
            payload = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
            name_b = name.encode()
            fh.write(struct.pack("<H", len(name_b)))
            fh.write(name_b)
            fh.write(struct.pack("<Q", len(payload)))
            fh.write(payload)


def _read_container(path: Path) -> dict[str, dict]:
    data = Path(path).read_bytes()
    if data[:8] != MAGIC:
        raise SnapshotError(f"{path}: not a snapshot container (bad magic)")
    version, count = struct.unpack_from("<II", data, 8)
    if version != VERSION:
        raise SnapshotError(f"{path}: unsupported container version {version}")
    off = 16
    sections: dict[str, dict] = {}
    for _ in range(count):
        (name_len,) = struct.unpack_from("<H", data, off)
        off += 2
        name = data[off : off + name_len].decode()
        off += name_len
        (payload_len,) = struct.unpack_from("<Q", data, off)
        off += 8
        sections[name] = json.loads(data[off : off + payload_len].decode())
        off += payload_len
    return sections


def save_network_file(net: RoadNetwork, path: str | Path) -> None:
    _write_container(Path(path), [("network", _network_obj(net))])


def load_network_file(path: str | Path) -> RoadNetwork:
    sections = _read_container(Path(path))
    if "network" not in sections:
        raise SnapshotError(f"{path}: no network section")
    return _network_from_obj(sections["network"])


def save_snapshot(snap: EngineSnapshot, path: str | Path) -> None:
    _write_container(
        Path(path),
        [
            ("header", {"hash": snap.content_hash, "params": snap.params}),
            ("network", _network_obj(snap.network)),
            ("roads_unsplit", _roadset_obj(snap.rs_unsplit)),
            ("roads_split", _roadset_obj(snap.rs_split)),
            ("graph_unsplit", _graph_obj(snap.g_unsplit)),
            ("graph_split", _graph_obj(snap.g_split)),
        ],
    )


def load_snapshot(path: str | Path) -> EngineSnapshot:
    sections = _read_container(Path(path))
    required = {
        "header",
        "network",
        "roads_unsplit",
        "roads_split",
        "graph_unsplit",
        "graph_split",
    }
    missing = required - sections.keys()
    if missing:
        raise SnapshotError(f"{path}: missing sections {sorted(missing)}")
    net = _network_from_obj(sections["network"])
    return EngineSnapshot(
        network=net,
        rs_unsplit=_roadset_from_obj(sections["roads_unsplit"], net),
        rs_split=_roadset_from_obj(sections["roads_split"], net),
        g_unsplit=_graph_from_obj(sections["graph_unsplit"]),
        g_split=_graph_from_obj(sections["graph_split"]),
        params=sections["header"]["params"],
        content_hash=sections["header"]["hash"],
    )
