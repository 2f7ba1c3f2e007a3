"""Road network ingestion, validation, and size statistics.

The geometric network is a noded graph: junctions are shared segment
endpoints, segments are polyline edges between adjacent junctions. A loaded
network is immutable and safe to share across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .geometry import Point, Polyline, Vec, distance, polyline_length

EARTH_RADIUS_M = 6_371_000.0


class NetworkError(ValueError):
    pass


class EmptyNetworkError(NetworkError):
    pass


class IngestError(NetworkError):
    """Input features could not be turned into a valid network."""

    def __init__(self, message: str, diagnostics: list[str] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class MismatchError(NetworkError):
    """Derived data (road sets, routes) does not belong to this network."""


@dataclass(frozen=True)
class Projection:
    """Planar projection applied at ingest.

    ``local_sinusoidal`` centers on the data centroid and scales longitude
    by the cosine of each point's own latitude, which keeps pairwise
    distances within a small fraction of their great-circle values for
    network-sized extents.
    """

    kind: str = "identity"  # "identity" | "local_sinusoidal"
    lon0: float = 0.0
    lat0: float = 0.0

    def to_plane(self, x: float, y: float) -> tuple[float, float]:
        if self.kind == "identity":
            return x, y
        rad = math.pi / 180.0
        px = EARTH_RADIUS_M * (x - self.lon0) * rad * math.cos(y * rad)
        py = EARTH_RADIUS_M * (y - self.lat0) * rad
        return px, py

    def describe(self) -> str:
        if self.kind == "identity":
            return "planar input used as-is"
        return f"local sinusoidal projection about ({self.lon0:.6f}, {self.lat0:.6f}), meters"


@dataclass(frozen=True)
class Segment:
    id: int
    geometry: Polyline
    from_junction: int
    to_junction: int
    name: str | None = None
    source_id: str | None = None

    @property
    def is_loop(self) -> bool:
        return self.from_junction == self.to_junction

    @property
    def length(self) -> float:
        return polyline_length(self.geometry)

    def end_junction(self, end: int) -> int:
        return self.from_junction if end == 0 else self.to_junction

    def outward_direction(self, end: int) -> Vec:
        """Terminal chord direction pointing from the given end into the segment."""
        pts = self.geometry.points
        if end == 0:
            return (pts[1].x - pts[0].x, pts[1].y - pts[0].y)
        return (pts[-2].x - pts[-1].x, pts[-2].y - pts[-1].y)


@dataclass(frozen=True)
class Junction:
    id: int
    location: Point
    incident: tuple[tuple[int, int], ...]  # (segment id, end) with end 0=start, 1=end

    @property
    def degree(self) -> int:
        return len(self.incident)


@dataclass(frozen=True)
class RoadNetwork:
    segments: tuple[Segment, ...]
    junctions: tuple[Junction, ...]
    crs_note: str
    projection: Projection = Projection()
    _lengths: tuple[float, ...] = field(default=(), repr=False)

    def __post_init__(self) -> None:
        if not self._lengths:
            object.__setattr__(
                self, "_lengths", tuple(s.length for s in self.segments)
            )

    def segment(self, sid: int) -> Segment:
        return self.segments[sid]

    def junction(self, jid: int) -> Junction:
        return self.junctions[jid]

    def segment_length(self, sid: int) -> float:
        return self._lengths[sid]

    def bounds(self) -> tuple[float, float, float, float]:
        xs = [p.x for s in self.segments for p in s.geometry.points]
        ys = [p.y for s in self.segments for p in s.geometry.points]
        return min(xs), min(ys), max(xs), max(ys)

    def project_query(self, x: float, y: float) -> tuple[float, float]:
        """Map a query coordinate into network space."""
        return self.projection.to_plane(x, y)


@dataclass(frozen=True)
class NetworkStats:
    arcs: int
    arcs_x: int
    roads_i: int
    roads_i_x: int
    roads_ii: int
    roads_ii_x: int

    CSV_HEADER = "arcs,arcs_x,roads_i,roads_i_x,roads_ii,roads_ii_x,reduction_i,reduction_ii"

    def __post_init__(self) -> None:
        counts = (
            self.arcs,
            self.arcs_x,
            self.roads_i,
            self.roads_i_x,
            self.roads_ii,
            self.roads_ii_x,
        )
        if any(c < 0 for c in counts):
            raise ValueError("negative count in network stats")
        if self.roads_ii < self.roads_i:
            raise ValueError("splitting can never reduce the road count")
        if self.arcs < self.roads_i:
            raise ValueError("road count cannot exceed segment count")

    def csv_row(self) -> str:
        red_i = self.roads_i / self.arcs if self.arcs else 0.0
        red_ii = self.roads_ii / self.arcs if self.arcs else 0.0
        return (
            f"{self.arcs},{self.arcs_x},{self.roads_i},{self.roads_i_x},"
            f"{self.roads_ii},{self.roads_ii_x},{red_i:.6f},{red_ii:.6f}"
        )


# --------------------------- ingestion ---------------------------

# A raw feature is (coordinates, name, source id): the common denominator of
# GeoJSON LineStrings and the edge-list fixture format.
RawFeature = tuple[list[tuple[float, float]], "str | None", "str | None"]


def _dedupe(coords: list[tuple[float, float]]) -> list[tuple[float, float]]:
    out = [coords[0]]
    for c in coords[1:]:
        if c != out[-1]:
            out.append(c)
    return out


def _looks_angular(features: list[RawFeature]) -> bool:
    for coords, _, _ in features:
        for x, y in coords:
            if not (-180.0 <= x <= 180.0 and -90.0 <= y <= 90.0):
                return False
    return True


class _SnapIndex:
    """Merges endpoint coordinates within a snap tolerance (0 = exact match)."""

    def __init__(self, tolerance: float):
        self.tolerance = tolerance
        self._exact: dict[tuple[float, float], int] = {}
        self._cells: dict[tuple[int, int], list[int]] = {}
        self.locations: list[tuple[float, float]] = []

    def key_for(self, coord: tuple[float, float]) -> int:
        if self.tolerance <= 0.0:
            jid = self._exact.get(coord)
            if jid is None:
                jid = len(self.locations)
                self._exact[coord] = jid
                self.locations.append(coord)
            return jid
        cell = (int(coord[0] // self.tolerance), int(coord[1] // self.tolerance))
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for jid in self._cells.get((cell[0] + dx, cell[1] + dy), ()):
                    lx, ly = self.locations[jid]
                    if math.hypot(coord[0] - lx, coord[1] - ly) <= self.tolerance:
                        return jid
        jid = len(self.locations)
        self.locations.append(coord)
        self._cells.setdefault(cell, []).append(jid)
        return jid


def build_network(
    features: list[RawFeature],
    *,
    snap_tolerance: float = 0.0,
    assume_lonlat: bool | None = None,
    source_note: str = "",
) -> RoadNetwork:
    """Assemble a RoadNetwork from raw line features.

    Junctions appear at shared endpoints (after the optional snap); feature
    order fixes all id assignment, so identical input always produces an
    identical network.
    """
    if not features:
        raise EmptyNetworkError("no input features")

    diagnostics: list[str] = []
    cleaned: list[RawFeature] = []
    for idx, (coords, name, src) in enumerate(features):
        label = src if src is not None else f"feature {idx}"
        if len(coords) < 2:
            diagnostics.append(f"{label}: fewer than 2 points")
            continue
        deduped = _dedupe(coords)
        if len(deduped) < 2:
            diagnostics.append(f"{label}: fewer than 2 distinct points")
            continue
        cleaned.append((deduped, name, src))
    if diagnostics:
        raise IngestError(
            f"{len(diagnostics)} invalid feature(s)", diagnostics=diagnostics
        )
    if not cleaned:
        raise EmptyNetworkError("no usable features")

    projection = Projection()
    if assume_lonlat is None:
        assume_lonlat = _looks_angular(cleaned)
    if assume_lonlat:
        n = sum(len(c) for c, _, _ in cleaned)
        lon0 = sum(x for c, _, _ in cleaned for x, _ in c) / n
        lat0 = sum(y for c, _, _ in cleaned for _, y in c) / n
        projection = Projection("local_sinusoidal", lon0, lat0)
        cleaned = [
            ([projection.to_plane(x, y) for x, y in coords], name, src)
            for coords, name, src in cleaned
        ]
        cleaned = [(_dedupe(coords), name, src) for coords, name, src in cleaned]

    snap = _SnapIndex(snap_tolerance)
    segments: list[Segment] = []
    incident: dict[int, list[tuple[int, int]]] = {}
    for coords, name, src in cleaned:
        j_from = snap.key_for(coords[0])
        j_to = snap.key_for(coords[-1])
        # Rewrite endpoints onto the junction representatives so segment
        # geometry and junction locations coincide exactly.
        pts = [snap.locations[j_from], *coords[1:-1], snap.locations[j_to]]
        pts = _dedupe(pts)
        if len(pts) < 2:
            raise IngestError(
                "snap tolerance collapsed a feature",
                diagnostics=[f"{src or 'feature'}: degenerate after snapping"],
            )
        sid = len(segments)
        segments.append(
            Segment(
                id=sid,
                geometry=Polyline(tuple(Point(x, y) for x, y in pts)),
                from_junction=j_from,
                to_junction=j_to,
                name=name,
                source_id=src,
            )
        )
        incident.setdefault(j_from, []).append((sid, 0))
        incident.setdefault(j_to, []).append((sid, 1))

    junctions = tuple(
        Junction(
            id=jid,
            location=Point(*snap.locations[jid]),
            incident=tuple(sorted(incident.get(jid, []))),
        )
        for jid in range(len(snap.locations))
    )
    note = projection.describe()
    if source_note:
        note = f"{source_note}; {note}"
    return RoadNetwork(
        segments=tuple(segments),
        junctions=junctions,
        crs_note=note,
        projection=projection,
    )


def parse_geojson(data: dict) -> list[RawFeature]:
    if data.get("type") != "FeatureCollection":
        raise IngestError("expected a GeoJSON FeatureCollection")
    features: list[RawFeature] = []
    diagnostics: list[str] = []
    for idx, feat in enumerate(data.get("features", [])):
        geom = feat.get("geometry") or {}
        props = feat.get("properties") or {}
        src = props.get("id")
        src = str(src) if src is not None else None
        label = src if src is not None else f"feature {idx}"
        if geom.get("type") != "LineString":
            diagnostics.append(f"{label}: geometry type {geom.get('type')!r} not supported")
            continue
        coords = [(float(x), float(y)) for x, y in geom.get("coordinates", [])]
        name = props.get("name")
        name = str(name) if name is not None else None
        features.append((coords, name, src))
    if diagnostics:
        raise IngestError(f"{len(diagnostics)} unsupported feature(s)", diagnostics)
    return features


def parse_edge_list(text: str) -> list[RawFeature]:
    """Parse the plain-text fixture format: ``id x1 y1 x2 y2 ... [name]``.

    Tokens are whitespace-separated; an odd trailing token is the segment
    name (use underscores instead of spaces).
    """
    features: list[RawFeature] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        src = tokens[0]
        rest = tokens[1:]
        name: str | None = None
        if len(rest) % 2 == 1:
            name = rest[-1]
            rest = rest[:-1]
        if len(rest) < 4:
            raise IngestError(f"line {lineno}: fewer than 2 coordinate pairs")
        try:
            values = [float(t) for t in rest]
        except ValueError as exc:
            raise IngestError(f"line {lineno}: bad coordinate ({exc})") from exc
        coords = list(zip(values[0::2], values[1::2]))
        features.append((coords, name, src))
    return features


def load_network(
    source: str | Path | dict,
    *,
    snap_tolerance: float = 0.0,
    assume_lonlat: bool | None = None,
) -> RoadNetwork:
    """Load a network from a GeoJSON mapping, a GeoJSON file, or an edge-list file."""
    if isinstance(source, dict):
        return build_network(
            parse_geojson(source),
            snap_tolerance=snap_tolerance,
            assume_lonlat=assume_lonlat,
            source_note="geojson",
        )
    path = Path(source)
    text = path.read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return build_network(
            parse_geojson(json.loads(text)),
            snap_tolerance=snap_tolerance,
            assume_lonlat=assume_lonlat,
            source_note=path.name,
        )
    return build_network(
        parse_edge_list(text),
        snap_tolerance=snap_tolerance,
        assume_lonlat=False if assume_lonlat is None else assume_lonlat,
        source_note=path.name,
    )


# --------------------------- validation ---------------------------


@dataclass(frozen=True)
class NodingReport:
    crossings: tuple[tuple[int, int, Point], ...]  # segment pair crossing off-junction
    close_junctions: tuple[tuple[int, int, float], ...]

    @property
    def ok(self) -> bool:
        return not self.crossings


def _leg_intersection(
    a1: Point, a2: Point, b1: Point, b2: Point
) -> Point | None:
    """Intersection point of two closed segments, None when disjoint.

    Collinear overlaps report the midpoint of the shared extent.
    """
    d1x, d1y = a2.x - a1.x, a2.y - a1.y
    d2x, d2y = b2.x - b1.x, b2.y - b1.y
    denom = d1x * d2y - d1y * d2x
    rx, ry = b1.x - a1.x, b1.y - a1.y
    if denom == 0.0:
        if rx * d1y - ry * d1x != 0.0:
            return None
        # Collinear: project onto the longer direction.
        dots = [0.0, d1x * d1x + d1y * d1y]
        tb1 = rx * d1x + ry * d1y
        tb2 = (b2.x - a1.x) * d1x + (b2.y - a1.y) * d1y
        lo = max(min(dots), min(tb1, tb2))
        hi = min(max(dots), max(tb1, tb2))
        if lo > hi:
            return None
        mid = (lo + hi) / 2.0 / (d1x * d1x + d1y * d1y)
        return Point(a1.x + d1x * mid, a1.y + d1y * mid)
    t = (rx * d2y - ry * d2x) / denom
    u = (rx * d1y - ry * d1x) / denom
    if -1e-12 <= t <= 1 + 1e-12 and -1e-12 <= u <= 1 + 1e-12:
        return Point(a1.x + d1x * t, a1.y + d1y * t)
    return None


def validate_noding(net: RoadNetwork, tolerance: float = 0.0) -> NodingReport:
    """Report segment pairs crossing away from junctions and near-duplicate junctions.

    Routing requires an empty crossings list; the report never mutates the
    network (auto-noding would silently change turn counts).
    """
    junction_pts = [j.location for j in net.junctions]

    def at_junction(p: Point) -> bool:
        return any(distance(p, q) <= 1e-9 for q in junction_pts)

    crossings: list[tuple[int, int, Point]] = []
    for i, sa in enumerate(net.segments):
        for sb in net.segments[i + 1 :]:
            if _bbox_disjoint(sa.geometry, sb.geometry):
                continue
            found: Point | None = None
            for a1, a2 in zip(sa.geometry.points, sa.geometry.points[1:]):
                for b1, b2 in zip(sb.geometry.points, sb.geometry.points[1:]):
                    p = _leg_intersection(a1, a2, b1, b2)
                    if p is not None and not at_junction(p):
                        found = p
                        break
                if found:
                    break
            if found:
                crossings.append((sa.id, sb.id, found))

    close: list[tuple[int, int, float]] = []
    if tolerance > 0:
        for i, ja in enumerate(net.junctions):
            for jb in net.junctions[i + 1 :]:
                d = distance(ja.location, jb.location)
                if d < tolerance:
                    close.append((ja.id, jb.id, d))
    return NodingReport(tuple(crossings), tuple(close))


def _bbox_disjoint(a: Polyline, b: Polyline) -> bool:
    ax = [p.x for p in a.points]
    ay = [p.y for p in a.points]
    bx = [p.x for p in b.points]
    by = [p.y for p in b.points]
    return (
        max(ax) < min(bx) or max(bx) < min(ax) or max(ay) < min(by) or max(by) < min(ay)
    )


def connected_components(net: RoadNetwork) -> list[set[int]]:
    """Connected components of the segment graph, as junction-id sets,
    largest first (ties by smallest member)."""
    adjacency: dict[int, set[int]] = {j.id: set() for j in net.junctions}
    for seg in net.segments:
        adjacency[seg.from_junction].add(seg.to_junction)
        adjacency[seg.to_junction].add(seg.from_junction)
    seen: set[int] = set()
    components: list[set[int]] = []
    for start in adjacency:
        if start in seen:
            continue
        stack = [start]
        component = set()
        while stack:
            jid = stack.pop()
            if jid in component:
                continue
            component.add(jid)
            stack.extend(adjacency[jid] - component)
        seen |= component
        components.append(component)
    components.sort(key=lambda c: (-len(c), min(c)))
    return components


# --------------------------- statistics ---------------------------


def _road_pair_count(net: RoadNetwork, roads) -> int:
    by_junction: dict[int, set[int]] = {}
    for road in roads.roads:
        for jid in road.junctions:
            by_junction.setdefault(jid, set()).add(road.id)
    pairs: set[tuple[int, int]] = set()
    for members in by_junction.values():
        ordered = sorted(members)
        for i, a in enumerate(ordered):
            for b in ordered[i + 1 :]:
                pairs.add((a, b))
    return len(pairs)


def network_stats(net: RoadNetwork, roads_i, roads_ii) -> NetworkStats:
    """Size of the network in both representations: segment-level counts
    alongside road counts for the unsplit and split road sets."""
    seg_ids = {s.id for s in net.segments}
    for rs in (roads_i, roads_ii):
        if set(rs.segment_to_road) != seg_ids:
            raise MismatchError(f"road set (kind={rs.kind}) not derived from this network")
    arcs = len(net.segments)
    arcs_x = sum(1 for j in net.junctions if j.degree >= 2)
    return NetworkStats(
        arcs=arcs,
        arcs_x=arcs_x,
        roads_i=len(roads_i.roads),
        roads_i_x=_road_pair_count(net, roads_i),
        roads_ii=len(roads_ii.roads),
        roads_ii_x=_road_pair_count(net, roads_ii),
    )


def segments_geojson(net: RoadNetwork) -> dict:
    """GeoJSON FeatureCollection of the segment graph (for display/debug)."""
    features = []
    for s in net.segments:
        features.append(
            {
                "type": "Feature",
                "geometry": {
                    "type": "LineString",
                    "coordinates": [[p.x, p.y] for p in s.geometry.points],
                },
                "properties": {
                    "id": s.id,
                    "name": s.name,
                    "from_junction": s.from_junction,
                    "to_junction": s.to_junction,
                },
            }
        )
    return {"type": "FeatureCollection", "features": features}
