"""Natural roads: best-fit joining of segments and critical-point splitting.

A natural road is a chain of segments joined across junctions when the two
segment ends are mutually each other's smallest-deflection continuation and
the deflection stays within a threshold (45 degrees by default). Roads give
the connectivity graph its nodes; splitting curved roads at critical bends
produces the refined road set used for fewest-turn-and-shortest routing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import (
    Point,
    Polyline,
    SplitParams,
    deflection_angle,
    distance,
    orthogonal_distance,
    split_condition,
)
from .network import RoadNetwork, Segment

DEFAULT_JOIN_THRESHOLD_DEG = 45.0
DEFAULT_SPLIT_RATIO = 0.2
DEFAULT_SPLIT_DISTANCE_FRACTION = 0.05  # of the bounding-box diagonal


@dataclass(frozen=True)
class NamedRun:
    name: str | None
    start: int  # first chain index, inclusive
    end: int  # last chain index, inclusive


@dataclass(frozen=True)
class NaturalRoad:
    id: int
    chain: tuple[tuple[int, bool], ...]  # (segment id, traversed geometry-reversed)
    junctions: tuple[int, ...]  # len(chain) + 1 junction ids along the chain
    geometry: Polyline
    named_runs: tuple[NamedRun, ...]
    cum: tuple[float, ...] = ()  # arc length at each junction position
    chain_pos: dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self.chain_pos:
            object.__setattr__(
                self, "chain_pos", {sid: k for k, (sid, _) in enumerate(self.chain)}
            )

    @property
    def length(self) -> float:
        return self.cum[-1]

    @property
    def is_ring(self) -> bool:
        return len(self.junctions) > 1 and self.junctions[0] == self.junctions[-1]

    def arc_of_anchor(self, segment_offset: float, chain_index: int) -> float:
        """Arc position along the road of an offset on chain segment ``chain_index``."""
        sid, reverse = self.chain[chain_index]
        seg_len = self.cum[chain_index + 1] - self.cum[chain_index]
        t = 1.0 - segment_offset if reverse else segment_offset
        return self.cum[chain_index] + t * seg_len


@dataclass(frozen=True)
class RoadSet:
    kind: str  # "unsplit" | "split"
    roads: tuple[NaturalRoad, ...]
    segment_to_road: dict[int, int]
    threshold_deg: float = DEFAULT_JOIN_THRESHOLD_DEG

    def road(self, rid: int) -> NaturalRoad:
        return self.roads[rid]

    def road_of_segment(self, sid: int) -> NaturalRoad:
        return self.roads[self.segment_to_road[sid]]


def _pair_deflection(net: RoadNetwork, a: tuple[int, int], b: tuple[int, int]) -> float:
    """Deflection when continuing through a junction from segment end a to b."""
    sa = net.segment(a[0])
    sb = net.segment(b[0])
    ax, ay = sa.outward_direction(a[1])
    return deflection_angle((-ax, -ay), sb.outward_direction(b[1]))


def _junction_pairings(
    net: RoadNetwork, threshold_deg: float
) -> dict[tuple[int, int], tuple[int, int]]:
    """Greedy mutual-best pairing of segment ends at every junction.

    Repeatedly accepting the globally smallest remaining deflection at a
    junction realizes best-fit joining: every accepted pair is mutual-best
    among the ends still available. Ties break on end identity for
    determinism.
    """
    paired: dict[tuple[int, int], tuple[int, int]] = {}
    for junction in net.junctions:
        ends = list(junction.incident)
        candidates: list[tuple[float, tuple[int, int], tuple[int, int]]] = []
        for i, ea in enumerate(ends):
            for eb in ends[i + 1 :]:
                d = _pair_deflection(net, ea, eb)
                if d <= threshold_deg:
                    candidates.append((d, ea, eb))
        candidates.sort()
        for _, ea, eb in candidates:
            if ea not in paired and eb not in paired:
                paired[ea] = eb
                paired[eb] = ea
    return paired


def _walk_chain(
    net: RoadNetwork,
    start: tuple[int, int],
    paired: dict[tuple[int, int], tuple[int, int]],
) -> tuple[list[tuple[int, bool]], list[int]]:
    """Follow pairings from a starting (segment, entry end) until the chain ends."""
    chain: list[tuple[int, bool]] = []
    sid, entry = start
    junction_ids = [net.segment(sid).end_junction(entry)]
    while True:
        chain.append((sid, entry == 1))
        exit_end = 1 - entry
        junction_ids.append(net.segment(sid).end_junction(exit_end))
        nxt = paired.get((sid, exit_end))
        if nxt is None or nxt == start:
            break
        sid, entry = nxt
    return chain, junction_ids


def _chain_geometry(net: RoadNetwork, chain: list[tuple[int, bool]]) -> Polyline:
    points: list[Point] = []
    for sid, reverse in chain:
        pts = net.segment(sid).geometry.points
        if reverse:
            pts = tuple(reversed(pts))
        points.extend(pts if not points else pts[1:])
    return Polyline(tuple(points))


def group_named_runs(chain_names: list[str | None]) -> tuple[NamedRun, ...]:
    """Run-length encode segment names along a chain (missing names form unnamed runs)."""
    runs: list[NamedRun] = []
    for i, name in enumerate(chain_names):
        if runs and runs[-1].name == name:
            runs[-1] = NamedRun(name, runs[-1].start, i)
        else:
            runs.append(NamedRun(name, i, i))
    return tuple(runs)


def road_named_runs(road: NaturalRoad, net: RoadNetwork) -> tuple[NamedRun, ...]:
    return group_named_runs([net.segment(sid).name for sid, _ in road.chain])


def make_road(
    net: RoadNetwork,
    rid: int,
    chain: list[tuple[int, bool]],
    junction_ids: list[int],
) -> NaturalRoad:
    geometry = _chain_geometry(net, chain)
    cum = [0.0]
    for sid, _ in chain:
        cum.append(cum[-1] + net.segment_length(sid))
    return NaturalRoad(
        id=rid,
        chain=tuple(chain),
        junctions=tuple(junction_ids),
        geometry=geometry,
        named_runs=group_named_runs([net.segment(sid).name for sid, _ in chain]),
        cum=tuple(cum),
    )


def build_natural_roads(
    net: RoadNetwork, threshold_deg: float = DEFAULT_JOIN_THRESHOLD_DEG
) -> RoadSet:
    """Join segments into natural roads; every segment lands in exactly one road."""
    paired = _junction_pairings(net, threshold_deg)
    chains: list[tuple[list[tuple[int, bool]], list[int]]] = []
    visited: set[int] = set()
    # Open chains first: start walks at unpaired ends, lowest end first.
    for seg in net.segments:
        for end in (0, 1):
            if (seg.id, end) not in paired and seg.id not in visited:
                chain, jids = _walk_chain(net, (seg.id, end), paired)
                visited.update(sid for sid, _ in chain)
                chains.append((chain, jids))
    # Remaining segments belong to closed rings.
    for seg in net.segments:
        if seg.id not in visited:
            chain, jids = _walk_chain(net, (seg.id, 0), paired)
            visited.update(sid for sid, _ in chain)
            chains.append((chain, jids))

    chains.sort(key=lambda cj: min(sid for sid, _ in cj[0]))
    roads = tuple(
        make_road(net, rid, chain, jids) for rid, (chain, jids) in enumerate(chains)
    )
    seg_to_road = {sid: road.id for road in roads for sid, _ in road.chain}
    return RoadSet(
        kind="unsplit",
        roads=roads,
        segment_to_road=seg_to_road,
        threshold_deg=threshold_deg,
    )


def default_split_params(net: RoadNetwork, ratio: float = DEFAULT_SPLIT_RATIO) -> SplitParams:
    x0, y0, x1, y1 = net.bounds()
    diagonal = math.hypot(x1 - x0, y1 - y0)
    if diagonal <= 0:
        diagonal = 1.0
    return SplitParams(distance=DEFAULT_SPLIT_DISTANCE_FRACTION * diagonal, ratio=ratio)


def _split_positions(
    road: NaturalRoad, net: RoadNetwork, params: SplitParams
) -> list[tuple[int, int]]:
    """Chain-position ranges of the split pieces of one road.

    The recursion mirrors critical-point polyline splitting, except split
    points must land on junctions: a critical point interior to a segment
    moves to the nearer bracketing junction by along-road arc length (never
    past an adjacent junction). Pieces whose only candidate junctions are
    their own terminals are emitted unsplit.
    """
    pts = road.geometry.points
    cum_pts = road.geometry.cumulative()
    # Point index of every junction position along the concatenated geometry
    # (each chain segment contributes its vertex count minus the shared joint).
    jpt = [0]
    for sid, _ in road.chain:
        jpt.append(jpt[-1] + len(net.segment(sid).geometry.points) - 1)

    pieces: list[tuple[int, int]] = []

    def offsets_max(ilo: int, ihi: int) -> tuple[int, float]:
        chord = (pts[ilo], pts[ihi])
        best_i, best_d = -1, -1.0
        for i in range(ilo + 1, ihi):
            d = orthogonal_distance(pts[i], chord)
            if d > best_d:
                best_i, best_d = i, d
        return best_i, (best_d if best_i >= 0 else 0.0)

    def snap_to_position(i_star: int, plo: int, phi: int) -> int | None:
        # Exact junction hit.
        for q in range(plo + 1, phi):
            if jpt[q] == i_star:
                return q
        # Interior to some segment: bracketing junction positions.
        k = plo
        while k < phi and not (jpt[k] < i_star < jpt[k + 1]):
            k += 1
        if k >= phi:
            return None
        d_lo = cum_pts[i_star] - cum_pts[jpt[k]]
        d_hi = cum_pts[jpt[k + 1]] - cum_pts[i_star]
        first, second = (k, k + 1) if d_lo <= d_hi else (k + 1, k)
        for q in (first, second):
            if plo < q < phi:
                return q
        return None

    def rec(plo: int, phi: int) -> None:
        ilo, ihi = jpt[plo], jpt[phi]
        i_star, max_d = offsets_max(ilo, ihi)
        if i_star >= 0 and split_condition(
            max_d, distance(pts[ilo], pts[ihi]), params
        ):
            q = snap_to_position(i_star, plo, phi)
            if q is not None:
                rec(plo, q)
                rec(q, phi)
                return
        pieces.append((plo, phi))

    rec(0, len(road.chain))
    return pieces


def split_natural_roads(rs: RoadSet, net: RoadNetwork, params: SplitParams) -> RoadSet:
    """Split each road at critical bends; every piece becomes a new road."""
    if rs.kind != "unsplit":
        raise ValueError("split_natural_roads expects an unsplit road set")
    roads: list[NaturalRoad] = []
    for road in rs.roads:
        for plo, phi in _split_positions(road, net, params):
            rid = len(roads)
            roads.append(
                make_road(
                    net,
                    rid,
                    list(road.chain[plo:phi]),
                    list(road.junctions[plo : phi + 1]),
                )
            )
    seg_to_road = {sid: road.id for road in roads for sid, _ in road.chain}
    return RoadSet(
        kind="split",
        roads=tuple(roads),
        segment_to_road=seg_to_road,
        threshold_deg=rs.threshold_deg,
    )


def roads_geojson(rs: RoadSet) -> dict:
    """GeoJSON FeatureCollection of a road set (one LineString per road)."""
    features = []
    for road in rs.roads:
        features.append(
            {
                "type": "Feature",
                "geometry": {
                    "type": "LineString",
                    "coordinates": [[p.x, p.y] for p in road.geometry.points],
                },
                "properties": {
                    "id": road.id,
                    "kind": rs.kind,
                    "segments": [sid for sid, _ in road.chain],
                },
            }
        )
    return {"type": "FeatureCollection", "features": features}
