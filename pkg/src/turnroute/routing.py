"""Route engines over the road network and its connectivity graphs.

Four modes are provided:

* ``ft``  - fewest-turn: breadth-first topological distance over the road
  connectivity graph, depth-first enumeration of all minimum-turn road
  sequences, then the cheapest geometric realization.
* ``fts`` - fewest-turn-and-shortest: the same machinery run on the split
  road set, trading a small number of extra turns for shorter distance.
* ``st``  - shortest geometric path over the segment graph (baseline).
* ``sp``  - simplest-path stand-in: lexicographic (turn count, distance)
  over the directed segment dual, a turn being a junction deflection above
  the join threshold.

All operations are read-only over immutable snapshots and safe to run
concurrently.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from itertools import groupby

from .connectivity import RoadGraph
from .geometry import Point, deflection_angle, distance, point_along, sub_points
from .natural_roads import NaturalRoad, RoadSet
from .network import EmptyNetworkError, MismatchError, RoadNetwork


class UnreachableError(ValueError):
    """No route exists between the two endpoints."""


class InfeasibleSequenceError(ValueError):
    """A road sequence admits no junction-connected walk."""


@dataclass(frozen=True)
class Anchor:
    """A position on the network: a segment and an arc fraction along it."""

    segment: int
    offset: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.offset <= 1.0):
            raise ValueError(f"anchor offset {self.offset} outside [0, 1]")


@dataclass(frozen=True)
class PathLeg:
    """Traversal of (part of) one segment, as geometry fractions."""

    segment: int
    start: float
    end: float

    @property
    def orientation(self) -> int:
        return -1 if self.end < self.start else 1

    def length_on(self, net: RoadNetwork) -> float:
        return abs(self.end - self.start) * net.segment_length(self.segment)


@dataclass(frozen=True)
class Route:
    mode: str
    road_sequence: tuple[int, ...]
    legs: tuple[PathLeg, ...]
    geometry: tuple[Point, ...]
    distance: float
    turns_topological: int
    turns_perceptual: int
    origin: Anchor
    destination: Anchor
    truncated: bool = False

    @property
    def path(self) -> tuple[tuple[int, int], ...]:
        """(segment id, travel orientation) pairs, anchors included."""
        return tuple((leg.segment, leg.orientation) for leg in self.legs)


# --------------------------- anchors ---------------------------


def _nearest_on_segment(pt: Point, seg_geometry) -> tuple[float, float]:
    """(distance, arc fraction) of the closest point of a polyline."""
    pts = seg_geometry.points
    cum = seg_geometry.cumulative()
    total = cum[-1]
    best_d = math.inf
    best_arc = 0.0
    for k in range(len(pts) - 1):
        a, b = pts[k], pts[k + 1]
        dx, dy = b.x - a.x, b.y - a.y
        seg_len2 = dx * dx + dy * dy
        t = 0.0
        if seg_len2 > 0:
            t = ((pt.x - a.x) * dx + (pt.y - a.y) * dy) / seg_len2
            t = min(1.0, max(0.0, t))
        cx, cy = a.x + dx * t, a.y + dy * t
        d = math.hypot(pt.x - cx, pt.y - cy)
        if d < best_d - 1e-12:
            best_d = d
            best_arc = cum[k] + math.sqrt(seg_len2) * t
    frac = best_arc / total if total > 0 else 0.0
    # Pin floating noise so junction-anchored offsets are exactly 0 or 1.
    if frac < 1e-12:
        frac = 0.0
    elif frac > 1.0 - 1e-12:
        frac = 1.0
    return best_d, frac


def nearest_segment(net: RoadNetwork, pt: Point) -> tuple[int, float, float]:
    """Nearest segment to a point: (segment id, offset fraction, distance).

    Ties within 1e-9 resolve to the lowest segment id.
    """
    if not net.segments:
        raise EmptyNetworkError("cannot locate on an empty network")
    best: tuple[int, float, float] | None = None
    for seg in net.segments:
        d, frac = _nearest_on_segment(pt, seg.geometry)
        if best is None or d < best[2] - 1e-9:
            best = (seg.id, frac, d)
    return best


def locate(
    net: RoadNetwork, rs: RoadSet, query: "Point | int | tuple[float, float]"
) -> tuple[Anchor, int]:
    """Resolve a point or segment id to an anchor and its containing road."""
    if isinstance(query, int):
        anchor = Anchor(query, 0.5)
    else:
        if isinstance(query, tuple):
            query = Point(*query)
        sid, frac, _ = nearest_segment(net, query)
        anchor = Anchor(sid, frac)
    return anchor, rs.segment_to_road[anchor.segment]


def _resolve(net, rs, endpoint) -> tuple[Anchor, int]:
    if isinstance(endpoint, Anchor):
        if endpoint.segment not in rs.segment_to_road:
            raise MismatchError(f"segment {endpoint.segment} not in road set")
        return endpoint, rs.segment_to_road[endpoint.segment]
    return locate(net, rs, endpoint)


# --------------------------- topological search ---------------------------


def bfs_levels(g: RoadGraph, source: int) -> dict[int, int]:
    levels = {source: 0}
    frontier = [source]
    while frontier:
        nxt = []
        for node in frontier:
            for nb in g.neighbors(node):
                if nb not in levels:
                    levels[nb] = levels[node] + 1
                    nxt.append(nb)
        frontier = nxt
    return levels


def shortest_topological_distance(g: RoadGraph, start: int, end: int) -> int:
    """Minimum link count between two roads; equals the minimum turn count."""
    levels = bfs_levels(g, start)
    if end not in levels:
        raise UnreachableError(f"roads {start} and {end} are not connected")
    return levels[end]


def enumerate_fewest_turn_sequences(
    g: RoadGraph,
    start: int,
    end: int,
    d: int | None = None,
    cap: int = 10_000,
) -> tuple[list[tuple[int, ...]], bool]:
    """All road sequences of length d+1 whose steps each advance one BFS level.

    Sequences come out in lexicographic road-id order. At most ``cap``
    sequences are returned; the flag reports whether more exist.
    """
    levels_start = bfs_levels(g, start)
    if end not in levels_start:
        raise UnreachableError(f"roads {start} and {end} are not connected")
    if d is None:
        d = levels_start[end]
    levels_end = bfs_levels(g, end)

    results: list[tuple[int, ...]] = []
    prefix = [start]

    def dfs(node: int, depth: int) -> bool:
        if len(results) > cap:
            return False
        if node == end and depth == d:
            results.append(tuple(prefix))
            return len(results) <= cap
        for nb in g.neighbors(node):
            if (
                levels_start.get(nb) == depth + 1
                and levels_end.get(nb, -1) == d - depth - 1
            ):
                prefix.append(nb)
                ok = dfs(nb, depth + 1)
                prefix.pop()
                if not ok:
                    return False
        return True

    dfs(start, 0)
    truncated = len(results) > cap
    return results[:cap], truncated


# --------------------------- realization ---------------------------


def _anchor_arc(road: NaturalRoad, anchor: Anchor) -> float:
    k = road.chain_pos[anchor.segment]
    return road.arc_of_anchor(anchor.offset, k)


def _interval_legs(road: NaturalRoad, arc_a: float, arc_b: float) -> list[PathLeg]:
    """Legs walked when moving along a road between two arc positions."""
    if arc_a == arc_b:
        return []
    lo, hi = (arc_a, arc_b) if arc_a < arc_b else (arc_b, arc_a)
    forward: list[PathLeg] = []
    for k, (sid, reverse) in enumerate(road.chain):
        s0, s1 = road.cum[k], road.cum[k + 1]
        ov0, ov1 = max(lo, s0), min(hi, s1)
        if ov1 - ov0 <= 0:
            continue
        seg_len = s1 - s0
        f0 = (ov0 - s0) / seg_len
        f1 = (ov1 - s0) / seg_len
        if reverse:
            f0, f1 = 1.0 - f0, 1.0 - f1
        forward.append(PathLeg(sid, f0, f1))
    if arc_a < arc_b:
        return forward
    return [PathLeg(leg.segment, leg.end, leg.start) for leg in reversed(forward)]


def _ensure_anchor_legs(
    legs: list[PathLeg], a_from: Anchor, a_to: Anchor
) -> list[PathLeg]:
    """Guarantee the anchor segments open and close the leg list.

    An anchor sitting exactly on a junction contributes a zero-length leg;
    turn counting still sees its road membership, which keeps turn-count
    comparisons between engines and oracles consistent.
    """
    if not legs:
        legs = [PathLeg(a_from.segment, a_from.offset, a_from.offset)]
    if legs[0].segment != a_from.segment:
        legs.insert(0, PathLeg(a_from.segment, a_from.offset, a_from.offset))
    if legs[-1].segment != a_to.segment:
        legs.append(PathLeg(a_to.segment, a_to.offset, a_to.offset))
    return legs


def _legs_geometry(net: RoadNetwork, legs: list[PathLeg], a_from: Anchor) -> tuple[Point, ...]:
    pts: list[Point] = []
    for leg in legs:
        if leg.start == leg.end:
            continue
        geom = net.segment(leg.segment).geometry
        total = net.segment_length(leg.segment)
        sub = sub_points(geom, leg.start * total, leg.end * total)
        for p in sub:
            if not pts or distance(pts[-1], p) > 0:
                pts.append(p)
    if len(pts) >= 2:
        return tuple(pts)
    # Zero-length route: a degenerate two-point line at the anchor.
    geom = net.segment(a_from.segment).geometry
    p = point_along(geom, a_from.offset * net.segment_length(a_from.segment))
    return (p, p)


def realize_route(
    net: RoadNetwork,
    rs: RoadSet,
    sequence: tuple[int, ...] | list[int],
    a_from: Anchor,
    a_to: Anchor,
) -> tuple[list[PathLeg], float]:
    """Cheapest junction-connected walk honoring a road sequence.

    Dijkstra over a layered graph: layer i holds road i's junction
    positions; within a layer, moves follow the chain (plus free transfers
    between repeated occurrences of one junction); layer transitions are
    free at junctions shared by consecutive roads. Raises
    InfeasibleSequenceError when no walk exists.
    """
    sequence = tuple(sequence)
    roads = [rs.road(r) for r in sequence]
    if rs.segment_to_road[a_from.segment] != sequence[0]:
        raise MismatchError("origin anchor is not on the first road of the sequence")
    if rs.segment_to_road[a_to.segment] != sequence[-1]:
        raise MismatchError("destination anchor is not on the last road of the sequence")
    arc_from = _anchor_arc(roads[0], a_from)
    arc_to = _anchor_arc(roads[-1], a_to)
    last = len(roads) - 1

    # Junction id -> positions, per layer, for free same-junction transfers.
    jpos: list[dict[int, list[int]]] = []
    for road in roads:
        index: dict[int, list[int]] = {}
        for p, jid in enumerate(road.junctions):
            index.setdefault(jid, []).append(p)
        jpos.append(index)

    SRC = ("src",)
    SNK = ("snk",)

    # Edges carry the walked arc interval (layer, from_arc, to_arc), or None
    # for free hops (same-junction transfers and layer transitions), so the
    # reconstructed legs describe exactly the walk that was priced.
    def neighbors(node):
        if node == SRC:
            for p, _ in enumerate(roads[0].junctions):
                cum = roads[0].cum[p]
                yield ("n", 0, p), abs(arc_from - cum), (0, arc_from, cum)
            if last == 0:
                yield SNK, abs(arc_from - arc_to), (0, arc_from, arc_to)
            return
        if node == SNK:
            return
        _, i, p = node
        road = roads[i]
        if p > 0:
            yield (
                ("n", i, p - 1),
                road.cum[p] - road.cum[p - 1],
                (i, road.cum[p], road.cum[p - 1]),
            )
        if p < len(road.junctions) - 1:
            yield (
                ("n", i, p + 1),
                road.cum[p + 1] - road.cum[p],
                (i, road.cum[p], road.cum[p + 1]),
            )
        jid = road.junctions[p]
        for q in jpos[i][jid]:
            if q != p:
                yield ("n", i, q), 0.0, None
        if i < last:
            for q in jpos[i + 1].get(jid, ()):
                yield ("n", i + 1, q), 0.0, None
        if i == last:
            yield SNK, abs(arc_to - road.cum[p]), (i, road.cum[p], arc_to)

    dist: dict = {SRC: 0.0}
    parent: dict = {}
    heap = [(0.0, SRC)]
    done = set()
    while heap:
        d, node = heapq.heappop(heap)
        if node in done:
            continue
        done.add(node)
        if node == SNK:
            break
        for nb, w, interval in neighbors(node):
            nd = d + w
            if nd < dist.get(nb, math.inf) - 1e-15:
                dist[nb] = nd
                parent[nb] = (node, interval)
                heapq.heappush(heap, (nd, nb))
    if SNK not in done:
        raise InfeasibleSequenceError(f"no walk realizes sequence {sequence}")

    intervals: list[tuple[int, float, float]] = []
    node = SNK
    while node != SRC:
        node, interval = parent[node]
        if interval is not None:
            intervals.append(interval)
    intervals.reverse()

    legs: list[PathLeg] = []
    for i, a, b in intervals:
        legs.extend(_interval_legs(roads[i], a, b))
    legs = _ensure_anchor_legs(legs, a_from, a_to)
    return legs, dist[SNK]


# --------------------------- turn counting ---------------------------


def _leg_segment(entry) -> int:
    if isinstance(entry, PathLeg):
        return entry.segment
    if isinstance(entry, tuple):
        return entry[0]
    return int(entry)


def count_turns(path, segment_to_road: dict[int, int]) -> int:
    """Number of transitions between different roads along a path."""
    roads = []
    for entry in path:
        sid = _leg_segment(entry)
        if sid not in segment_to_road:
            raise MismatchError(f"segment {sid} is not mapped to a road")
        roads.append(segment_to_road[sid])
    return sum(1 for a, b in zip(roads, roads[1:]) if a != b)


def _road_sequence_of(legs, segment_to_road: dict[int, int]) -> tuple[int, ...]:
    roads = [segment_to_road[leg.segment] for leg in legs]
    return tuple(r for r, _ in groupby(roads))


# --------------------------- fewest-turn engines ---------------------------


def fewest_turn_route(
    net: RoadNetwork,
    rs: RoadSet,
    g: RoadGraph,
    origin,
    destination,
    cap: int = 10_000,
    *,
    mode: str = "ft",
    perceptual_map: dict[int, int] | None = None,
) -> Route:
    """Minimum-turn route: cheapest realization over all fewest-turn sequences."""
    a_from, r_from = _resolve(net, rs, origin)
    a_to, r_to = _resolve(net, rs, destination)
    d = shortest_topological_distance(g, r_from, r_to)
    sequences, truncated = enumerate_fewest_turn_sequences(g, r_from, r_to, d, cap)
    best: tuple[float, tuple[int, ...], list[PathLeg]] | None = None
    infeasible = 0
    for seq in sequences:
        try:
            legs, dist = realize_route(net, rs, seq, a_from, a_to)
        except InfeasibleSequenceError:
            infeasible += 1
            continue
        if best is None or (dist, seq) < (best[0], best[1]):
            best = (dist, seq, legs)
    if best is None:
        raise InfeasibleSequenceError(
            f"all {infeasible} fewest-turn sequences were infeasible"
        )
    dist, seq, legs = best
    pmap = perceptual_map if perceptual_map is not None else rs.segment_to_road
    return Route(
        mode=mode,
        road_sequence=seq,
        legs=tuple(legs),
        geometry=_legs_geometry(net, legs, a_from),
        distance=dist,
        turns_topological=d,
        turns_perceptual=count_turns(legs, pmap),
        origin=a_from,
        destination=a_to,
        truncated=truncated,
    )


def fewest_turn_and_shortest_route(
    net: RoadNetwork,
    rs_split: RoadSet,
    g_split: RoadGraph,
    origin,
    destination,
    rs_unsplit: RoadSet,
    cap: int = 10_000,
) -> Route:
    """Fewest-turn routing over the split road set; perceptual turns counted
    against the unsplit roads."""
    if rs_split.kind != "split":
        raise ValueError("fewest_turn_and_shortest_route expects the split road set")
    return fewest_turn_route(
        net,
        rs_split,
        g_split,
        origin,
        destination,
        cap,
        mode="fts",
        perceptual_map=rs_unsplit.segment_to_road,
    )


# --------------------------- shortest path ---------------------------


def _junction_adjacency(net: RoadNetwork) -> dict[int, list[tuple[int, int, float]]]:
    """junction -> [(other junction, segment id, length)], loops skipped."""
    adj: dict[int, list[tuple[int, int, float]]] = {}
    for seg in net.segments:
        if seg.is_loop:
            continue
        L = net.segment_length(seg.id)
        adj.setdefault(seg.from_junction, []).append((seg.to_junction, seg.id, L))
        adj.setdefault(seg.to_junction, []).append((seg.from_junction, seg.id, L))
    for lst in adj.values():
        lst.sort()
    return adj


def shortest_path(
    net: RoadNetwork,
    origin,
    destination,
    rs_unsplit: RoadSet,
) -> Route:
    """Minimum geometric distance over the segment graph (Dijkstra),
    honoring partial first/last segments."""
    a_from, _ = _resolve(net, rs_unsplit, origin)
    a_to, _ = _resolve(net, rs_unsplit, destination)
    s0 = net.segment(a_from.segment)
    s1 = net.segment(a_to.segment)
    L0 = net.segment_length(s0.id)
    L1 = net.segment_length(s1.id)
    adj = _junction_adjacency(net)

    dist: dict[int, float] = {}
    # jid -> (prev jid, seg id); seeds carry (None, entry fraction) so the
    # source leg knows which end of the anchor segment was walked (the two
    # ends coincide for loop segments).
    parent: dict[int, tuple[int | None, float | None]] = {}
    heap: list[tuple[float, int]] = []
    for jid, cost, end_frac in (
        (s0.from_junction, a_from.offset * L0, 0.0),
        (s0.to_junction, (1.0 - a_from.offset) * L0, 1.0),
    ):
        if cost < dist.get(jid, math.inf):
            dist[jid] = cost
            parent[jid] = (None, end_frac)
            heapq.heappush(heap, (cost, jid))
    done: set[int] = set()
    while heap:
        d, jid = heapq.heappop(heap)
        if jid in done:
            continue
        done.add(jid)
        for other, sid, w in adj.get(jid, ()):
            nd = d + w
            if nd < dist.get(other, math.inf) - 1e-15:
                dist[other] = nd
                parent[other] = (jid, sid)
                heapq.heappush(heap, (nd, other))

    candidates: list[tuple[float, int | None, float]] = []  # (total, via jid, final frac)
    if s1.from_junction in dist:
        candidates.append((dist[s1.from_junction] + a_to.offset * L1, s1.from_junction, 0.0))
    if s1.to_junction in dist:
        candidates.append(
            (dist[s1.to_junction] + (1.0 - a_to.offset) * L1, s1.to_junction, 1.0)
        )
    if s0.id == s1.id:
        candidates.append((abs(a_from.offset - a_to.offset) * L0, None, a_from.offset))
    if not candidates:
        raise UnreachableError("destination is not reachable from origin")
    total, via, entry_frac = min(candidates, key=lambda c: (c[0], c[2]))

    legs: list[PathLeg] = []
    if via is None:
        if a_from.offset != a_to.offset:
            legs.append(PathLeg(s0.id, a_from.offset, a_to.offset))
    else:
        # Junction chain back from the entry junction of the last segment.
        chain: list[int] = [via]
        edges: list[int] = []
        entry_end = 0.0
        while True:
            prev, tag = parent[chain[-1]]
            if prev is None:
                entry_end = float(tag if tag is not None else 0.0)
                break
            edges.append(int(tag))
            chain.append(prev)
        chain.reverse()
        edges.reverse()
        # Source partial leg onto the walked end of the anchor segment.
        if a_from.offset != entry_end:
            legs.append(PathLeg(s0.id, a_from.offset, entry_end))
        for jid, sid in zip(chain, edges):
            seg = net.segment(sid)
            legs.append(PathLeg(sid, 0.0, 1.0) if seg.from_junction == jid else PathLeg(sid, 1.0, 0.0))
        # Destination partial leg.
        if entry_frac == 0.0 and a_to.offset > 0.0:
            legs.append(PathLeg(s1.id, 0.0, a_to.offset))
        elif entry_frac == 1.0 and a_to.offset < 1.0:
            legs.append(PathLeg(s1.id, 1.0, a_to.offset))
    legs = _ensure_anchor_legs(legs, a_from, a_to)
    pmap = rs_unsplit.segment_to_road
    turns = count_turns(legs, pmap)
    return Route(
        mode="st",
        road_sequence=_road_sequence_of(legs, pmap),
        legs=tuple(legs),
        geometry=_legs_geometry(net, legs, a_from),
        distance=total,
        turns_topological=turns,
        turns_perceptual=turns,
        origin=a_from,
        destination=a_to,
    )


# --------------------------- simplest path ---------------------------


def _arrive_direction(net: RoadNetwork, sid: int, direction: int):
    head_end = 1 if direction > 0 else 0
    ox, oy = net.segment(sid).outward_direction(head_end)
    return (-ox, -oy)


def simplest_path(
    net: RoadNetwork,
    rs_unsplit: RoadSet,
    origin,
    destination,
    threshold_deg: float | None = None,
) -> Route:
    """Stand-in simplest path: minimize (turns, distance) lexicographically
    over the directed segment dual; a turn is a junction deflection above
    the join threshold."""
    threshold = rs_unsplit.threshold_deg if threshold_deg is None else threshold_deg
    a_from, _ = _resolve(net, rs_unsplit, origin)
    a_to, _ = _resolve(net, rs_unsplit, destination)
    s0 = net.segment(a_from.segment)
    s1 = net.segment(a_to.segment)
    L0 = net.segment_length(s0.id)
    L1 = net.segment_length(s1.id)

    src_exact = a_from.offset in (0.0, 1.0)
    dst_exact = a_to.offset in (0.0, 1.0)
    j_src = s0.end_junction(0 if a_from.offset == 0.0 else 1) if src_exact else None
    j_dst = s1.end_junction(0 if a_to.offset == 0.0 else 1) if dst_exact else None

    best_final: tuple[tuple[int, float], tuple | None, PathLeg | None] | None = None

    def consider(cost: tuple[int, float], state, final_leg: PathLeg | None) -> None:
        nonlocal best_final
        if best_final is None or cost < best_final[0]:
            best_final = (cost, state, final_leg)

    if src_exact and dst_exact and j_src == j_dst:
        consider((0, 0.0), None, None)
    if s0.id == s1.id:
        d = abs(a_from.offset - a_to.offset) * L0
        leg = PathLeg(s0.id, a_from.offset, a_to.offset) if d > 0 else None
        consider((0, d), None, leg)

    # State (segment, direction): traversing; cost measured at the head junction.
    dist: dict[tuple[int, int], tuple[int, float]] = {}
    parent: dict[tuple[int, int], tuple[tuple[int, int] | None]] = {}
    heap: list = []
    counter = 0

    def push(state, cost, prev) -> None:
        nonlocal counter
        if cost < dist.get(state, (math.inf, math.inf)):
            dist[state] = cost
            parent[state] = prev
            counter += 1
            heapq.heappush(heap, (cost, counter, state))

    if src_exact:
        for sid, end in net.junction(j_src).incident:
            direction = 1 if end == 0 else -1
            push((sid, direction), (0, net.segment_length(sid)), None)
    else:
        push((s0.id, 1), (0, (1.0 - a_from.offset) * L0), None)
        push((s0.id, -1), (0, a_from.offset * L0), None)

    done: set[tuple[int, int]] = set()
    while heap:
        cost, _, state = heapq.heappop(heap)
        if state in done:
            continue
        done.add(state)
        if best_final is not None and cost >= best_final[0]:
            # Everything still in the heap costs at least this much.
            break
        sid, direction = state
        head = net.segment(sid).end_junction(1 if direction > 0 else 0)
        arrive = _arrive_direction(net, sid, direction)
        if dst_exact and head == j_dst:
            consider(cost, state, None)
        for nsid, end in net.junction(head).incident:
            if nsid == sid:
                continue
            depart = net.segment(nsid).outward_direction(end)
            turn = 1 if deflection_angle(arrive, depart) > threshold else 0
            if not dst_exact and nsid == s1.id:
                partial = a_to.offset * L1 if end == 0 else (1.0 - a_to.offset) * L1
                entry = 0.0 if end == 0 else 1.0
                leg = PathLeg(s1.id, entry, a_to.offset) if partial > 0 else None
                consider((cost[0] + turn, cost[1] + partial), state, leg)
            ndir = 1 if end == 0 else -1
            push(
                (nsid, ndir),
                (cost[0] + turn, cost[1] + net.segment_length(nsid)),
                state,
            )

    if best_final is None:
        raise UnreachableError("destination is not reachable from origin")
    (turn_cost, total), last_state, final_leg = best_final

    legs: list[PathLeg] = []
    states: list[tuple[int, int]] = []
    state = last_state
    while state is not None:
        states.append(state)
        state = parent[state]
    states.reverse()
    for idx, (sid, direction) in enumerate(states):
        if idx == 0 and not src_exact:
            end_frac = 1.0 if direction > 0 else 0.0
            if a_from.offset != end_frac:
                legs.append(PathLeg(sid, a_from.offset, end_frac))
        else:
            legs.append(PathLeg(sid, 0.0, 1.0) if direction > 0 else PathLeg(sid, 1.0, 0.0))
    if final_leg is not None:
        legs.append(final_leg)
    legs = _ensure_anchor_legs(legs, a_from, a_to)
    pmap = rs_unsplit.segment_to_road
    return Route(
        mode="sp",
        road_sequence=_road_sequence_of(legs, pmap),
        legs=tuple(legs),
        geometry=_legs_geometry(net, legs, a_from),
        distance=total,
        turns_topological=turn_cost,
        turns_perceptual=count_turns(legs, pmap),
        origin=a_from,
        destination=a_to,
    )
