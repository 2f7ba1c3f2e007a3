import math
import random

import pytest

from conftest import make_network, random_network
from oracles import (
    all_simple_paths,
    count_road_graph_paths,
    deflection_turn_cost,
    path_length,
    path_transitions,
)
from turnroute.connectivity import build_connectivity_graph
from turnroute.geometry import Point, SplitParams, polyline_length
from turnroute.natural_roads import build_natural_roads, split_natural_roads
from turnroute.network import EmptyNetworkError, MismatchError
from turnroute.routing import (
    Anchor,
    InfeasibleSequenceError,
    PathLeg,
    Route,
    UnreachableError,
    count_turns,
    enumerate_fewest_turn_sequences,
    fewest_turn_and_shortest_route,
    fewest_turn_route,
    locate,
    nearest_segment,
    realize_route,
    shortest_path,
    shortest_topological_distance,
    simplest_path,
)
from turnroute.snapshot import build_snapshot


@pytest.fixture(scope="module")
def grid(grid_net):
    return build_snapshot(grid_net)


@pytest.fixture(scope="module")
def bend(bend_net):
    return build_snapshot(bend_net, split_distance=5.0, split_ratio=0.2)


@pytest.fixture(scope="module")
def sharp(sharp_net):
    return build_snapshot(sharp_net, split_distance=1.0, split_ratio=0.2)


def junction_anchor(snap, jid):
    a, _ = locate(snap.network, snap.rs_unsplit, snap.network.junction(jid).location)
    return a


# Crossing pair: origin on the first horizontal street, destination on
# the last vertical avenue; they cross, so one turn suffices.
F1 = Anchor(0, 0.0)  # (0,0) on segment 0 of street st0
T1 = Anchor(20, 1.0)  # (3,3) on the last segment of avenue av3
# Parallel pair: two parallel horizontal streets (st0 and st3).
F2 = Anchor(0, 0.0)
T2 = Anchor(21, 0.0)  # (0,3) on street st3


# --------------------------- locate ---------------------------


def test_locate_midpoint(grid):
    anchor, road = locate(grid.network, grid.rs_unsplit, Point(0.5, 0.0))
    assert anchor == Anchor(0, 0.5)
    assert road == grid.rs_unsplit.segment_to_road[0]


def test_locate_junction_tie_lowest_id(grid):
    # (1,1) touches segments 3, 4 (street st1) and 12, 13 (avenue av1).
    anchor, _ = locate(grid.network, grid.rs_unsplit, Point(1.0, 1.0))
    assert anchor.segment == 3
    assert anchor.offset == 1.0


def test_locate_segment_id_query(grid):
    anchor, road = locate(grid.network, grid.rs_unsplit, 7)
    assert anchor == Anchor(7, 0.5)
    assert road == grid.rs_unsplit.segment_to_road[7]


def test_locate_off_network_matches_scan(grid):
    rng = random.Random(7)
    for _ in range(25):
        pt = Point(rng.uniform(-2, 5), rng.uniform(-2, 5))
        sid, frac, d = nearest_segment(grid.network, pt)
        # Exhaustive oracle: distance to every segment geometry.
        best = min(
            min(
                math.hypot(pt.x - q.x, pt.y - q.y)
                for q in _dense_points(seg.geometry)
            )
            for seg in grid.network.segments
        )
        assert d <= best + 1e-6


def _dense_points(geometry, steps=50):
    from turnroute.geometry import point_along

    total = polyline_length(geometry)
    return [point_along(geometry, total * k / steps) for k in range(steps + 1)]


def test_locate_empty_network():
    from turnroute.network import RoadNetwork

    empty = RoadNetwork(segments=(), junctions=(), crs_note="empty")
    with pytest.raises(EmptyNetworkError):
        nearest_segment(empty, Point(0, 0))


# --------------------------- topological distance ---------------------------


def test_dt_same_road(grid):
    rs, g = grid.rs_unsplit, grid.g_unsplit
    r = rs.segment_to_road[0]
    assert shortest_topological_distance(g, r, r) == 0


def test_dt_crossing_pair_is_one(grid):
    rs, g = grid.rs_unsplit, grid.g_unsplit
    assert shortest_topological_distance(g, rs.segment_to_road[0], rs.segment_to_road[20]) == 1


def test_dt_parallel_streets_is_two(grid):
    rs, g = grid.rs_unsplit, grid.g_unsplit
    assert shortest_topological_distance(g, rs.segment_to_road[0], rs.segment_to_road[21]) == 2


def test_dt_unreachable():
    net = make_network([([(0, 0), (1, 0)], None), ([(5, 5), (6, 5)], None)])
    rs = build_natural_roads(net)
    g = build_connectivity_graph(rs, net)
    with pytest.raises(UnreachableError):
        shortest_topological_distance(g, 0, 1)


# --------------------------- sequence enumeration ---------------------------


def test_enumerate_grid_parallel_pair(grid):
    rs, g = grid.rs_unsplit, grid.g_unsplit
    start, end = rs.segment_to_road[0], rs.segment_to_road[21]
    seqs, truncated = enumerate_fewest_turn_sequences(g, start, end)
    assert not truncated
    assert len(seqs) == 4  # one per avenue
    assert all(len(s) == 3 for s in seqs)
    assert seqs == sorted(seqs)


def test_enumerate_trivial_cases(grid):
    rs, g = grid.rs_unsplit, grid.g_unsplit
    r0 = rs.segment_to_road[0]
    assert enumerate_fewest_turn_sequences(g, r0, r0) == ([(r0,)], False)
    r7 = rs.segment_to_road[20]
    seqs, _ = enumerate_fewest_turn_sequences(g, r0, r7)
    assert seqs == [(r0, r7)]


def test_enumerate_cap_truncates(grid):
    rs, g = grid.rs_unsplit, grid.g_unsplit
    start, end = rs.segment_to_road[0], rs.segment_to_road[21]
    seqs, truncated = enumerate_fewest_turn_sequences(g, start, end, cap=2)
    assert truncated
    assert len(seqs) == 2


def test_enumerate_matches_walk_counting():
    # Brute-force oracle: walks of exactly D_t links from start to end.
    for seed in range(6):
        net = random_network(seed)
        rs = build_natural_roads(net)
        g = build_connectivity_graph(rs, net)
        rng = random.Random(seed)
        roads = [r.id for r in rs.roads]
        for _ in range(3):
            a, b = rng.choice(roads), rng.choice(roads)
            try:
                d = shortest_topological_distance(g, a, b)
            except UnreachableError:
                continue
            seqs, truncated = enumerate_fewest_turn_sequences(g, a, b, d)
            assert not truncated
            assert all(len(s) == d + 1 for s in seqs)
            assert len(seqs) == count_road_graph_paths(g, a, b, d)


# --------------------------- realization ---------------------------


def test_realize_single_road_walk(grid):
    rs = grid.rs_unsplit
    road = rs.segment_to_road[0]
    legs, dist = realize_route(grid.network, rs, (road,), Anchor(0, 0.25), Anchor(2, 0.75))
    assert dist == pytest.approx(2.5)
    assert [leg.segment for leg in legs] == [0, 1, 2]


def test_realize_grid_crossing_pair(grid):
    rs = grid.rs_unsplit
    seq = (rs.segment_to_road[0], rs.segment_to_road[20])
    legs, dist = realize_route(grid.network, rs, seq, F1, T1)
    assert dist == pytest.approx(6.0)


def test_realize_picks_cheaper_transfer_junction():
    net = make_network(
        [
            ([(0, 0), (10, 0)], "bar"),
            ([(0, 0), (5, 1)], "arc"),
            ([(5, 1), (10, 0)], "arc"),
        ]
    )
    rs = build_natural_roads(net)
    bar, arc = rs.segment_to_road[0], rs.segment_to_road[1]
    # Anchor at x=2 on the bar, and at the midpoint of the first arc leg.
    legs, dist = realize_route(net, rs, (bar, arc), Anchor(0, 0.2), Anchor(1, 0.5))
    arc_leg = math.sqrt(26)
    # Hand-checked: transfer at (0,0) costs 2 + 0.5*sqrt(26); at (10,0) it
    # costs 8 + 1.5*sqrt(26).
    assert dist == pytest.approx(2 + 0.5 * arc_leg)


def test_realize_precondition_checked(grid):
    rs = grid.rs_unsplit
    with pytest.raises(MismatchError):
        realize_route(grid.network, rs, (rs.segment_to_road[0],), F1, T1)


# --------------------------- fewest-turn route ---------------------------


def test_ft_grid_crossing_pair(grid):
    route = fewest_turn_route(grid.network, grid.rs_unsplit, grid.g_unsplit, F1, T1)
    assert route.turns_topological == 1
    assert route.distance == pytest.approx(6.0)
    assert route.turns_perceptual == 1
    assert not route.truncated


def test_ft_same_anchor_zero_route(grid):
    a = Anchor(5, 0.5)
    route = fewest_turn_route(grid.network, grid.rs_unsplit, grid.g_unsplit, a, a)
    assert route.distance == 0
    assert route.turns_topological == 0
    assert len(route.geometry) == 2
    assert route.geometry[0] == route.geometry[1]


def test_ft_accepts_raw_points(grid):
    route = fewest_turn_route(
        grid.network, grid.rs_unsplit, grid.g_unsplit, Point(0, 0), Point(3, 3)
    )
    assert route.distance == pytest.approx(6.0)


def test_ft_bend_goes_around(bend):
    F, T = Anchor(0, 0.5), Anchor(35, 0.5)
    ft = fewest_turn_route(bend.network, bend.rs_unsplit, bend.g_unsplit, F, T)
    st = shortest_path(bend.network, F, T, bend.rs_unsplit)
    assert ft.turns_topological == 0
    assert ft.distance > st.distance


def test_ft_unreachable():
    net = make_network([([(0, 0), (1, 0)], None), ([(5, 5), (6, 5)], None)])
    rs = build_natural_roads(net)
    g = build_connectivity_graph(rs, net)
    with pytest.raises(UnreachableError):
        fewest_turn_route(net, rs, g, Anchor(0, 0.5), Anchor(1, 0.5))


def test_ft_deterministic(grid):
    r1 = fewest_turn_route(grid.network, grid.rs_unsplit, grid.g_unsplit, F2, T2)
    r2 = fewest_turn_route(grid.network, grid.rs_unsplit, grid.g_unsplit, F2, T2)
    assert r1 == r2


def test_ft_distance_tie_breaks_lexicographically(grid):
    # F2/T2 admit four equal-length realizations (one per avenue); the
    # lexicographically smallest road sequence wins.
    route = fewest_turn_route(grid.network, grid.rs_unsplit, grid.g_unsplit, F2, T2)
    seqs, _ = enumerate_fewest_turn_sequences(
        grid.g_unsplit,
        grid.rs_unsplit.segment_to_road[0],
        grid.rs_unsplit.segment_to_road[21],
    )
    realized = []
    for seq in seqs:
        _, dist = realize_route(grid.network, grid.rs_unsplit, seq, F2, T2)
        realized.append((dist, seq))
    best = min(realized)
    assert route.distance == pytest.approx(best[0])
    assert route.road_sequence == best[1]


# --------------------------- fewest-turn-and-shortest ---------------------------


def test_fts_grid_equals_ft(grid):
    ft = fewest_turn_route(grid.network, grid.rs_unsplit, grid.g_unsplit, F1, T1)
    fts = fewest_turn_and_shortest_route(
        grid.network, grid.rs_split, grid.g_split, F1, T1, grid.rs_unsplit
    )
    assert fts.distance == pytest.approx(ft.distance)
    assert fts.turns_perceptual == ft.turns_perceptual


def test_fts_bend_takes_shortcut(bend):
    F, T = Anchor(0, 0.5), Anchor(35, 0.5)
    ft = fewest_turn_route(bend.network, bend.rs_unsplit, bend.g_unsplit, F, T)
    fts = fewest_turn_and_shortest_route(
        bend.network, bend.rs_split, bend.g_split, F, T, bend.rs_unsplit
    )
    assert fts.distance < ft.distance
    assert fts.turns_perceptual >= 1
    # The shortcut segment is the walk's middle.
    cut_id = 36
    assert any(leg.segment == cut_id for leg in fts.legs)


def test_fts_sharp_angle_shortcut(sharp):
    F, T = Anchor(3, 0.5), Anchor(7, 0.5)
    ft = fewest_turn_route(sharp.network, sharp.rs_unsplit, sharp.g_unsplit, F, T)
    fts = fewest_turn_and_shortest_route(
        sharp.network, sharp.rs_split, sharp.g_split, F, T, sharp.rs_unsplit
    )
    assert fts.distance < ft.distance


def test_ft_cap_truncation_propagates(grid):
    route = fewest_turn_route(grid.network, grid.rs_unsplit, grid.g_unsplit, F2, T2, cap=2)
    assert route.truncated
    assert route.turns_topological == 2  # still a valid fewest-turn route


def test_sp_anchor_on_loop_segment():
    net = make_network(
        [
            ([(0, 0), (2, 2), (4, 0), (2, -2), (0, 0)], "loop"),
            ([(0, 0), (-5, 0)], "bar"),
        ]
    )
    rs = build_natural_roads(net)
    loop_len = net.segment_length(0)
    route = simplest_path(net, rs, Anchor(0, 0.75), Anchor(1, 1.0))
    assert route.distance == pytest.approx(0.25 * loop_len + 5)
    assert sum(leg.length_on(net) for leg in route.legs) == pytest.approx(route.distance)


def test_fts_requires_split_set(grid):
    with pytest.raises(ValueError):
        fewest_turn_and_shortest_route(
            grid.network, grid.rs_unsplit, grid.g_unsplit, F1, T1, grid.rs_unsplit
        )


# --------------------------- shortest path ---------------------------


def test_st_grid_crossing_pair(grid):
    route = shortest_path(grid.network, F1, T1, grid.rs_unsplit)
    assert route.distance == pytest.approx(6.0)
    assert route.mode == "st"


def test_st_within_one_segment(grid):
    route = shortest_path(grid.network, Anchor(4, 0.25), Anchor(4, 0.75), grid.rs_unsplit)
    assert route.distance == pytest.approx(0.5)
    assert [leg.segment for leg in route.legs] == [4]


def test_st_anchor_on_loop_segment_walks_cheaper_side():
    # A diamond loop attached to a bar; both loop ends are the same junction,
    # so the source leg must follow whichever side was actually priced.
    net = make_network(
        [
            ([(0, 0), (2, 2), (4, 0), (2, -2), (0, 0)], "loop"),
            ([(0, 0), (-5, 0)], "bar"),
        ]
    )
    rs = build_natural_roads(net)
    loop_len = net.segment_length(0)
    route = shortest_path(net, Anchor(0, 0.75), Anchor(1, 1.0), rs)
    assert route.distance == pytest.approx(0.25 * loop_len + 5)
    assert sum(leg.length_on(net) for leg in route.legs) == pytest.approx(route.distance)
    assert route.legs[0] == PathLeg(0, 0.75, 1.0)


def test_st_matches_exhaustive_enumeration():
    for seed in range(10):
        net = random_network(seed)
        rs = build_natural_roads(net)
        rng = random.Random(seed + 50)
        juncs = [j.id for j in net.junctions]
        ja, jb = rng.sample(juncs, 2)
        aa, _ = locate(net, rs, net.junction(ja).location)
        ab, _ = locate(net, rs, net.junction(jb).location)
        route = shortest_path(net, aa, ab, rs)
        lens = [path_length(net, p) for p in all_simple_paths(net, ja, jb)]
        assert route.distance == pytest.approx(min(lens), abs=1e-9)


# --------------------------- simplest path ---------------------------


def test_sp_straight_corridor_zero_turns():
    net = make_network(
        [([(0, 0), (1, 0)], None), ([(1, 0), (2, 0)], None), ([(2, 0), (3, 0)], None)]
    )
    rs = build_natural_roads(net)
    route = simplest_path(net, rs, Anchor(0, 0.0), Anchor(2, 1.0))
    assert route.turns_topological == 0
    assert route.distance == pytest.approx(3.0)


def test_sp_grid_crossing_pair(grid):
    route = simplest_path(grid.network, grid.rs_unsplit, F1, T1)
    # The zigzag staircase costs 5 turns and is never selected; the L-shaped
    # route costs 1 turn at the same distance.
    assert route.turns_topological == 1
    assert route.distance == pytest.approx(6.0)


def test_sp_matches_lexicographic_enumeration():
    for seed in range(10):
        net = random_network(seed)
        rs = build_natural_roads(net)
        rng = random.Random(seed + 77)
        juncs = [j.id for j in net.junctions]
        ja, jb = rng.sample(juncs, 2)
        aa, _ = locate(net, rs, net.junction(ja).location)
        ab, _ = locate(net, rs, net.junction(jb).location)
        route = simplest_path(net, rs, aa, ab)
        costs = [
            deflection_turn_cost(net, p, ja) for p in all_simple_paths(net, ja, jb)
        ]
        best = min(costs)
        assert route.turns_topological == best[0]
        assert route.distance == pytest.approx(best[1], abs=1e-9)


# --------------------------- turn counting ---------------------------


def test_count_turns_within_one_road(grid):
    rs = grid.rs_unsplit
    assert count_turns([0, 1, 2], rs.segment_to_road) == 0


def test_count_turns_staircase_is_five(grid):
    rs = grid.rs_unsplit
    staircase = [0, 12, 4, 16, 8, 20]
    assert count_turns(staircase, rs.segment_to_road) == 5


def test_count_turns_unmapped_segment(grid):
    with pytest.raises(MismatchError):
        count_turns([999], grid.rs_unsplit.segment_to_road)


def test_ft_turns_equal_topological_distance(grid):
    for origin, dest in [(F1, T1), (F2, T2)]:
        route = fewest_turn_route(grid.network, grid.rs_unsplit, grid.g_unsplit, origin, dest)
        assert count_turns(route.legs, grid.rs_unsplit.segment_to_road) == route.turns_topological


# --------------------------- cross-mode invariants ---------------------------


def test_mode_orderings_on_random_fixtures():
    for seed in range(12):
        net = random_network(seed)
        snap = build_snapshot(net)
        rng = random.Random(seed + 7)
        juncs = [j.id for j in net.junctions]
        ja, jb = rng.sample(juncs, 2)
        aa = junction_anchor(snap, ja)
        ab = junction_anchor(snap, jb)
        ft = snap.route("ft", aa, ab)
        st = snap.route("st", aa, ab)
        sp = snap.route("sp", aa, ab)
        assert ft.distance >= st.distance - 1e-9
        assert sp.distance >= st.distance - 1e-9
        assert count_turns(sp.legs, snap.rs_unsplit.segment_to_road) >= ft.turns_topological


def test_route_symmetry():
    for seed in range(8):
        net = random_network(seed)
        snap = build_snapshot(net)
        rng = random.Random(seed)
        juncs = [j.id for j in net.junctions]
        ja, jb = rng.sample(juncs, 2)
        aa, ab = junction_anchor(snap, ja), junction_anchor(snap, jb)
        for mode in ("st", "ft"):
            there = snap.route(mode, aa, ab)
            back = snap.route(mode, ab, aa)
            assert there.distance == pytest.approx(back.distance, abs=1e-9)


def test_self_touching_road_uses_free_junction_transfer(pretzel_net):
    # The pretzel is one natural road passing the origin junction twice; the
    # optimal along-road walk transfers there instead of walking the loop.
    net = pretzel_net
    rs = build_natural_roads(net)
    assert len(rs.roads) == 1
    g = build_connectivity_graph(rs, net)
    last = len(net.segments) - 1
    route = fewest_turn_route(net, rs, g, Anchor(0, 0.5), Anchor(last, 0.5))
    assert route.turns_topological == 0
    assert route.distance == pytest.approx(4.0)
    assert sum(leg.length_on(net) for leg in route.legs) == pytest.approx(4.0)
    # No loop segment is traversed.
    assert {leg.segment for leg in route.legs} == {0, last}


def test_ring_road_walks_the_short_way_around():
    from conftest import octagon_ring_features

    net = make_network(octagon_ring_features())
    rs = build_natural_roads(net, threshold_deg=46)
    assert rs.roads[0].is_ring
    g = build_connectivity_graph(rs, net)
    leg_len = net.segment_length(0)
    # Anchors two segments apart: wrapping the ring start is the short way.
    route = fewest_turn_route(net, rs, g, Anchor(0, 0.5), Anchor(6, 0.5))
    assert route.turns_topological == 0
    assert route.distance == pytest.approx(2 * leg_len)
    long_way = fewest_turn_route(net, rs, g, Anchor(0, 0.5), Anchor(2, 0.5))
    assert long_way.distance == pytest.approx(2 * leg_len)


def test_geometry_length_equals_distance(grid, bend):
    for snap, (a, b) in [(grid, (F1, T1)), (bend, (Anchor(0, 0.5), Anchor(35, 0.5)))]:
        for mode in ("st", "sp", "ft", "fts"):
            route = snap.route(mode, a, b)
            if route.distance > 0:
                from turnroute.geometry import Polyline

                geom_len = polyline_length(Polyline(route.geometry))
                assert geom_len == pytest.approx(route.distance, rel=1e-9)
            leg_sum = sum(leg.length_on(snap.network) for leg in route.legs)
            assert leg_sum == pytest.approx(route.distance, rel=1e-9)
