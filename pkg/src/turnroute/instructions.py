"""Turn-by-turn output: hierarchical XML instructions and GeoJSON transport.

The instruction document nests three levels below the route: natural roads
in traversal order, named-road runs within each, and traversed segments
within each run. Lengths are traversed lengths, so partial anchor segments
contribute only the walked part.
"""

from __future__ import annotations

from itertools import groupby
from xml.etree import ElementTree as ET

from .geometry import distance, sub_points
from .natural_roads import RoadSet
from .network import MismatchError, RoadNetwork
from .routing import PathLeg, Route

CONTINUE_THRESHOLD_DEG = 10.0


def _fmt(value: float) -> str:
    return repr(round(value, 9))


def _run_groups(route: Route, rs: RoadSet) -> list[tuple[int, list[PathLeg]]]:
    keyed = [(rs.segment_to_road[leg.segment], leg) for leg in route.legs]
    return [(rid, [leg for _, leg in grp]) for rid, grp in groupby(keyed, key=lambda kl: kl[0])]


def _run_points(net: RoadNetwork, legs: list[PathLeg]) -> list:
    pts = []
    for leg in legs:
        if leg.start == leg.end:
            continue
        total = net.segment_length(leg.segment)
        for p in sub_points(net.segment(leg.segment).geometry, leg.start * total, leg.end * total):
            if not pts or distance(pts[-1], p) > 0:
                pts.append(p)
    return pts


def _turn_label(in_dir, out_dir) -> str:
    from .geometry import deflection_angle

    deflection = deflection_angle(in_dir, out_dir)
    if deflection < CONTINUE_THRESHOLD_DEG:
        return "continue"
    cross = in_dir[0] * out_dir[1] - in_dir[1] * out_dir[0]
    return "left" if cross >= 0 else "right"


def route_instructions(route: Route, rs: RoadSet, net: RoadNetwork) -> str:
    """Serialize a route as hierarchical XML directions.

    Raises MismatchError when the route was not realized over ``rs``.
    """
    for leg in route.legs:
        if leg.segment not in rs.segment_to_road:
            raise MismatchError(f"segment {leg.segment} is not in the given road set")
    runs = _run_groups(route, rs)
    if tuple(rid for rid, _ in runs) != route.road_sequence:
        raise MismatchError("route road sequence does not match the given road set")

    root = ET.Element(
        "route",
        {
            "mode": route.mode,
            "distance": _fmt(route.distance),
            "turns": str(route.turns_topological),
            "turnsPerceptual": str(route.turns_perceptual),
        },
    )
    run_points = [_run_points(net, legs) for _, legs in runs]
    for idx, (rid, legs) in enumerate(runs):
        attrs = {
            "id": str(rid),
            "length": _fmt(sum(leg.length_on(net) for leg in legs)),
        }
        if idx > 0:
            label = "continue"
            prev_pts = run_points[idx - 1]
            next_pts = run_points[idx]
            if len(prev_pts) >= 2 and len(next_pts) >= 2:
                a, b = prev_pts[-2], prev_pts[-1]
                c, d = next_pts[0], next_pts[1]
                label = _turn_label((b.x - a.x, b.y - a.y), (d.x - c.x, d.y - c.y))
            attrs["turn"] = label
        road_el = ET.SubElement(root, "naturalRoad", attrs)
        named = [
            (name, [leg for _, leg in grp])
            for name, grp in groupby(
                ((net.segment(leg.segment).name, leg) for leg in legs),
                key=lambda nl: nl[0],
            )
        ]
        for name, member_legs in named:
            named_el = ET.SubElement(
                road_el,
                "namedRoad",
                {
                    "name": name if name is not None else "unnamed",
                    "length": _fmt(sum(leg.length_on(net) for leg in member_legs)),
                },
            )
            for leg in member_legs:
                ET.SubElement(
                    named_el,
                    "segment",
                    {"id": str(leg.segment), "length": _fmt(leg.length_on(net))},
                )
    return ET.tostring(root, encoding="unicode")


def route_geojson(route: Route, net: RoadNetwork) -> dict:
    """GeoJSON Feature of the realized route geometry and its metrics."""
    return {
        "type": "Feature",
        "geometry": {
            "type": "LineString",
            "coordinates": [[p.x, p.y] for p in route.geometry],
        },
        "properties": {
            "mode": route.mode,
            "distance": route.distance,
            "turns_topological": route.turns_topological,
            "turns_perceptual": route.turns_perceptual,
            "road_sequence": list(route.road_sequence),
        },
    }
