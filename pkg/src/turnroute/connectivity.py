"""Unit-weight road connectivity graph: one node per road, one link per
intersecting road pair. Every link carries the junction ids the two roads
share, so route realization can choose among transfer points."""

from __future__ import annotations

from dataclasses import dataclass

from .natural_roads import RoadSet
from .network import RoadNetwork


@dataclass(frozen=True)
class RoadGraph:
    kind: str
    node_count: int
    # per road id: tuple of (neighbor road id, shared junction ids), sorted
    adjacency: tuple[tuple[tuple[int, tuple[int, ...]], ...], ...]

    def neighbors(self, rid: int) -> tuple[int, ...]:
        return tuple(n for n, _ in self.adjacency[rid])

    def shared_junctions(self, a: int, b: int) -> tuple[int, ...]:
        for n, shared in self.adjacency[a]:
            if n == b:
                return shared
        return ()

    @property
    def link_count(self) -> int:
        return sum(len(adj) for adj in self.adjacency) // 2

    def edge_list_text(self) -> str:
        """Debug export: one ``roadA roadB junction_count`` line per link."""
        lines = []
        for a, adj in enumerate(self.adjacency):
            for b, shared in adj:
                if a < b:
                    lines.append(f"{a} {b} {len(shared)}")
        return "\n".join(lines) + ("\n" if lines else "")


def build_connectivity_graph(rs: RoadSet, net: RoadNetwork) -> RoadGraph:
    """Link two distinct roads whenever they share at least one junction."""
    by_junction: dict[int, list[int]] = {}
    for road in rs.roads:
        for jid in set(road.junctions):
            by_junction.setdefault(jid, []).append(road.id)

    shared: dict[tuple[int, int], set[int]] = {}
    for jid, members in by_junction.items():
        members = sorted(set(members))
        for i, a in enumerate(members):
            for b in members[i + 1 :]:
                shared.setdefault((a, b), set()).add(jid)

    adjacency: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in rs.roads]
    for (a, b), junctions in sorted(shared.items()):
        js = tuple(sorted(junctions))
        adjacency[a].append((b, js))
        adjacency[b].append((a, js))
    return RoadGraph(
        kind=rs.kind,
        node_count=len(rs.roads),
        adjacency=tuple(tuple(sorted(adj)) for adj in adjacency),
    )
