"""Planar geometric primitives for road geometry.

Everything here works in planar Cartesian map units; angular inputs are
projected before they reach this module. Functions are pure and values
immutable, so they are safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

Vec = tuple[float, float]


class DegenerateGeometryError(ValueError):
    """A geometric input has no usable direction or extent."""


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate ({self.x!r}, {self.y!r})")


def distance(a: Point, b: Point) -> float:
    return math.hypot(b.x - a.x, b.y - a.y)


@dataclass(frozen=True)
class Polyline:
    """Ordered chain of >= 2 points with no zero-length edges."""

    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise ValueError("polyline needs at least 2 points")
        for a, b in zip(pts, pts[1:]):
            if a.x == b.x and a.y == b.y:
                raise ValueError(f"zero-length edge at ({a.x}, {a.y})")

    def __len__(self) -> int:
        return len(self.points)

    def reverse(self) -> "Polyline":
        return Polyline(tuple(reversed(self.points)))

    def cumulative(self) -> list[float]:
        """Arc length from the first vertex to every vertex."""
        out = [0.0]
        for a, b in zip(self.points, self.points[1:]):
            out.append(out[-1] + distance(a, b))
        return out


@dataclass(frozen=True)
class SplitParams:
    """Thresholds for critical-point splitting.

    A piece is split at its point of maximum chord offset whenever that
    offset reaches ``distance`` map units or ``ratio`` times the chord
    length.
    """

    distance: float
    ratio: float

    def __post_init__(self) -> None:
        if not (self.distance > 0):
            raise ValueError("split distance must be > 0")
        if not (self.ratio > 0):
            raise ValueError("split ratio must be > 0")


def polyline_length(p: Polyline) -> float:
    """Total Euclidean length of a polyline."""
    total = 0.0
    for a, b in zip(p.points, p.points[1:]):
        total += distance(a, b)
    return total


def deflection_angle(dir_in: Vec, dir_out: Vec) -> float:
    """Angle in degrees between the continuation of ``dir_in`` and ``dir_out``.

    0 means straight continuation, 180 a full reversal. Raises
    DegenerateGeometryError on zero-length vectors.
    """
    ax, ay = dir_in
    bx, by = dir_out
    if ax == 0 and ay == 0:
        raise DegenerateGeometryError("zero-length incoming direction")
    if bx == 0 and by == 0:
        raise DegenerateGeometryError("zero-length outgoing direction")
    dot = ax * bx + ay * by
    cross = ax * by - ay * bx
    return math.degrees(math.atan2(abs(cross), dot))


def orthogonal_distance(pt: Point, chord: tuple[Point, Point]) -> float:
    """Perpendicular distance from ``pt`` to the infinite line through ``chord``.

    Falls back to plain point distance when the chord endpoints coincide.
    """
    a, b = chord
    dx = b.x - a.x
    dy = b.y - a.y
    norm = math.hypot(dx, dy)
    if norm == 0.0:
        return distance(pt, a)
    return abs(dx * (pt.y - a.y) - dy * (pt.x - a.x)) / norm


def _max_offset(points: tuple[Point, ...], lo: int, hi: int) -> tuple[int, float]:
    """Interior point of points[lo..hi] farthest from the lo-hi chord.

    Returns (-1, 0.0) when there is no interior point. Ties resolve to the
    lowest index.
    """
    chord = (points[lo], points[hi])
    best_i = -1
    best_d = -1.0
    for i in range(lo + 1, hi):
        d = orthogonal_distance(points[i], chord)
        if d > best_d:
            best_i = i
            best_d = d
    if best_i < 0:
        return -1, 0.0
    return best_i, best_d


def split_condition(max_offset: float, chord_length: float, params: SplitParams) -> bool:
    if max_offset >= params.distance:
        return True
    if chord_length > 0.0:
        return max_offset / chord_length >= params.ratio
    # Degenerate chord (closed ring): any positive offset counts as a bend.
    return max_offset > 0.0


def split_polyline(p: Polyline, params: SplitParams) -> list[Polyline]:
    """Recursively split ``p`` at critical points into straighter pieces.

    Each piece shares its boundary points with its neighbors, so the pieces
    concatenate exactly back to the input.
    """
    points = p.points
    pieces: list[Polyline] = []

    def rec(lo: int, hi: int) -> None:
        idx, offset = _max_offset(points, lo, hi)
        if idx >= 0 and split_condition(offset, distance(points[lo], points[hi]), params):
            rec(lo, idx)
            rec(idx, hi)
        else:
            pieces.append(Polyline(points[lo : hi + 1]))

    rec(0, len(points) - 1)
    return pieces


def point_along(p: Polyline, arc: float) -> Point:
    """Point at the given arc distance from the start (clamped to the ends)."""
    cum = p.cumulative()
    if arc <= 0:
        return p.points[0]
    if arc >= cum[-1]:
        return p.points[-1]
    for k in range(len(cum) - 1):
        if arc <= cum[k + 1]:
            a, b = p.points[k], p.points[k + 1]
            seg = cum[k + 1] - cum[k]
            t = (arc - cum[k]) / seg
            return Point(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)
    return p.points[-1]


def sub_points(p: Polyline, arc_from: float, arc_to: float) -> list[Point]:
    """Vertices walked when traveling from one arc position to another.

    The result runs in travel order (reversed when arc_from > arc_to) and
    contains at least one point; callers handle zero-length walks.
    """
    lo, hi = (arc_from, arc_to) if arc_from <= arc_to else (arc_to, arc_from)
    cum = p.cumulative()
    eps = 1e-12
    out: list[Point] = [point_along(p, lo)]
    for k, c in enumerate(cum):
        if lo + eps < c < hi - eps:
            out.append(p.points[k])
    end = point_along(p, hi)
    if distance(out[-1], end) > 0:
        out.append(end)
    if arc_from > arc_to:
        out.reverse()
    return out
