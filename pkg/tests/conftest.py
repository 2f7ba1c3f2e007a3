"""Shared fixture networks: a small street grid, bend and sharp-angle
fixtures, a hairpin road, and seeded random connected networks."""

from __future__ import annotations

import math
import random

import pytest

from turnroute.network import RoadNetwork, build_network


def make_network(features, **kwargs) -> RoadNetwork:
    """features: list of (coords, name) or (coords, name, source_id)."""
    raw = []
    for feat in features:
        coords, name = feat[0], feat[1]
        src = feat[2] if len(feat) > 2 else None
        raw.append(([tuple(map(float, c)) for c in coords], name, src))
    kwargs.setdefault("assume_lonlat", False)
    return build_network(raw, **kwargs)


def grid_features(n: int = 4, spacing: float = 1.0):
    """n x n junction grid: n horizontal streets and n vertical avenues.

    Feature order (streets 0..n-2, then all avenues, then the last street)
    makes the lowest-id tie rule anchor the origin corner on the first
    street and the far corner on the last avenue, so corner queries span
    one street and one crossing avenue. For n=4 the segment ids are:
    st0 0-2, st1 3-5, st2 6-8, av0 9-11 ... av3 18-20, st3 21-23.
    """

    def street(j):
        return [
            ([(i * spacing, j * spacing), ((i + 1) * spacing, j * spacing)], f"st{j}")
            for i in range(n - 1)
        ]

    def avenue(i):
        return [
            ([(i * spacing, j * spacing), (i * spacing, (j + 1) * spacing)], f"av{i}")
            for j in range(n - 1)
        ]

    feats = []
    for j in range(n - 1):
        feats.extend(street(j))
    for i in range(n):
        feats.extend(avenue(i))
    feats.extend(street(n - 1))
    return feats


@pytest.fixture(scope="session")
def grid_net() -> RoadNetwork:
    return make_network(grid_features())


def bend_features():
    """A 270-degree arc road (36 chord segments, radius 10) plus a straight
    shortcut between two junctions near its free ends."""
    feats = []
    angles = [math.radians(-225 + 7.5 * k) for k in range(37)]
    pts = [(10 * math.cos(a), 10 * math.sin(a)) for a in angles]
    for k in range(36):
        feats.append(([pts[k], pts[k + 1]], "arc"))
    u = pts[2]  # -210 degrees
    v = pts[34]  # +30 degrees
    feats.append(([u, v], "cut"))
    return feats


@pytest.fixture(scope="session")
def bend_net() -> RoadNetwork:
    return make_network(bend_features())


def sharp_features():
    """Two gently curved arms meeting at a sharp angle, plus a shortcut
    between the two far arms."""
    left = [(0.0, 0.0), (-2.0, 10.0), (-5.0, 19.0), (-9.0, 27.0), (-14.0, 34.0)]
    right = [(0.0, 0.0), (2.0, 10.0), (5.0, 19.0), (9.0, 27.0), (14.0, 34.0)]
    feats = []
    for k in range(4):
        feats.append(([left[k], left[k + 1]], "west"))
    for k in range(4):
        feats.append(([right[k], right[k + 1]], "east"))
    feats.append(([(-9.0, 27.0), (9.0, 27.0)], "cut"))
    return feats


@pytest.fixture(scope="session")
def sharp_net() -> RoadNetwork:
    return make_network(sharp_features())


def hairpin_features():
    """Three segments forming a 180-degree hairpin whose apex is a junction;
    per-junction deflections stay under 45 degrees."""
    return [
        ([(-3.0, 0.0), (-3.0, 8.0), (-2.0, 9.4), (0.0, 10.0)], "pin"),
        ([(0.0, 10.0), (2.0, 9.4), (3.0, 8.0)], "pin"),
        ([(3.0, 8.0), (3.0, 0.0)], "pin"),
    ]


@pytest.fixture(scope="session")
def hairpin_net() -> RoadNetwork:
    return make_network(hairpin_features())


def pretzel_features():
    """One natural road that passes the origin junction twice: a west-east
    bar continuing into a gentle loop that re-enters the origin heading
    north. Exercises free same-junction transfers during realization."""
    loop = [
        (4.0, 0.0),
        (8.0, 0.0),
        (11.0, -1.0),
        (13.0, -4.0),
        (13.0, -8.0),
        (11.0, -11.0),
        (8.0, -12.0),
        (4.0, -12.0),
        (1.0, -11.0),
        (-0.5, -9.0),
        (-1.0, -6.5),
        (0.0, -4.0),
    ]
    feats = [([(-4.0, 0.0), (0.0, 0.0)], "w"), ([(0.0, 0.0), (4.0, 0.0)], "w")]
    for a, b in zip(loop, loop[1:]):
        feats.append(([a, b], "loop"))
    feats.append(([(0.0, -4.0), (0.0, 0.0)], "n"))
    feats.append(([(0.0, 0.0), (0.0, 4.0)], "n"))
    return feats


@pytest.fixture(scope="session")
def pretzel_net() -> RoadNetwork:
    return make_network(pretzel_features())


def octagon_ring_features(radius: float = 4.0):
    pts = [
        (radius * math.cos(math.radians(45 * k)), radius * math.sin(math.radians(45 * k)))
        for k in range(8)
    ]
    return [([pts[k], pts[(k + 1) % 8]], "ring") for k in range(8)]


def random_features(seed: int, cols: int = 4, rows: int = 4, max_segments: int = 30):
    """Seeded connected planar network on a jittered grid.

    Candidate edges are the horizontal/vertical neighbors plus one diagonal
    direction, so no two candidates cross away from their endpoints.
    """
    rng = random.Random(seed)
    nodes = {
        (i, j): (i + rng.uniform(-0.15, 0.15), j + rng.uniform(-0.15, 0.15))
        for i in range(cols)
        for j in range(rows)
    }
    candidates = []
    for i in range(cols):
        for j in range(rows):
            if i + 1 < cols:
                candidates.append(((i, j), (i + 1, j)))
            if j + 1 < rows:
                candidates.append(((i, j), (i, j + 1)))
            if i + 1 < cols and j + 1 < rows:
                candidates.append(((i, j), (i + 1, j + 1)))
    rng.shuffle(candidates)

    parent = {n: n for n in nodes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    chosen = []
    rest = []
    for a, b in candidates:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            chosen.append((a, b))
        else:
            rest.append((a, b))
    for a, b in rest:
        if len(chosen) >= max_segments:
            break
        if rng.random() < 0.4:
            chosen.append((a, b))

    names = ["oak", "elm", "ash", None, None]
    feats = []
    for a, b in chosen:
        feats.append(([nodes[a], nodes[b]], rng.choice(names)))
    return feats


def random_network(seed: int, **kwargs) -> RoadNetwork:
    return make_network(random_features(seed, **kwargs))


def perturbed_grid_features(seed: int = 0, n: int = 7, spacing: float = 10.0):
    """Grid spanning (n-1)*spacing units per side with jittered junctions."""
    rng = random.Random(seed)
    nodes = {
        (i, j): (
            i * spacing + rng.uniform(-1.5, 1.5),
            j * spacing + rng.uniform(-1.5, 1.5),
        )
        for i in range(n)
        for j in range(n)
    }
    feats = []
    for j in range(n):
        for i in range(n - 1):
            feats.append(([nodes[(i, j)], nodes[(i + 1, j)]], f"st{j}"))
    for i in range(n):
        for j in range(n - 1):
            feats.append(([nodes[(i, j)], nodes[(i, j + 1)]], f"av{i}"))
    return feats


@pytest.fixture(scope="session")
def perturbed_grid_net() -> RoadNetwork:
    return make_network(perturbed_grid_features(seed=0))


def edge_list_text(features) -> str:
    """Render features in the plain-text fixture format."""
    lines = []
    for idx, feat in enumerate(features):
        coords, name = feat[0], feat[1]
        flat = " ".join(f"{x} {y}" for x, y in coords)
        suffix = f" {name}" if name else ""
        lines.append(f"s{idx} {flat}{suffix}")
    return "\n".join(lines) + "\n"
