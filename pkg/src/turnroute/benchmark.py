"""Benchmark harness: per-pair route comparison across modes with
ratio-of-means aggregation (mean-of-ratios retained as a side statistic,
since the two can disagree in sign)."""

from __future__ import annotations

import random
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .routing import Anchor, locate

MODE_PAIRS = (("ft", "sp"), ("ft", "st"), ("fts", "sp"), ("fts", "st"), ("sp", "st"))


def mean_of_ratios(xs, ys) -> float:
    """Mean over i of (xs[i] - ys[i]) / ys[i] (the per-pair-ratio aggregate)."""
    xs = list(xs)
    ys = list(ys)
    if len(xs) != len(ys) or not xs:
        raise ValueError("inputs must be equal-length and non-empty")
    total = 0.0
    for i, (x, y) in enumerate(zip(xs, ys)):
        if y == 0:
            raise ValueError(f"zero denominator at index {i}")
        total += (x - y) / y
    return total / len(xs)


def ratio_of_means(xs, ys) -> float:
    """(mean(xs) - mean(ys)) / mean(ys) (the averages-first aggregate)."""
    xs = list(xs)
    ys = list(ys)
    if len(xs) != len(ys) or not xs:
        raise ValueError("inputs must be equal-length and non-empty")
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    if my == 0:
        raise ValueError("zero mean denominator")
    return (mx - my) / my


@dataclass(frozen=True)
class ModeOutcome:
    status: str  # "ok" | "unreachable" | "infeasible"
    distance: float | None = None
    turns_topological: int | None = None
    turns_perceptual: int | None = None


@dataclass(frozen=True)
class PairResult:
    origin_junction: int
    destination_junction: int
    origin: Anchor
    destination: Anchor
    outcomes: dict[str, ModeOutcome]

    @property
    def ok(self) -> bool:
        return all(o.status == "ok" for o in self.outcomes.values())


@dataclass(frozen=True)
class ComparisonStats:
    pair: str  # e.g. "FT/ST"
    beta: float  # ratio of means (primary)
    alpha: float  # mean of ratios (side column)
    t_a: float  # mean turns of the first mode
    t_b: float
    turn_delta_mean: float
    n: int


@dataclass(frozen=True)
class BenchmarkReport:
    sampling: str
    seed: int | None
    sampled: int
    excluded: int
    pair_results: tuple[PairResult, ...]
    stats: tuple[ComparisonStats, ...]

    def to_csv(self) -> str:
        lines = ["pair,d_beta_pct,d_alpha_pct,t_mode1,t_mode2,turn_delta,n,excluded"]
        for s in self.stats:
            lines.append(
                f"{s.pair},{100.0 * s.beta:.6f},{100.0 * s.alpha:.6f},"
                f"{s.t_a:.6f},{s.t_b:.6f},{s.turn_delta_mean:.6f},{s.n},{self.excluded}"
            )
        return "\n".join(lines) + "\n"


def _parse_sampling(sampling: str) -> tuple[str, int | None]:
    if sampling == "all":
        return "all", None
    if sampling.startswith("random:"):
        n = int(sampling.split(":", 1)[1])
        if n <= 0:
            raise ValueError("random sample size must be positive")
        return "random", n
    raise ValueError(f"unknown sampling spec {sampling!r} (use 'all' or 'random:N')")


def junction_anchor(snapshot, jid: int) -> Anchor:
    anchor, _ = locate(
        snapshot.network, snapshot.rs_unsplit, snapshot.network.junction(jid).location
    )
    return anchor


def run_benchmark(
    snapshot,
    sampling: str = "all",
    seed: int | None = None,
    modes: tuple[str, ...] = ("st", "sp", "ft", "fts"),
    threads: int = 1,
    cap: int = 10_000,
) -> BenchmarkReport:
    """Route every sampled ordered junction pair in each mode and aggregate.

    Pairs with any non-ok mode are excluded from the aggregates (and
    counted). Output is order-normalized, so thread count never changes the
    report.
    """
    from .routing import InfeasibleSequenceError, UnreachableError

    kind, n = _parse_sampling(sampling)
    junctions = [j.id for j in snapshot.network.junctions]
    all_pairs = [(a, b) for a in junctions for b in junctions if a != b]
    if kind == "all":
        pairs = all_pairs
    else:
        if n > len(all_pairs):
            warnings.warn(
                f"requested {n} pairs but only {len(all_pairs)} exist; clamping",
                stacklevel=2,
            )
            n = len(all_pairs)
        pairs = random.Random(seed).sample(all_pairs, n)

    anchors = {jid: junction_anchor(snapshot, jid) for jid in junctions}

    def evaluate(pair: tuple[int, int]) -> PairResult:
        a, b = pair
        outcomes: dict[str, ModeOutcome] = {}
        for mode in modes:
            try:
                route = snapshot.route(mode, anchors[a], anchors[b], cap=cap)
            except UnreachableError:
                outcomes[mode] = ModeOutcome("unreachable")
            except InfeasibleSequenceError:
                outcomes[mode] = ModeOutcome("infeasible")
            else:
                outcomes[mode] = ModeOutcome(
                    "ok", route.distance, route.turns_topological, route.turns_perceptual
                )
        return PairResult(a, b, anchors[a], anchors[b], outcomes)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(evaluate, pairs))
    else:
        results = [evaluate(p) for p in pairs]

    included = [r for r in results if r.ok]
    excluded = len(results) - len(included)

    stats: list[ComparisonStats] = []
    for mode_a, mode_b in MODE_PAIRS:
        if mode_a not in modes or mode_b not in modes or not included:
            continue
        xs = [r.outcomes[mode_a].distance for r in included]
        ys = [r.outcomes[mode_b].distance for r in included]
        ta = [r.outcomes[mode_a].turns_perceptual for r in included]
        tb = [r.outcomes[mode_b].turns_perceptual for r in included]
        stats.append(
            ComparisonStats(
                pair=f"{mode_a.upper()}/{mode_b.upper()}",
                beta=ratio_of_means(xs, ys),
                alpha=mean_of_ratios(xs, ys),
                t_a=sum(ta) / len(ta),
                t_b=sum(tb) / len(tb),
                turn_delta_mean=sum(x - y for x, y in zip(ta, tb)) / len(ta),
                n=len(included),
            )
        )
    return BenchmarkReport(
        sampling=sampling,
        seed=seed,
        sampled=len(pairs),
        excluded=excluded,
        pair_results=tuple(results),
        stats=tuple(stats),
    )
