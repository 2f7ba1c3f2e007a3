"""Command-line front end: ingest, road building, routing, stats, benchmarks,
and the HTTP service."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .benchmark import run_benchmark
from .geometry import Point
from .instructions import route_geojson, route_instructions
from .network import NetworkError, load_network, network_stats, validate_noding
from .routing import (
    Anchor,
    InfeasibleSequenceError,
    UnreachableError,
    nearest_segment,
)
from .snapshot import (
    SnapshotError,
    build_snapshot,
    load_network_file,
    load_snapshot,
    save_network_file,
    save_snapshot,
)


def _parse_point(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser(defaults: dict | None = None) -> argparse.ArgumentParser:
    defaults = defaults or {}
    parser = argparse.ArgumentParser(
        prog="turnroute",
        description="Fewest-turn route planning on natural-road connectivity",
    )
    parser.add_argument(
        "--config",
        help="JSON file of flag defaults (explicit flags win)",
        default=None,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load and validate a network file")
    p.add_argument("input", help="GeoJSON FeatureCollection or edge-list text file")
    p.add_argument("-o", "--output", required=True, help="network container to write")
    p.add_argument("--snap", type=float, default=0.0, help="endpoint snap tolerance")
    group = p.add_mutually_exclusive_group()
    group.add_argument(
        "--planar", action="store_true", help="never project (input is planar)"
    )
    group.add_argument(
        "--lonlat", action="store_true", help="always project (input is lon/lat)"
    )

    p = sub.add_parser("roads", help="build road sets and connectivity graphs")
    p.add_argument("network", help="network container from 'ingest'")
    p.add_argument("-o", "--output", required=True, help="snapshot container to write")
    p.add_argument("--angle", type=float, default=45.0, help="join threshold, degrees")
    p.add_argument(
        "--split-distance",
        type=float,
        default=None,
        help="split offset threshold (default: 5%% of the bounding-box diagonal)",
    )
    p.add_argument("--split-ratio", type=float, default=0.2, help="split ratio threshold")

    p = sub.add_parser("route", help="compute one route")
    p.add_argument("snapshot")
    p.add_argument("--from", dest="from_", type=_parse_point, required=True, metavar="X,Y")
    p.add_argument("--to", type=_parse_point, required=True, metavar="X,Y")
    p.add_argument("--mode", choices=["st", "sp", "ft", "fts"], default="ft")
    p.add_argument("--cap", type=int, default=10_000, help="sequence enumeration cap")
    p.add_argument("--xml", help="write XML instructions here")
    p.add_argument("--geojson", help="write route GeoJSON here")

    p = sub.add_parser("bench", help="run the comparison benchmark")
    p.add_argument("snapshot")
    p.add_argument("--pairs", default="all", help="'all' or 'random:N'")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--cap", type=int, default=10_000)
    p.add_argument("-o", "--output", required=True, help="CSV report path")

    p = sub.add_parser("stats", help="network size statistics")
    p.add_argument("snapshot")
    p.add_argument("-o", "--output", required=True, help="CSV path")

    p = sub.add_parser("serve", help="run the HTTP route service")
    p.add_argument("snapshot")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--snap-radius", type=float, default=250.0)

    for sp in sub.choices.values():
        known = {a.dest for a in sp._actions}
        sp.set_defaults(**{k: v for k, v in defaults.items() if k in known})
    return parser


def _cmd_ingest(args) -> int:
    assume = None
    if args.planar:
        assume = False
    elif args.lonlat:
        assume = True
    net = load_network(args.input, snap_tolerance=args.snap, assume_lonlat=assume)
    report = validate_noding(net)
    if not report.ok:
        for a, b, p in report.crossings:
            print(
                f"noding error: segments {a} and {b} cross at ({p.x:.6f}, {p.y:.6f}) "
                "away from any junction",
                file=sys.stderr,
            )
        return 2
    save_network_file(net, args.output)
    print(
        f"ingested {len(net.segments)} segments, {len(net.junctions)} junctions "
        f"-> {args.output}"
    )
    return 0


def _cmd_roads(args) -> int:
    net = load_network_file(args.network)
    snap = build_snapshot(
        net,
        angle_deg=args.angle,
        split_distance=args.split_distance,
        split_ratio=args.split_ratio,
    )
    save_snapshot(snap, args.output)
    print(
        f"roads: {len(snap.rs_unsplit.roads)} unsplit, {len(snap.rs_split.roads)} split; "
        f"links: {snap.g_unsplit.link_count}/{snap.g_split.link_count} -> {args.output}"
    )
    return 0


def _anchor(snap, xy: tuple[float, float]) -> Anchor:
    px, py = snap.network.project_query(*xy)
    sid, frac, _ = nearest_segment(snap.network, Point(px, py))
    return Anchor(sid, frac)


def _cmd_route(args) -> int:
    snap = load_snapshot(args.snapshot)
    a_from = _anchor(snap, args.from_)
    a_to = _anchor(snap, args.to)
    route = snap.route(args.mode, a_from, a_to, cap=args.cap)
    print(
        f"turns={route.turns_topological} distance={route.distance} "
        f"turns_perceptual={route.turns_perceptual} mode={route.mode}"
    )
    if args.xml:
        rs = snap.roadset_for_mode(args.mode)
        Path(args.xml).write_text(
            route_instructions(route, rs, snap.network), encoding="utf-8"
        )
    if args.geojson:
        Path(args.geojson).write_text(
            json.dumps(route_geojson(route, snap.network), indent=2), encoding="utf-8"
        )
    return 0


def _cmd_bench(args) -> int:
    snap = load_snapshot(args.snapshot)
    report = run_benchmark(
        snap, sampling=args.pairs, seed=args.seed, threads=args.threads, cap=args.cap
    )
    Path(args.output).write_text(report.to_csv(), encoding="utf-8")
    print(
        f"benchmarked {report.sampled} pairs ({report.excluded} excluded) -> {args.output}"
    )
    return 0


def _cmd_stats(args) -> int:
    snap = load_snapshot(args.snapshot)
    stats = network_stats(snap.network, snap.rs_unsplit, snap.rs_split)
    text = stats.CSV_HEADER + "\n" + stats.csv_row() + "\n"
    Path(args.output).write_text(text, encoding="utf-8")
    print(text, end="")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    snap = load_snapshot(args.snapshot)
    app = create_app(snap, snap_radius=args.snap_radius)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "roads": _cmd_roads,
    "route": _cmd_route,
    "bench": _cmd_bench,
    "stats": _cmd_stats,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    pre_args, _ = pre.parse_known_args(argv)
    defaults: dict = {}
    if pre_args.config:
        try:
            defaults = json.loads(Path(pre_args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read config {pre_args.config}: {exc}", file=sys.stderr)
            return 1
    args = build_parser(defaults).parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UnreachableError, InfeasibleSequenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NetworkError, SnapshotError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
