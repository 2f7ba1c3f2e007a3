"""turnroute: fewest-turn route planning on the connectivity of natural roads."""

from .benchmark import (
    BenchmarkReport,
    ComparisonStats,
    PairResult,
    mean_of_ratios,
    ratio_of_means,
    run_benchmark,
)
from .connectivity import RoadGraph, build_connectivity_graph
from .geometry import (
    DegenerateGeometryError,
    Point,
    Polyline,
    SplitParams,
    deflection_angle,
    orthogonal_distance,
    polyline_length,
    split_polyline,
)
from .instructions import route_geojson, route_instructions
from .natural_roads import (
    NamedRun,
    NaturalRoad,
    RoadSet,
    build_natural_roads,
    default_split_params,
    group_named_runs,
    roads_geojson,
    split_natural_roads,
)
from .network import (
    EmptyNetworkError,
    IngestError,
    Junction,
    MismatchError,
    NetworkError,
    NetworkStats,
    RoadNetwork,
    Segment,
    load_network,
    network_stats,
    segments_geojson,
    validate_noding,
)
from .routing import (
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
    realize_route,
    shortest_path,
    shortest_topological_distance,
    simplest_path,
)
from .snapshot import (
    EngineSnapshot,
    build_snapshot,
    load_network_file,
    load_snapshot,
    save_network_file,
    save_snapshot,
)

__version__ = "0.1.0"

__all__ = [
    "Anchor",
    "BenchmarkReport",
    "ComparisonStats",
    "DegenerateGeometryError",
    "EmptyNetworkError",
    "EngineSnapshot",
    "InfeasibleSequenceError",
    "IngestError",
    "Junction",
    "MismatchError",
    "NamedRun",
    "NaturalRoad",
    "NetworkError",
    "NetworkStats",
    "PairResult",
    "PathLeg",
    "Point",
    "Polyline",
    "RoadGraph",
    "RoadNetwork",
    "RoadSet",
    "Route",
    "Segment",
    "SplitParams",
    "UnreachableError",
    "build_connectivity_graph",
    "build_natural_roads",
    "build_snapshot",
    "count_turns",
    "default_split_params",
    "deflection_angle",
    "enumerate_fewest_turn_sequences",
    "fewest_turn_and_shortest_route",
    "fewest_turn_route",
    "group_named_runs",
    "load_network",
    "load_network_file",
    "load_snapshot",
    "locate",
    "mean_of_ratios",
    "network_stats",
    "orthogonal_distance",
    "polyline_length",
    "ratio_of_means",
    "realize_route",
    "roads_geojson",
    "route_geojson",
    "route_instructions",
    "run_benchmark",
    "save_network_file",
    "save_snapshot",
    "segments_geojson",
    "shortest_path",
    "shortest_topological_distance",
    "simplest_path",
    "split_natural_roads",
    "split_polyline",
    "validate_noding",
]
