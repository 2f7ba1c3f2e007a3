"""HTTP route service over a loaded engine snapshot.

The snapshot is immutable; request handling shares it freely. Responses are
JSON; route errors map to 400 (malformed query), 404 (unreachable), and 422
(off-network beyond the snap radius).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .geometry import Point
from .instructions import route_geojson, route_instructions
from .natural_roads import roads_geojson
from .network import segments_geojson
from .routing import (
    Anchor,
    InfeasibleSequenceError,
    UnreachableError,
    nearest_segment,
)
from .snapshot import EngineSnapshot

DEFAULT_SNAP_RADIUS = 250.0
MODES = ("st", "sp", "ft", "fts")


def _parse_coord(text: str, name: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise HTTPException(400, detail=f"{name} must be 'x,y'")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise HTTPException(400, detail=f"{name} must be numeric 'x,y'") from None


def create_app(snapshot: EngineSnapshot, snap_radius: float = DEFAULT_SNAP_RADIUS) -> FastAPI:
    app = FastAPI(title="turnroute", version="0.1.0")
    net = snapshot.network

    @app.exception_handler(HTTPException)
    async def http_error(request: Request, exc: HTTPException) -> JSONResponse:
        label = {400: "malformed", 404: "unreachable", 422: "off_network"}.get(
            exc.status_code, "error"
        )
        return JSONResponse(
            {"error": label, "detail": exc.detail}, status_code=exc.status_code
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse({"error": "malformed", "detail": str(exc)}, status_code=400)

    def anchor_for(text: str, name: str) -> Anchor:
        x, y = _parse_coord(text, name)
        px, py = net.project_query(x, y)
        sid, frac, dist = nearest_segment(net, Point(px, py))
        if dist > snap_radius:
            raise HTTPException(
                422,
                detail=f"{name} is {dist:.1f} map units from the network "
                f"(snap radius {snap_radius})",
            )
        return Anchor(sid, frac)

    def route_payload(mode: str, a_from: Anchor, a_to: Anchor) -> dict:
        route = snapshot.route(mode, a_from, a_to)
        rs = snapshot.roadset_for_mode(mode)
        return {
            "mode": mode,
            "distance": route.distance,
            "turns_topological": route.turns_topological,
            "turns_perceptual": route.turns_perceptual,
            "road_sequence": list(route.road_sequence),
            "truncated": route.truncated,
            "route": route_geojson(route, net),
            "instructions": route_instructions(route, rs, net),
        }

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "snapshot": snapshot.content_hash}

    @app.get("/network")
    def network() -> dict:
        return segments_geojson(net)

    @app.get("/roads")
    def roads(kind: str = Query("unsplit")) -> dict:
        if kind == "unsplit":
            return roads_geojson(snapshot.rs_unsplit)
        if kind == "split":
            return roads_geojson(snapshot.rs_split)
        raise HTTPException(400, detail="kind must be 'unsplit' or 'split'")

    @app.get("/route")
    def route(
        from_: str = Query(alias="from"),
        to: str = Query(),
        mode: str = Query("ft"),
    ) -> dict:
        if mode not in MODES:
            raise HTTPException(400, detail=f"mode must be one of {', '.join(MODES)}")
        a_from = anchor_for(from_, "from")
        a_to = anchor_for(to, "to")
        try:
            return route_payload(mode, a_from, a_to)
        except (UnreachableError, InfeasibleSequenceError) as exc:
            raise HTTPException(404, detail=str(exc)) from exc

    @app.get("/compare")
    def compare(from_: str = Query(alias="from"), to: str = Query()) -> dict:
        a_from = anchor_for(from_, "from")
        a_to = anchor_for(to, "to")
        modes: dict[str, dict] = {}
        for mode in MODES:
            try:
                modes[mode] = route_payload(mode, a_from, a_to)
            except (UnreachableError, InfeasibleSequenceError) as exc:
                modes[mode] = {"error": "unreachable", "detail": str(exc)}
        return {"modes": modes}

    return app
