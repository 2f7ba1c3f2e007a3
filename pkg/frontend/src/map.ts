import { MARKER_COLORS, MODE_COLORS, NETWORK_COLOR, roadColor } from "./config.js";
import type { Coord, Feature, FeatureCollection, Mode } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export type EndpointKind = "origin" | "destination";

export interface MapCallbacks {
  onClick(coord: Coord): void;
  onMarkerMoved(kind: EndpointKind, coord: Coord): void;
}

/** SVG map over plain data coordinates (no basemap tiles).
 *
 * Pointer positions are converted to data coordinates through the viewBox;
 * `handleClick`/`handleMarkerDrag` are the conversion-free entry points the
 * event handlers (and tests) use.
 */
export class SvgMap {
  readonly svg: SVGSVGElement;
  private flip: SVGGElement;
  private layers: Record<string, SVGGElement> = {};
  private bbox = { minX: 0, minY: 0, maxX: 1, maxY: 1 };
  private markers: Partial<Record<EndpointKind, SVGCircleElement>> = {};
  private dragging: EndpointKind | null = null;
  private roadFeatures: Record<string, Map<number, Feature>> = {};

  constructor(container: HTMLElement, private callbacks: MapCallbacks) {
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("class", "map-canvas");
    this.flip = document.createElementNS(SVG_NS, "g");
    this.flip.setAttribute("transform", "scale(1,-1)");
    this.svg.appendChild(this.flip);
    for (const name of ["network", "roads", "routes", "highlight", "markers"]) {
      const layer = document.createElementNS(SVG_NS, "g");
      layer.setAttribute("class", `layer-${name}`);
      this.flip.appendChild(layer);
      this.layers[name] = layer;
    }
    container.appendChild(this.svg);

    this.svg.addEventListener("pointerdown", (ev) => {
      const target = ev.target as Element;
      const kind = target.getAttribute("data-marker") as EndpointKind | null;
      if (kind) {
        this.dragging = kind;
        ev.preventDefault();
      }
    });
    this.svg.addEventListener("pointermove", (ev) => {
      if (this.dragging) {
        this.handleMarkerDrag(this.dragging, this.toData(ev));
      }
    });
    this.svg.addEventListener("pointerup", (ev) => {
      if (this.dragging) {
        this.dragging = null;
        return;
      }
      this.handleClick(this.toData(ev));
    });
  }

  /** Viewport pixel -> data coordinate via the current viewBox. */
  private toData(ev: { clientX: number; clientY: number }): Coord {
    const rect = this.svg.getBoundingClientRect();
    if (rect.width === 0 || rect.height === 0) {
      return [ev.clientX, ev.clientY]; // headless tests: client == data
    }
    const { minX, minY, maxX, maxY } = this.bbox;
    const x = minX + ((ev.clientX - rect.left) / rect.width) * (maxX - minX);
    const y = maxY - ((ev.clientY - rect.top) / rect.height) * (maxY - minY);
    return [x, y];
  }

  handleClick(coord: Coord): void {
    this.callbacks.onClick(coord);
  }

  handleMarkerDrag(kind: EndpointKind, coord: Coord): void {
    this.callbacks.onMarkerMoved(kind, coord);
  }

  private strokeScale(): number {
    const extent = Math.max(this.bbox.maxX - this.bbox.minX, this.bbox.maxY - this.bbox.minY);
    return extent / 300 || 1;
  }

  private fit(fc: FeatureCollection): void {
    const xs: number[] = [];
    const ys: number[] = [];
    for (const f of fc.features) {
      for (const [x, y] of f.geometry.coordinates) {
        xs.push(x);
        ys.push(y);
      }
    }
    if (!xs.length) return;
    this.bbox = {
      minX: Math.min(...xs),
      minY: Math.min(...ys),
      maxX: Math.max(...xs),
      maxY: Math.max(...ys),
    };
    const pad = 0.06 * Math.max(this.bbox.maxX - this.bbox.minX, this.bbox.maxY - this.bbox.minY, 1);
    const x = this.bbox.minX - pad;
    const y = -(this.bbox.maxY + pad);
    const w = this.bbox.maxX - this.bbox.minX + 2 * pad;
    const h = this.bbox.maxY - this.bbox.minY + 2 * pad;
    this.svg.setAttribute("viewBox", `${x} ${y} ${w} ${h}`);
  }

  private polyline(coords: Coord[], cls: string): SVGPolylineElement {
    const el = document.createElementNS(SVG_NS, "polyline");
    el.setAttribute("points", coords.map(([x, y]) => `${x},${y}`).join(" "));
    el.setAttribute("class", cls);
    el.setAttribute("fill", "none");
    return el;
  }

  setNetwork(fc: FeatureCollection): void {
    this.fit(fc);
    const layer = this.layers.network;
    layer.replaceChildren();
    for (const f of fc.features) {
      const line = this.polyline(f.geometry.coordinates, "segment");
      line.setAttribute("stroke", NETWORK_COLOR);
      line.setAttribute("stroke-width", String(this.strokeScale()));
      layer.appendChild(line);
    }
  }

  setRoads(kind: "unsplit" | "split", fc: FeatureCollection): void {
    this.roadFeatures[kind] = new Map(
      fc.features.map((f) => [Number(f.properties.id), f]),
    );
  }

  showRoadsLayer(kind: "unsplit" | "split" | null): void {
    const layer = this.layers.roads;
    layer.replaceChildren();
    if (kind === null) return;
    const features = this.roadFeatures[kind];
    if (!features) return;
    for (const [id, f] of features) {
      const line = this.polyline(f.geometry.coordinates, "road");
      line.setAttribute("stroke", roadColor(id));
      line.setAttribute("stroke-width", String(1.8 * this.strokeScale()));
      line.setAttribute("data-road-id", String(id));
      line.setAttribute("data-kind", kind);
      layer.appendChild(line);
    }
  }

  /** Draw one route overlay per mode; coordinates are attached verbatim as
   * data-coords so what is rendered is exactly what the API returned. */
  setRoutes(routes: Partial<Record<Mode, Coord[]>>): void {
    const layer = this.layers.routes;
    layer.replaceChildren();
    for (const [mode, coords] of Object.entries(routes) as [Mode, Coord[]][]) {
      const line = this.polyline(coords, "route");
      line.setAttribute("stroke", MODE_COLORS[mode]);
      line.setAttribute("stroke-width", String(2.2 * this.strokeScale()));
      line.setAttribute("stroke-opacity", "0.85");
      line.setAttribute("data-mode", mode);
      line.setAttribute("data-coords", JSON.stringify(coords));
      layer.appendChild(line);
    }
  }

  highlightRoad(kind: "unsplit" | "split", roadId: number | null): void {
    const layer = this.layers.highlight;
    layer.replaceChildren();
    if (roadId === null) return;
    const feature = this.roadFeatures[kind]?.get(roadId);
    if (!feature) return;
    const line = this.polyline(feature.geometry.coordinates, "highlight");
    line.setAttribute("stroke", "#ffd400");
    line.setAttribute("stroke-width", String(4 * this.strokeScale()));
    line.setAttribute("stroke-opacity", "0.6");
    line.setAttribute("data-highlight-road", String(roadId));
    layer.appendChild(line);
  }

  setMarker(kind: EndpointKind, coord: Coord | null): void {
    const existing = this.markers[kind];
    if (existing) {
      existing.remove();
      delete this.markers[kind];
    }
    if (!coord) return;
    const el = document.createElementNS(SVG_NS, "circle");
    el.setAttribute("cx", String(coord[0]));
    el.setAttribute("cy", String(coord[1]));
    el.setAttribute("r", String(2.5 * this.strokeScale()));
    el.setAttribute("fill", MARKER_COLORS[kind]);
    el.setAttribute("data-marker", kind);
    el.setAttribute("class", `marker marker-${kind}`);
    this.layers.markers.appendChild(el);
    this.markers[kind] = el;
  }
}
