import { ApiClient } from "./api.js";
import { MODES, apiBase } from "./config.js";
import { SvgMap } from "./map.js";
import { Panel } from "./panel.js";
import { QueryController } from "./state.js";
import type { Coord, Mode, RoutePayload } from "./types.js";
import { isModeError } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function formatCoord(coord: Coord | null): string {
  return coord ? `${coord[0]}, ${coord[1]}` : "";
}

function parseCoordText(text: string): Coord | null {
  const parts = text.split(",").map((p) => Number(p.trim()));
  if (parts.length !== 2 || parts.some((v) => Number.isNaN(v))) return null;
  return [parts[0], parts[1]];
}

export function bootstrap(root: Document = document): {
  controller: QueryController;
  map: SvgMap;
  panel: Panel;
  api: ApiClient;
  reload: () => Promise<void>;
} {
  const api = new ApiClient(apiBase());
  const controller = new QueryController(api);

  const map = new SvgMap(el("map"), {
    onClick: (coord) => controller.placeFromClick(coord),
    onMarkerMoved: (kind, coord) =>
      kind === "origin" ? controller.setOrigin(coord) : controller.setDestination(coord),
  });

  const panel = new Panel(el("metrics"), el("steps"), {
    onFocusMode: () => render(),
    onStepClick: (mode, roadId) => {
      map.highlightRoad(mode === "fts" ? "split" : "unsplit", roadId);
    },
  });

  const banner = el("banner");
  const originInput = el<HTMLInputElement>("origin-text");
  const destInput = el<HTMLInputElement>("destination-text");
  const roadsToggle = el<HTMLInputElement>("roads-toggle");
  const roadsKind = el<HTMLSelectElement>("roads-kind");
  const offNetworkEl = el("off-network");

  originInput.addEventListener("change", () => {
    const coord = parseCoordText(originInput.value);
    if (coord) controller.setOrigin(coord);
  });
  destInput.addEventListener("change", () => {
    const coord = parseCoordText(destInput.value);
    if (coord) controller.setDestination(coord);
  });

  for (const mode of MODES) {
    const box = root.querySelector<HTMLInputElement>(`input[data-mode-toggle="${mode}"]`);
    box?.addEventListener("change", () => controller.toggleMode(mode, box.checked));
  }

  const refreshRoadsLayer = () => {
    map.showRoadsLayer(roadsToggle.checked ? (roadsKind.value as "unsplit" | "split") : null);
  };
  roadsToggle.addEventListener("change", refreshRoadsLayer);
  roadsKind.addEventListener("change", refreshRoadsLayer);

  function render(): void {
    const state = controller.state;
    map.setMarker("origin", state.origin);
    map.setMarker("destination", state.destination);
    if (root.activeElement !== originInput) originInput.value = formatCoord(state.origin);
    if (root.activeElement !== destInput) destInput.value = formatCoord(state.destination);
    offNetworkEl.textContent = state.offNetwork ?? "";
    offNetworkEl.classList.toggle("hidden", state.offNetwork === null);

    const overlays: Partial<Record<Mode, Coord[]>> = {};
    for (const mode of MODES) {
      if (!state.selectedModes.has(mode)) continue;
      const entry = state.responses[mode];
      if (entry && !isModeError(entry)) {
        overlays[mode] = (entry as RoutePayload).route.geometry.coordinates;
      }
    }
    map.setRoutes(overlays);
    panel.update(state.responses, state.selectedModes);
  }

  controller.onChange(render);

  async function reload(): Promise<void> {
    banner.classList.add("hidden");
    try {
      map.setNetwork(await api.network());
      map.setRoads("unsplit", await api.roads("unsplit"));
      map.setRoads("split", await api.roads("split"));
      refreshRoadsLayer();
    } catch (err) {
      banner.textContent = `Route service unreachable: ${String(
        err instanceof Error ? err.message : err,
      )}`;
      banner.classList.remove("hidden");
      const retry = root.createElement("button");
      retry.id = "retry";
      retry.textContent = "Retry";
      retry.addEventListener("click", () => void reload());
      banner.appendChild(retry);
    }
  }

  return { controller, map, panel, api, reload };
}

declare global {
  interface Window {
    __turnroute?: ReturnType<typeof bootstrap>;
  }
}

if (typeof window !== "undefined" && document.getElementById("map")) {
  const app = bootstrap();
  window.__turnroute = app;
  void app.reload();
}
