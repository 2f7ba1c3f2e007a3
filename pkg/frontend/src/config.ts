import type { Mode } from "./types.js";

export const MODES: Mode[] = ["st", "sp", "ft", "fts"];

/** Fixed route colors so screenshots stay comparable across sessions. */
export const MODE_COLORS: Record<Mode, string> = {
  st: "#1f77b4",
  sp: "#9467bd",
  ft: "#d62728",
  fts: "#2ca02c",
};

export const MODE_LABELS: Record<Mode, string> = {
  st: "Shortest",
  sp: "Simplest (stand-in)",
  ft: "Fewest turns",
  fts: "Fewest turns + shortest",
};

export const NETWORK_COLOR = "#b0b0b0";
export const MARKER_COLORS = { origin: "#111111", destination: "#e07b00" };

/** Distinct, stable color per natural-road id. */
export function roadColor(roadId: number): string {
  const hue = (roadId * 137.508) % 360; // golden-angle spacing
  return `hsl(${hue.toFixed(1)}, 70%, 45%)`;
}

export function apiBase(): string {
  const param = new URLSearchParams(window.location.search).get("api");
  return (param ?? "").replace(/\/$/, "");
}
