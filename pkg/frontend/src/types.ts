export type Mode = "st" | "sp" | "ft" | "fts";

export type Coord = [number, number];

export interface LineStringGeometry {
  type: "LineString";
  coordinates: Coord[];
}

export interface Feature {
  type: "Feature";
  geometry: LineStringGeometry;
  properties: Record<string, unknown>;
}

export interface FeatureCollection {
  type: "FeatureCollection";
  features: Feature[];
}

export interface RoutePayload {
  mode: Mode;
  distance: number;
  turns_topological: number;
  turns_perceptual: number;
  road_sequence: number[];
  truncated: boolean;
  route: Feature;
  instructions: string;
}

export interface ModeError {
  error: string;
  detail: string;
}

export type CompareEntry = RoutePayload | ModeError;

export interface CompareResponse {
  modes: Record<Mode, CompareEntry>;
}

export function isModeError(entry: CompareEntry): entry is ModeError {
  return (entry as ModeError).error !== undefined;
}

export interface InstructionStep {
  roadId: number;
  length: string; // verbatim attribute text; the UI never recomputes values
  turn: string | null;
  names: { name: string; length: string }[];
}
