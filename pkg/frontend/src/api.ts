import type { CompareResponse, FeatureCollection } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public kind: string,
    public detail: string,
  ) {
    super(`${kind}: ${detail}`);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const res = await fetch(url);
  if (!res.ok) {
    let kind = "error";
    let detail = res.statusText;
    try {
      const body = (await res.json()) as { error?: string; detail?: string };
      kind = body.error ?? kind;
      detail = body.detail ?? detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(res.status, kind, detail);
  }
  return (await res.json()) as T;
}

/** Thin client for the route service; all values shown in the UI come from
 * these responses untouched. */
export class ApiClient {
  constructor(private base: string = "") {}

  health(): Promise<{ status: string; snapshot: string }> {
    return getJson(`${this.base}/health`);
  }

  network(): Promise<FeatureCollection> {
    return getJson(`${this.base}/network`);
  }

  roads(kind: "unsplit" | "split"): Promise<FeatureCollection> {
    return getJson(`${this.base}/roads?kind=${kind}`);
  }

  compare(from: [number, number], to: [number, number]): Promise<CompareResponse> {
    const f = `${from[0]},${from[1]}`;
    const t = `${to[0]},${to[1]}`;
    return getJson(`${this.base}/compare?from=${encodeURIComponent(f)}&to=${encodeURIComponent(t)}`);
  }
}
