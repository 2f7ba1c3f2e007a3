import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { vi } from "vitest";

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8")) as T;
}

export interface ScriptedPair {
  name: string;
  from: string;
  to: string;
  response: { modes: Record<string, unknown> };
}

export function scriptedPairs(): ScriptedPair[] {
  return fixture<ScriptedPair[]>("compare_pairs.json");
}

/** Minimal DOM matching index.html's element contract. */
export function setupDom(): void {
  document.body.innerHTML = `
    <div id="banner" class="banner hidden"></div>
    <label>origin <input id="origin-text" /></label>
    <label>destination <input id="destination-text" /></label>
    <input id="roads-toggle" type="checkbox" />
    <select id="roads-kind">
      <option value="unsplit" selected>unsplit</option>
      <option value="split">split</option>
    </select>
    <span>
      <input type="checkbox" data-mode-toggle="st" checked />
      <input type="checkbox" data-mode-toggle="sp" checked />
      <input type="checkbox" data-mode-toggle="ft" checked />
      <input type="checkbox" data-mode-toggle="fts" checked />
    </span>
    <div id="map"></div>
    <div id="off-network" class="hidden"></div>
    <div id="metrics"></div>
    <div id="steps"></div>
  `;
}

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

/** Fetch stub backed by the captured service fixtures. */
export function stubFetchWithFixtures(): { compareCalls: string[] } {
  const network = fixture("network.json");
  const roadsUnsplit = fixture("roads_unsplit.json");
  const roadsSplit = fixture("roads_split.json");
  const pairs = scriptedPairs();
  const compareCalls: string[] = [];

  vi.stubGlobal(
    "fetch",
    vi.fn(async (input: RequestInfo | URL): Promise<Response> => {
      const url = new URL(String(input), "http://service.test");
      if (url.pathname === "/network") return jsonResponse(network);
      if (url.pathname === "/roads") {
        return jsonResponse(url.searchParams.get("kind") === "split" ? roadsSplit : roadsUnsplit);
      }
      if (url.pathname === "/compare") {
        const from = url.searchParams.get("from");
        const to = url.searchParams.get("to");
        compareCalls.push(`${from}->${to}`);
        const hit = pairs.find((p) => matches(p.from, from) && matches(p.to, to));
        if (!hit) {
          return jsonResponse({ error: "malformed", detail: `no fixture for ${from}->${to}` }, 400);
        }
        return jsonResponse(hit.response);
      }
      return jsonResponse({ error: "malformed", detail: `unexpected ${url.pathname}` }, 400);
    }),
  );
  return { compareCalls };
}

function matches(fixtureCoord: string, queryCoord: string | null): boolean {
  if (queryCoord === null) return false;
  const parse = (s: string) => s.split(",").map(Number);
  const [ax, ay] = parse(fixtureCoord);
  const [bx, by] = parse(queryCoord);
  return ax === bx && ay === by;
}

export function parsePair(text: string): [number, number] {
  const [x, y] = text.split(",").map(Number);
  return [x, y];
}

export async function flush(): Promise<void> {
  // Settle the fetch promise chain.
  for (let i = 0; i < 10; i++) {
    await Promise.resolve();
  }
}
