import type { ApiClient } from "./api.js";
import { ApiError } from "./api.js";
import type { CompareEntry, Coord, Mode } from "./types.js";
import { MODES } from "./config.js";

export interface QueryState {
  origin: Coord | null;
  destination: Coord | null;
  selectedModes: Set<Mode>;
  responses: Partial<Record<Mode, CompareEntry>>;
  offNetwork: string | null; // 422 prompt, if any
  pending: boolean;
}

export type StateListener = (state: QueryState) => void;

/** Holds endpoints and the latest per-mode responses.
 *
 * A route request is issued only when both endpoints are set. At most one
 * request is in flight; newer coordinates collapse into a single follow-up,
 * and responses carry a sequence number so stale ones are discarded.
 */
export class QueryController {
  readonly state: QueryState = {
    origin: null,
    destination: null,
    selectedModes: new Set(MODES),
    responses: {},
    offNetwork: null,
    pending: false,
  };

  private seq = 0;
  private inFlight = false;
  private queued: [Coord, Coord] | null = null;
  private listeners: StateListener[] = [];

  constructor(private api: ApiClient) {}

  onChange(listener: StateListener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  setOrigin(coord: Coord): void {
    this.state.origin = coord;
    this.emit();
    this.maybeQuery();
  }

  setDestination(coord: Coord): void {
    this.state.destination = coord;
    this.emit();
    this.maybeQuery();
  }

  /** Map clicks fill origin first, then destination, then move destination. */
  placeFromClick(coord: Coord): void {
    if (this.state.origin === null) {
      this.setOrigin(coord);
    } else {
      this.setDestination(coord);
    }
  }

  toggleMode(mode: Mode, enabled: boolean): void {
    if (enabled) this.state.selectedModes.add(mode);
    else this.state.selectedModes.delete(mode);
    this.emit();
  }

  private maybeQuery(): void {
    const { origin, destination } = this.state;
    if (!origin || !destination) return;
    if (this.inFlight) {
      this.queued = [origin, destination];
      return;
    }
    void this.issue(origin, destination);
  }

  private async issue(origin: Coord, destination: Coord): Promise<void> {
    const mySeq = ++this.seq;
    this.inFlight = true;
    this.state.pending = true;
    this.emit();
    try {
      const response = await this.api.compare(origin, destination);
      if (mySeq === this.seq) {
        this.state.responses = response.modes;
        this.state.offNetwork = null;
      }
    } catch (err) {
      if (mySeq === this.seq) {
        if (err instanceof ApiError && err.status === 422) {
          this.state.offNetwork = `${err.detail} — move the marker closer to the network`;
        } else {
          this.state.offNetwork = null;
          this.state.responses = {};
          for (const mode of MODES) {
            this.state.responses[mode] = {
              error: "request_failed",
              detail: String(err instanceof Error ? err.message : err),
            };
          }
        }
      }
    } finally {
      this.inFlight = false;
      if (mySeq === this.seq) {
        this.state.pending = false;
      }
      const queued = this.queued;
      this.queued = null;
      if (queued) {
        void this.issue(queued[0], queued[1]);
      } else {
        this.emit();
      }
    }
  }
}
