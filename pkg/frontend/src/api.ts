import { spaceInfo } from "./spaces";
import type { EditorState, ReconstructionRequest, ReconstructionResponse } from "./types";

export function buildRequest(state: EditorState): ReconstructionRequest {
  const info = spaceInfo(state.space);
  const req: ReconstructionRequest = {
    space: state.space,
    dims: state.dims.map((channels) => ({ channels })),
    grid: state.grid,
    boundary: state.boundary,
    start: state.start,
  };
  if (info.coefficientMode) {
    req.mode = "coefficients";
  } else {
    req.functionals = info.channels.map((ch) => ch.token);
  }
  return req;
}

export interface ClientOptions {
  debounceMs?: number;
  fetchFn?: typeof fetch;
}

/**
 * Reconstruction client with drag-friendly scheduling: rapid updates are
 * debounced, at most one result wins (the latest request), and a final
 * drop can force an immediate, non-debounced round trip.
 */
export class ReconstructionClient {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private generation = 0;
  private readonly debounceMs: number;
  private readonly fetchFn: typeof fetch;

  constructor(
    readonly baseUrl: string,
    opts: ClientOptions = {},
  ) {
    this.debounceMs = opts.debounceMs ?? 30;
    this.fetchFn = opts.fetchFn ?? fetch;
  }

  /** Number of requests actually sent; used by tests and the status bar. */
  sent = 0;

  schedule(
    state: EditorState,
    onResult: (r: ReconstructionResponse) => void,
    onError: (e: Error) => void,
    immediate = false,
  ): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    const fire = () => {
      this.timer = null;
      void this.send(state, onResult, onError);
    };
    if (immediate) fire();
    else this.timer = setTimeout(fire, this.debounceMs);
  }

  private async send(
    state: EditorState,
    onResult: (r: ReconstructionResponse) => void,
    onError: (e: Error) => void,
  ): Promise<void> {
    const generation = ++this.generation;
    this.sent += 1;
    try {
      const resp = await this.fetchFn(`${this.baseUrl}/reconstruct`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(buildRequest(state)),
      });
      const body = await resp.json();
      if (generation !== this.generation) return; // a newer request won
      if (!resp.ok) {
        onError(new Error(body.error ?? `HTTP ${resp.status}`));
        return;
      }
      onResult(body as ReconstructionResponse);
    } catch (err) {
      if (generation !== this.generation) return;
      onError(err instanceof Error ? err : new Error(String(err)));
    }
  }
}
