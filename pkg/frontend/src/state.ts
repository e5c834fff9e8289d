import { spaceInfo } from "./spaces";
import type { ChannelSpec, EditorMode, EditorState } from "./types";

/** A gentle default wave so a fresh session has something to drag. */
function defaultValue(k: number, count: number): number {
  return Math.sin((2 * Math.PI * k) / Math.max(count - 1, 1));
}

function defaultChannels(space: string, count: number): number[][] {
  const info = spaceInfo(space);
  return info.channels.map((ch) => {
    if (info.coefficientMode) {
      return Array.from({ length: count }, (_, k) =>
        ch.token === "coef1" ? 0 : defaultValue(k, count),
      );
    }
    return Array.from({ length: count }, (_, k) =>
      ch.order === 0 ? defaultValue(k + ch.offset, count) : 0,
    );
  });
}

export function newSession(space = "hermite_cubic", count = 9): EditorState {
  return {
    space,
    mode: "scalar",
    start: 0,
    count,
    dims: [defaultChannels(space, count)],
    grid: 16,
    boundary: "mirror",
  };
}

export function setSample(
  state: EditorState,
  dim: number,
  channel: number,
  k: number,
  value: number,
): EditorState {
  const dims = state.dims.map((d, di) =>
    di !== dim ? d : d.map((ch, ci) => (ci !== channel ? ch : ch.map((v, i) => (i === k ? value : v)))),
  );
  return { ...state, dims };
}

/** Linear interpolation of an offset value channel from the base values. */
function interpolated(base: number[] | undefined, offset: number, count: number): number[] {
  return Array.from({ length: count }, (_, k) => {
    if (!base) return 0;
    const x = k + offset;
    const lo = Math.floor(x);
    const t = x - lo;
    const a = base[Math.min(Math.max(lo, 0), count - 1)];
    const b = base[Math.min(Math.max(lo + 1, 0), count - 1)];
    return a * (1 - t) + b * t;
  });
}

/**
 * Carry the editable data over to another space.
 *
 * Channels with identical tokens are preserved; split slope handles and
 * the two-sided slope convert into each other (averaging on merge); new
 * value channels are linearly interpolated from the old primary values;
 * anything else starts at zero (slopes) or the old values (coefficient
 * weights).
 */
export function switchSpace(state: EditorState, space: string): EditorState {
  const from = spaceInfo(state.space);
  const to = spaceInfo(space);
  const find = (pred: (ch: ChannelSpec) => boolean): number =>
    from.channels.findIndex(pred);

  const mapDim = (channels: number[][]): number[][] => {
    const primaryValues =
      channels[find((ch) => ch.order === 0 && ch.offset === 0)] ??
      channels[find((ch) => ch.order === 0)];
    return to.channels.map((ch) => {
      const exact = find((c) => c.token === ch.token);
      if (exact >= 0) return [...channels[exact]];
      if (ch.order === 1) {
        const left = find((c) => c.order === 1 && c.side < 0 && c.offset === ch.offset);
        const right = find((c) => c.order === 1 && c.side > 0 && c.offset === ch.offset);
        const both = find((c) => c.order === 1 && c.side === 0 && c.offset === ch.offset);
        if (ch.side === 0 && left >= 0 && right >= 0) {
          // merge split handles into one slope
          return channels[left].map((v, i) => (v + channels[right][i]) / 2);
        }
        if (ch.side !== 0 && both >= 0) return [...channels[both]];
        return new Array(state.count).fill(0);
      }
      if (to.coefficientMode) {
        return ch.token === "coef1"
          ? new Array(state.count).fill(0)
          : interpolated(primaryValues, 0, state.count);
      }
      return interpolated(primaryValues, ch.offset, state.count);
    });
  };

  return { ...state, space, dims: state.dims.map(mapDim) };
}

export function switchMode(state: EditorState, mode: EditorMode): EditorState {
  if (mode === state.mode) return state;
  if (mode === "parametric") {
    // duplicate the channels per coordinate
    const copy = state.dims[0].map((ch) => [...ch]);
    return { ...state, mode, dims: [state.dims[0], copy] };
  }
  return { ...state, mode, dims: [state.dims[0]] };
}

export function setCount(state: EditorState, count: number): EditorState {
  if (count < 2) return state;
  const resize = (ch: number[]): number[] =>
    Array.from({ length: count }, (_, k) => ch[Math.min(k, ch.length - 1)] ?? 0);
  return {
    ...state,
    count,
    dims: state.dims.map((d) => d.map(resize)),
  };
}

export function serializeSession(state: EditorState): string {
  return JSON.stringify({ version: 1, state }, null, 1);
}

export function deserializeSession(text: string): EditorState {
  const obj = JSON.parse(text);
  if (!obj || obj.version !== 1 || !obj.state) {
    throw new Error("not an editor session file");
  }
  const state = obj.state as EditorState;
  spaceInfo(state.space); // validates the id
  return state;
}
