import { spaceInfo } from "./spaces";
import type { EditorState, ReconstructionResponse } from "./types";

export interface Viewport {
  width: number;
  height: number;
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export function viewportFor(state: EditorState, width: number, height: number): Viewport {
  return {
    width,
    height,
    xMin: state.start - 0.5,
    xMax: state.start + state.count - 0.5,
    yMin: -2.5,
    yMax: 2.5,
  };
}

export const toScreen = (v: Viewport, x: number, y: number): [number, number] => [
  ((x - v.xMin) / (v.xMax - v.xMin)) * v.width,
  v.height - ((y - v.yMin) / (v.yMax - v.yMin)) * v.height,
];

export const fromScreen = (v: Viewport, px: number, py: number): [number, number] => [
  v.xMin + (px / v.width) * (v.xMax - v.xMin),
  v.yMin + ((v.height - py) / v.height) * (v.yMax - v.yMin),
];

/** Marker geometry in data coordinates, one entry per (channel, index). */
export interface Marker {
  dim: number;
  channel: number;
  k: number;
  x: number;
  y: number;
  kind: "value" | "slope" | "coef";
  side: -1 | 0 | 1;
}

function curveAt(resp: ReconstructionResponse, dim: number, x: number): number {
  const xs = resp.x;
  if (!xs.length) return 0;
  let best = 0;
  for (let i = 1; i < xs.length; i++) {
    if (Math.abs(xs[i] - x) < Math.abs(xs[best] - x)) best = i;
  }
  return resp.y[dim][best];
}

const HANDLE = 0.45; // half-width of a slope handle, in knot units

export function markers(
  state: EditorState,
  resp: ReconstructionResponse | null,
): Marker[] {
  const info = spaceInfo(state.space);
  const out: Marker[] = [];
  const parametric = state.mode === "parametric";
  info.channels.forEach((ch, ci) => {
    for (let k = 0; k < state.count; k++) {
      const pos = state.start + k + ch.offset;
      if (info.coefficientMode) {
        out.push({ dim: 0, channel: ci, k, x: pos, y: state.dims[0][ci][k], kind: "coef", side: 0 });
      } else if (ch.order === 0) {
        const x = parametric ? state.dims[0][ci][k] : pos;
        const y = parametric ? state.dims[1][ci][k] : state.dims[0][ci][k];
        out.push({ dim: 0, channel: ci, k, x, y, kind: "value", side: 0 });
      } else {
        // slope handle endpoint, anchored on the curve (or the value sample)
        const anchorY = parametric
          ? state.dims[1][0][k]
          : resp
            ? curveAt(resp, 0, pos)
            : state.dims[0][0]?.[k] ?? 0;
        const anchorX = parametric ? state.dims[0][0][k] : pos;
        const dx = parametric ? state.dims[0][ci][k] / 3 : HANDLE * (ch.side < 0 ? -1 : 1);
        const dy = parametric
          ? state.dims[1][ci][k] / 3
          : state.dims[0][ci][k] * dx;
        out.push({
          dim: 0,
          channel: ci,
          k,
          x: anchorX + dx,
          y: anchorY + dy,
          kind: "slope",
          side: ch.side,
        });
      }
    }
  });
  return out;
}

export interface DrawOptions {
  stale: boolean;
}

export function draw(
  ctx: CanvasRenderingContext2D,
  state: EditorState,
  resp: ReconstructionResponse | null,
  view: Viewport,
  opts: DrawOptions,
): void {
  ctx.clearRect(0, 0, view.width, view.height);

  // knot grid and axis
  ctx.strokeStyle = "#e2e8f0";
  ctx.lineWidth = 1;
  for (let k = Math.ceil(view.xMin); k <= Math.floor(view.xMax); k++) {
    const [px] = toScreen(view, k, 0);
    ctx.beginPath();
    ctx.moveTo(px, 0);
    ctx.lineTo(px, view.height);
    ctx.stroke();
  }
  const [, axisY] = toScreen(view, 0, 0);
  ctx.strokeStyle = "#cbd5e1";
  ctx.beginPath();
  ctx.moveTo(0, axisY);
  ctx.lineTo(view.width, axisY);
  ctx.stroke();

  // reconstructed curve
  if (resp) {
    ctx.strokeStyle = opts.stale ? "#94a3b8" : "#0f766e";
    ctx.lineWidth = 2;
    ctx.beginPath();
    const parametric = state.mode === "parametric" && resp.y.length > 1;
    resp.x.forEach((x, i) => {
      const pt = parametric
        ? toScreen(view, resp.y[0][i], resp.y[1][i])
        : toScreen(view, x, resp.y[0][i]);
      if (i === 0) ctx.moveTo(pt[0], pt[1]);
      else ctx.lineTo(pt[0], pt[1]);
    });
    ctx.stroke();
  }

  // markers and slope handles
  for (const m of markers(state, resp)) {
    const [px, py] = toScreen(view, m.x, m.y);
    if (m.kind === "slope") {
      const anchorX = state.mode === "parametric" ? state.dims[0][0][m.k] : state.start + m.k;
      const anchorY =
        state.mode === "parametric"
          ? state.dims[1][0][m.k]
          : resp
            ? curveAt(resp, 0, anchorX)
            : 0;
      const [ax, ay] = toScreen(view, anchorX, anchorY);
      ctx.strokeStyle = "#f59e0b";
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      ctx.moveTo(ax, ay);
      ctx.lineTo(px, py);
      ctx.stroke();
      ctx.fillStyle = "#f59e0b";
      ctx.beginPath();
      ctx.arc(px, py, 4, 0, 2 * Math.PI);
      ctx.fill();
    } else {
      ctx.fillStyle = m.kind === "coef" ? "#7c3aed" : "#16a34a";
      ctx.beginPath();
      ctx.arc(px, py, 5, 0, 2 * Math.PI);
      ctx.fill();
      ctx.strokeStyle = "#ffffff";
      ctx.stroke();
    }
  }
}
