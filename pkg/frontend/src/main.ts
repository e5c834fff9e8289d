import { ReconstructionClient } from "./api";
import { exportSession } from "./export";
import { draw, fromScreen, markers, toScreen, viewportFor } from "./render";
import { SPACES, spaceInfo } from "./spaces";
import {
  deserializeSession,
  newSession,
  serializeSession,
  setSample,
  switchMode,
  switchSpace,
  setCount,
} from "./state";
import type { EditorState, ReconstructionResponse } from "./types";

const canvas = document.getElementById("canvas") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const spaceSel = document.getElementById("space") as HTMLSelectElement;
const modeSel = document.getElementById("mode") as HTMLSelectElement;
const countInput = document.getElementById("count") as HTMLInputElement;
const statusEl = document.getElementById("status")!;
const bannerEl = document.getElementById("banner")!;

const client = new ReconstructionClient(
  (window as { MULTISPLINE_BACKEND?: string }).MULTISPLINE_BACKEND ?? "http://127.0.0.1:8642",
);

let state: EditorState = newSession();
let response: ReconstructionResponse | null = null;
let stale = true;

for (const s of SPACES) {
  const opt = document.createElement("option");
  opt.value = s.id;
  opt.textContent = s.label;
  spaceSel.appendChild(opt);
}
spaceSel.value = state.space;

function redraw(): void {
  const view = viewportFor(state, canvas.width, canvas.height);
  draw(ctx, state, response, view, { stale });
  const cons = response?.consistency;
  statusEl.textContent =
    `${spaceInfo(state.space).label}  |  ${state.count} knots` +
    (cons === null || cons === undefined ? "" : `  |  consistency ${cons.toExponential(2)}`);
  bannerEl.style.display = stale && response === null ? "block" : "none";
}

function refresh(immediate = false): void {
  client.schedule(
    state,
    (resp) => {
      response = resp;
      stale = false;
      redraw();
    },
    () => {
      stale = true; // keep the last curve, flag it, keep accepting edits
      bannerEl.style.display = "block";
      redraw();
    },
    immediate,
  );
}

function update(next: EditorState, immediate = false): void {
  state = next;
  redraw();
  refresh(immediate);
}

spaceSel.addEventListener("change", () => update(switchSpace(state, spaceSel.value), true));
modeSel.addEventListener("change", () =>
  update(switchMode(state, modeSel.value as EditorState["mode"]), true),
);
countInput.addEventListener("change", () =>
  update(setCount(state, parseInt(countInput.value, 10) || state.count), true),
);

// dragging: nearest marker within a 12px radius
let dragging: { channel: number; k: number } | null = null;

function pickMarker(px: number, py: number): { channel: number; k: number } | null {
  const view = viewportFor(state, canvas.width, canvas.height);
  let best: { channel: number; k: number } | null = null;
  let bestDist = 12;
  for (const m of markers(state, response)) {
    const [mx, my] = toScreen(view, m.x, m.y);
    const d = Math.hypot(mx - px, my - py);
    if (d < bestDist) {
      bestDist = d;
      best = { channel: m.channel, k: m.k };
    }
  }
  return best;
}

function applyDrag(px: number, py: number): void {
  if (!dragging) return;
  const info = spaceInfo(state.space);
  const ch = info.channels[dragging.channel];
  const view = viewportFor(state, canvas.width, canvas.height);
  const [x, y] = fromScreen(view, px, py);
  let next = state;
  if (state.mode === "parametric" && !info.coefficientMode) {
    if (ch.order === 0) {
      next = setSample(next, 0, dragging.channel, dragging.k, x);
      next = setSample(next, 1, dragging.channel, dragging.k, y);
    } else {
      const ax = state.dims[0][0][dragging.k];
      const ay = state.dims[1][0][dragging.k];
      next = setSample(next, 0, dragging.channel, dragging.k, 3 * (x - ax));
      next = setSample(next, 1, dragging.channel, dragging.k, 3 * (y - ay));
    }
  } else if (ch.order === 0 || info.coefficientMode) {
    next = setSample(next, 0, dragging.channel, dragging.k, y);
  } else {
    // slope handle: slope from the anchor on the curve to the pointer
    const pos = state.start + dragging.k + ch.offset;
    const anchorY = response
      ? response.y[0][nearestIndex(response.x, pos)]
      : state.dims[0][0][dragging.k];
    const dx = x - pos;
    const slope = Math.abs(dx) < 0.05 ? 0 : (y - anchorY) / dx;
    next = setSample(next, 0, dragging.channel, dragging.k, slope);
  }
  update(next);
}

function nearestIndex(xs: number[], x: number): number {
  let best = 0;
  for (let i = 1; i < xs.length; i++) {
    if (Math.abs(xs[i] - x) < Math.abs(xs[best] - x)) best = i;
  }
  return best;
}

canvas.addEventListener("pointerdown", (ev) => {
  dragging = pickMarker(ev.offsetX, ev.offsetY);
  if (dragging) canvas.setPointerCapture(ev.pointerId);
});
canvas.addEventListener("pointermove", (ev) => {
  if (dragging) applyDrag(ev.offsetX, ev.offsetY);
});
canvas.addEventListener("pointerup", () => {
  if (dragging) refresh(true); // exact request on drop
  dragging = null;
});

function download(name: string, text: string): void {
  const a = document.createElement("a");
  a.href = URL.createObjectURL(new Blob([text], { type: "text/plain" }));
  a.download = name;
  a.click();
  URL.revokeObjectURL(a.href);
}

document.getElementById("export")!.addEventListener("click", () => {
  if (!response) return;
  const files = exportSession(state, response);
  files.samples.forEach((csv, d) =>
    download(files.samples.length > 1 ? `samples_dim${d + 1}.csv` : "samples.csv", csv),
  );
  download("config.json", files.config);
  download("curve.csv", files.curve);
});

document.getElementById("save")!.addEventListener("click", () =>
  download("session.json", serializeSession(state)),
);

(document.getElementById("load") as HTMLInputElement).addEventListener("change", async (ev) => {
  const file = (ev.target as HTMLInputElement).files?.[0];
  if (!file) return;
  state = deserializeSession(await file.text());
  spaceSel.value = state.space;
  modeSel.value = state.mode;
  countInput.value = String(state.count);
  update(state, true);
});

redraw();
refresh(true);
