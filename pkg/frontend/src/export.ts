import { spaceInfo } from "./spaces";
import type { EditorState, ReconstructionResponse, SessionExport } from "./types";

/**
 * Samples CSV in the command-line format (header k,g1,...,gN).
 *
 * JavaScript's shortest round-trip number formatting parses back to the
 * identical double on the backend, so the exported file drives
 * `multispline reconstruct` to the same curve bytes the editor shows.
 */
export function samplesCsv(channels: number[][]): string {
  const n = channels.length;
  const count = channels[0]?.length ?? 0;
  const lines = ["k," + Array.from({ length: n }, (_, i) => `g${i + 1}`).join(",")];
  for (let k = 0; k < count; k++) {
    lines.push(`${k},` + channels.map((ch) => String(ch[k])).join(","));
  }
  return lines.join("\n") + "\n";
}

export interface SessionConfig {
  space: string;
  functionals?: string[];
  mode?: "samples" | "coefficients";
  grid: number;
  boundary: string;
  start: number;
  dims: number;
  cli: string[];
}

export function exportSession(
  state: EditorState,
  response: ReconstructionResponse,
): SessionExport {
  const info = spaceInfo(state.space);
  const samples = state.dims.map((channels) => samplesCsv(channels));
  const config: SessionConfig = {
    space: state.space,
    grid: state.grid,
    boundary: state.boundary,
    start: state.start,
    dims: state.dims.length,
    cli: [],
  };
  if (info.coefficientMode) config.mode = "coefficients";
  else config.functionals = info.channels.map((ch) => ch.token);
  config.cli = state.dims.map((_, d) => {
    const args = [
      "multispline",
      "reconstruct",
      "--space",
      state.space,
      "--samples",
      state.dims.length > 1 ? `samples_dim${d + 1}.csv` : "samples.csv",
      "--grid",
      String(state.grid),
      "--boundary",
      state.boundary,
      "--start",
      String(state.start),
      "--out",
      state.dims.length > 1 ? `curve_dim${d + 1}.csv` : "curve.csv",
    ];
    if (info.coefficientMode) args.push("--coefficients");
    return args.join(" ");
  });
  return {
    samples,
    config: JSON.stringify(config, null, 1) + "\n",
    curve: response.csv,
  };
}
