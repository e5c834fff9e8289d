export type Side = -1 | 0 | 1;

/** One measurement channel of a reconstruction space. */
export interface ChannelSpec {
  /** wire token, e.g. "v@0", "d1@1/2", "d1-@0" */
  token: string;
  order: number;
  /** sample offset relative to the integer index, as a float */
  offset: number;
  side: Side;
  label: string;
}

export type EditorMode = "scalar" | "parametric";

export interface EditorState {
  space: string;
  mode: EditorMode;
  /** integer position of sample index 0 */
  start: number;
  /** number of sample indices per channel */
  count: number;
  /** dims[dimension][channel][sampleIndex] */
  dims: number[][][];
  /** curve points per knot interval */
  grid: number;
  boundary: "mirror" | "periodic" | "zero";
}

export interface ReconstructionRequest {
  space: string;
  functionals?: string[];
  mode?: "samples" | "coefficients";
  dims: { channels: number[][] }[];
  grid: number;
  boundary: string;
  start: number;
}

export interface ReconstructionResponse {
  x: number[];
  y: number[][];
  consistency: number | null;
  csv: string;
}

export interface SessionExport {
  /** one samples CSV per dimension, CLI-compatible */
  samples: string[];
  /** config JSON reproducing the job through `multispline reconstruct` */
  config: string;
  /** the canonical dense-curve CSV the backend returned */
  curve: string;
}
