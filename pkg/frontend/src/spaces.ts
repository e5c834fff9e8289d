import type { ChannelSpec, Side } from "./types";

/** Parse a channel token like "v@0", "d1@1/2" or "d1-@0". */
export function parseToken(token: string): ChannelSpec {
  const m = token.match(/^(v|d(\d+))([+-]?)@(-?\d+(?:\/\d+)?)$/);
  if (!m) throw new Error(`bad channel token: ${token}`);
  const order = m[1] === "v" ? 0 : parseInt(m[2], 10);
  const side: Side = m[3] === "-" ? -1 : m[3] === "+" ? 1 : 0;
  const frac = m[4].split("/");
  const offset =
    frac.length === 1 ? parseInt(frac[0], 10) : parseInt(frac[0], 10) / parseInt(frac[1], 10);
  return { token, order, offset, side, label: describe(order, side, offset) };
}

function describe(order: number, side: Side, offset: number): string {
  const what = order === 0 ? "value" : side < 0 ? "left slope" : side > 0 ? "right slope" : "slope";
  return offset === 0 ? what : `${what} @ ${offset > 0 ? "+" : ""}${offset}`;
}

export interface SpaceInfo {
  id: string;
  label: string;
  channels: ChannelSpec[];
  /** channels are raw expansion coefficients, not point samples */
  coefficientMode: boolean;
}

function space(id: string, label: string, tokens: string[], coefficientMode = false): SpaceInfo {
  return { id, label, channels: tokens.map(parseToken), coefficientMode };
}

function coefficientSpace(id: string, label: string, names: string[]): SpaceInfo {
  return {
    id,
    label,
    coefficientMode: true,
    channels: names.map((name, i) => ({
      token: `coef${i + 1}`,
      order: 0,
      offset: 0,
      side: 0 as Side,
      label: name,
    })),
  };
}

export const SPACES: SpaceInfo[] = [
  space("hermite_cubic", "Hermite cubic (S2+S3)", ["v@0", "d1@0"]),
  space("derivative_sampling(2)", "derivative sampling, quintic (S4+S5)", ["v@0", "d1@0"]),
  space("derivative_sampling(3)", "derivative sampling, septic (S6+S7)", ["v@0", "d1@0"]),
  space("derivative_sampling(4)", "derivative sampling, nonic (S8+S9)", ["v@0", "d1@0"]),
  space("mixed_s2s3s4", "value/slope + midpoint value (S2+S3+S4)", ["v@0", "d1@0", "v@1/2"]),
  space("direct_s2345", "half-step value/slope (S2+...+S5)", ["v@0", "d1@0", "v@1/2", "d1@1/2"]),
  space("bezier_quadratic", "quadratic Bezier (S1+S2)", ["v@0", "d1-@0"]),
  space("bezier_cubic", "cubic Bezier (S1+S2+S3)", ["v@0", "d1-@0", "d1+@0"]),
  space("lagrange(2)", "modified Lagrange, N=2 (S1+S2)", ["v@1/2", "v@1"]),
  space("lagrange(3)", "modified Lagrange, N=3 (S1+S2+S3)", ["v@1/3", "v@2/3", "v@1"]),
  space("bispline_interp(1)", "half-step interpolation (S3+S4)", ["v@0", "v@-1/2"]),
  space("bispline_interp(2)", "half-step interpolation (S5+S6)", ["v@0", "v@-1/2"]),
  coefficientSpace("hybrid(0,2)", "jump + smooth coefficients (S0+S2)", ["jump weight", "smooth weight"]),
  coefficientSpace("hybrid(0,3)", "jump + smooth coefficients (S0+S3)", ["jump weight", "smooth weight"]),
  coefficientSpace("hybrid(0,4)", "jump + smooth coefficients (S0+S4)", ["jump weight", "smooth weight"]),
];

export function spaceInfo(id: string): SpaceInfo {
  const info = SPACES.find((s) => s.id === id);
  if (!info) throw new Error(`unknown space: ${id}`);
  return info;
}
