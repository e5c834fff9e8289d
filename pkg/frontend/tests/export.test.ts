import { describe, expect, it } from "vitest";

import { buildRequest } from "../src/api";
import { exportSession, samplesCsv } from "../src/export";
import { newSession, switchMode } from "../src/state";
import type { ReconstructionResponse } from "../src/types";

const fakeResponse: ReconstructionResponse = {
  x: [0, 0.5, 1],
  y: [[0, 0.25, 1]],
  consistency: 0,
  csv: "x,f\n0,0\n0.5,0.25\n1,1\n",
};

describe("samples CSV", () => {
  it("writes the CLI header and one row per index", () => {
    const text = samplesCsv([
      [0.5, -1.25],
      [1, 2],
    ]);
    expect(text).toBe("k,g1,g2\n0,0.5,1\n1,-1.25,2\n");
  });

  it("keeps full double precision", () => {
    const v = 0.1 + 0.2; // 0.30000000000000004
    const text = samplesCsv([[v]]);
    expect(text).toContain("0.30000000000000004");
    expect(Number(text.split("\n")[1].split(",")[1])).toBe(v);
  });
});

describe("session export", () => {
  it("packages samples, config and the canonical curve", () => {
    const s = newSession("hermite_cubic", 3);
    const files = exportSession(s, fakeResponse);
    expect(files.samples).toHaveLength(1);
    expect(files.samples[0].startsWith("k,g1,g2\n")).toBe(true);
    expect(files.curve).toBe(fakeResponse.csv);
    const config = JSON.parse(files.config);
    expect(config.space).toBe("hermite_cubic");
    expect(config.functionals).toEqual(["v@0", "d1@0"]);
    expect(config.cli[0]).toContain("multispline reconstruct");
    expect(config.cli[0]).toContain("--grid 16");
  });

  it("marks coefficient spaces and per-dim files", () => {
    const s = switchMode(newSession("hybrid(0,3)", 4), "parametric");
    const files = exportSession(s, { ...fakeResponse, y: [[0], [0]] });
    expect(files.samples).toHaveLength(2);
    const config = JSON.parse(files.config);
    expect(config.mode).toBe("coefficients");
    expect(config.dims).toBe(2);
    expect(config.cli[1]).toContain("--coefficients");
    expect(config.cli[1]).toContain("samples_dim2.csv");
  });
});

describe("request building", () => {
  it("sends functionals for sampling spaces", () => {
    const req = buildRequest(newSession("bezier_cubic", 4));
    expect(req.functionals).toEqual(["v@0", "d1-@0", "d1+@0"]);
    expect(req.mode).toBeUndefined();
    expect(req.dims).toHaveLength(1);
  });

  it("sends coefficient mode for hybrids", () => {
    const req = buildRequest(newSession("hybrid(0,2)", 4));
    expect(req.mode).toBe("coefficients");
    expect(req.functionals).toBeUndefined();
  });
});
