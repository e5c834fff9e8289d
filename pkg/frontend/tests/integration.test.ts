/**
 * End-to-end tests against the real reconstruction backend.
 *
 * A `multispline serve` process is spawned once for the file; these
 * cover the editor-level acceptance checks: the exported session
 * reproduces the on-screen curve byte-for-byte through the command-line
 * tool, and Bezier handle edits only affect the curve on their side of
 * the knot.
 */

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { buildRequest } from "../src/api";
import { exportSession } from "../src/export";
import { newSession, setSample, switchMode } from "../src/state";
import type { EditorState, ReconstructionResponse } from "../src/types";

let proc: ChildProcess;
let baseUrl = "";

beforeAll(async () => {
  proc = spawn("python3", ["-m", "multispline.cli", "serve", "--port", "0"], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  baseUrl = await new Promise<string>((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error("backend did not start")), 15000);
    proc.stdout!.on("data", (chunk: Buffer) => {
      const m = chunk.toString().match(/serving on (http:\/\/[^/\s]+)/);
      if (m) {
        clearTimeout(timer);
        resolve(m[1]);
      }
    });
    proc.on("exit", (code) => reject(new Error(`backend exited: ${code}`)));
  });
}, 20000);

afterAll(() => {
  proc?.kill();
});

async function reconstruct(state: EditorState): Promise<ReconstructionResponse> {
  const resp = await fetch(`${baseUrl}/reconstruct`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(buildRequest(state)),
  });
  const body = await resp.json();
  if (!resp.ok) throw new Error(body.error);
  return body as ReconstructionResponse;
}

describe("editor against the live backend", () => {
  it("hermite session: curve interpolates the markers", async () => {
    let s = newSession("hermite_cubic", 7);
    s = setSample(s, 0, 0, 3, 1.5);
    const resp = await reconstruct(s);
    expect(resp.consistency).not.toBeNull();
    expect(resp.consistency!).toBeLessThan(1e-6);
    const i = resp.x.indexOf(3);
    expect(resp.y[0][i]).toBeCloseTo(1.5, 9);
  }, 30000);

  it("exported session reproduces the curve byte-identically via the CLI", async () => {
    let s = newSession("hermite_cubic", 7);
    s = setSample(s, 0, 0, 2, 0.8);
    s = setSample(s, 0, 1, 4, -2.1);
    const resp = await reconstruct(s);
    const files = exportSession(s, resp);

    const dir = mkdtempSync(join(tmpdir(), "msed-"));
    const samples = join(dir, "samples.csv");
    const out = join(dir, "curve_cli.csv");
    writeFileSync(samples, files.samples[0]);
    const config = JSON.parse(files.config);
    const run = spawnSync(
      "python3",
      [
        "-m",
        "multispline.cli",
        "reconstruct",
        "--space",
        config.space,
        "--functionals",
        config.functionals.join(","),
        "--samples",
        samples,
        "--grid",
        String(config.grid),
        "--boundary",
        config.boundary,
        "--start",
        String(config.start),
        "--out",
        out,
      ],
      { encoding: "utf8" },
    );
    expect(run.status).toBe(0);
    expect(readFileSync(out, "utf8")).toBe(files.curve);
  }, 30000);

  it("parametric sessions return one curve per coordinate", async () => {
    let s = switchMode(newSession("bezier_quadratic", 5), "parametric");
    s = setSample(s, 0, 0, 2, 1.4);
    s = setSample(s, 1, 0, 2, 0.5);
    const resp = await reconstruct(s);
    expect(resp.y).toHaveLength(2);
    expect(resp.csv.startsWith("x,f1,f2\n")).toBe(true);
  }, 30000);

  it("parametric export: per-coordinate CLI runs merge into the joint curve", async () => {
    let s = switchMode(newSession("hermite_cubic", 6), "parametric");
    s = setSample(s, 0, 0, 2, 1.2);
    s = setSample(s, 1, 0, 3, -0.7);
    const resp = await reconstruct(s);
    const files = exportSession(s, resp);
    expect(files.samples).toHaveLength(2);

    const dir = mkdtempSync(join(tmpdir(), "msed-"));
    const config = JSON.parse(files.config);
    const perDim: string[][] = [];
    for (let d = 0; d < 2; d++) {
      const samples = join(dir, `samples_dim${d + 1}.csv`);
      const out = join(dir, `curve_dim${d + 1}.csv`);
      writeFileSync(samples, files.samples[d]);
      const run = spawnSync(
        "python3",
        [
          "-m", "multispline.cli", "reconstruct",
          "--space", config.space,
          "--functionals", config.functionals.join(","),
          "--samples", samples,
          "--grid", String(config.grid),
          "--boundary", config.boundary,
          "--start", String(config.start),
          "--out", out,
        ],
        { encoding: "utf8" },
      );
      expect(run.status).toBe(0);
      perDim.push(readFileSync(out, "utf8").trimEnd().split("\n"));
    }
    // column-merge the two scalar curves; the joint CSV must match bytewise
    const merged =
      "x,f1,f2\n" +
      perDim[0]
        .slice(1)
        .map((line, i) => line + "," + perDim[1][i + 1].split(",")[1])
        .join("\n") +
      "\n";
    expect(merged).toBe(files.curve);
  }, 30000);

  it("hybrid export reproduces the curve via the CLI coefficient mode", async () => {
    let s = newSession("hybrid(0,3)", 8);
    s = setSample(s, 0, 0, 3, 1.0); // a jump weight
    const resp = await reconstruct(s);
    const files = exportSession(s, resp);
    const dir = mkdtempSync(join(tmpdir(), "msed-"));
    const samples = join(dir, "samples.csv");
    const out = join(dir, "curve_cli.csv");
    writeFileSync(samples, files.samples[0]);
    const config = JSON.parse(files.config);
    expect(config.mode).toBe("coefficients");
    const run = spawnSync(
      "python3",
      [
        "-m", "multispline.cli", "reconstruct",
        "--space", config.space,
        "--coefficients",
        "--samples", samples,
        "--grid", String(config.grid),
        "--boundary", config.boundary,
        "--start", String(config.start),
        "--out", out,
      ],
      { encoding: "utf8" },
    );
    expect(run.status).toBe(0);
    expect(readFileSync(out, "utf8")).toBe(files.curve);
  }, 30000);

  it("editing one hermite knot only moves the curve within one support width", async () => {
    const base = newSession("hermite_cubic", 9);
    const before = await reconstruct(base);
    const knot = 4;
    const after = await reconstruct(setSample(base, 0, 0, knot, 1.7));
    before.x.forEach((x, i) => {
      if (x <= knot - 1 || x >= knot + 1) {
        expect(after.y[0][i]).toBe(before.y[0][i]);
      }
    });
    const mid = before.x.indexOf(knot);
    expect(after.y[0][mid]).not.toBe(before.y[0][mid]);
  }, 30000);

  it("dragging a bezier right handle leaves the curve left of the knot unchanged", async () => {
    const base = newSession("bezier_cubic", 7);
    const before = await reconstruct(base);
    // right-derivative channel (index 2) at knot 3
    const after = await reconstruct(setSample(base, 0, 2, 3, 2.5));
    const knot = 3;
    let changed = 0;
    before.x.forEach((x, i) => {
      if (x < knot) {
        expect(after.y[0][i]).toBe(before.y[0][i]); // bitwise identical
      } else if (after.y[0][i] !== before.y[0][i]) {
        changed += 1;
      }
    });
    expect(changed).toBeGreaterThan(0);
  }, 30000);

  it("hybrid spaces run in coefficient mode", async () => {
    const s = newSession("hybrid(0,3)", 8);
    const resp = await reconstruct(s);
    expect(resp.consistency).toBeNull();
    expect(resp.x.length).toBe(7 * s.grid + 1);
  }, 30000);
});
