import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ReconstructionClient } from "../src/api";
import { newSession } from "../src/state";
import type { ReconstructionResponse } from "../src/types";

function okResponse(tag: number): Response {
  const body: ReconstructionResponse = {
    x: [tag],
    y: [[tag]],
    consistency: 0,
    csv: "x,f\n",
  };
  return new Response(JSON.stringify(body), { status: 200 });
}

describe("reconstruction client", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("debounces rapid edits into one request", async () => {
    const fetchFn = vi.fn(async () => okResponse(1));
    const client = new ReconstructionClient("http://x", { fetchFn });
    const state = newSession("hermite_cubic", 4);
    const results: number[] = [];
    for (let i = 0; i < 5; i++) {
      client.schedule(state, (r) => results.push(r.x[0]), () => {});
      vi.advanceTimersByTime(10); // under the 30 ms debounce
    }
    await vi.advanceTimersByTimeAsync(40);
    expect(fetchFn).toHaveBeenCalledTimes(1);
    expect(results).toEqual([1]);
  });

  it("lets the latest request win", async () => {
    let calls = 0;
    const gates: Array<() => void> = [];
    const fetchFn = vi.fn(async () => {
      const tag = ++calls;
      await new Promise<void>((resolve) => gates.push(resolve));
      return okResponse(tag);
    });
    const client = new ReconstructionClient("http://x", { fetchFn });
    const state = newSession("hermite_cubic", 4);
    const results: number[] = [];
    client.schedule(state, (r) => results.push(r.x[0]), () => {}, true);
    client.schedule(state, (r) => results.push(r.x[0]), () => {}, true);
    expect(fetchFn).toHaveBeenCalledTimes(2);
    gates[1]();
    await vi.waitFor(() => expect(results).toEqual([2]));
    gates[0](); // stale response arrives late and is discarded
    await vi.advanceTimersByTimeAsync(1);
    expect(results).toEqual([2]);
  });

  it("immediate requests skip the debounce", () => {
    const fetchFn = vi.fn(async () => okResponse(1));
    const client = new ReconstructionClient("http://x", { fetchFn });
    client.schedule(newSession("hermite_cubic", 4), () => {}, () => {}, true);
    expect(fetchFn).toHaveBeenCalledTimes(1);
  });

  it("reports backend errors without throwing", async () => {
    const fetchFn = vi.fn(async () => new Response('{"error":"boom"}', { status: 400 }));
    const client = new ReconstructionClient("http://x", { fetchFn });
    const errors: string[] = [];
    client.schedule(newSession("hermite_cubic", 4), () => {}, (e) => errors.push(e.message), true);
    await vi.waitFor(() => expect(errors).toEqual(["boom"]));
  });

  it("treats network failures as stale-curve conditions", async () => {
    const fetchFn = vi.fn(async () => {
      throw new Error("unreachable");
    });
    const client = new ReconstructionClient("http://x", { fetchFn });
    const errors: string[] = [];
    client.schedule(newSession("hermite_cubic", 4), () => {}, (e) => errors.push(e.message), true);
    await vi.waitFor(() => expect(errors).toEqual(["unreachable"]));
  });
});
