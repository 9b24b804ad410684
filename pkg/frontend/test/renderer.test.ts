import { describe, expect, it } from "vitest";

import { render } from "../src/renderer.js";
import { applyMessage, initialViewState } from "../src/store.js";
import type { ServerMessage, SnapshotPayload } from "../src/types.js";
import { NEGATIVE_COLOR, POSITIVE_COLOR } from "../src/types.js";
import { FakeContext } from "./fake_context.js";

const CAMERA = { scale: 3, originX: 400, originY: 300 };

function snapshotMessage(overrides: Partial<SnapshotPayload> = {}): ServerMessage {
  const payload: SnapshotPayload = {
    phase: "playing",
    level: 3,
    round: 1,
    lives: 2,
    points: 450,
    timer_remaining: 41.7,
    level_spec: {
      level: 3,
      n_proteins: 17,
      charges_visible: true,
      n_rounds: 2,
      rotation_required: false,
      candidates_per_round: 3,
      moving: false,
      gravity: false,
      round_time_limit: 60,
    },
    receptor: {
      piece_id: "x-receptor",
      outline: [[-10, -10], [10, -10], [10, 10], [-10, 10]],
      charges: [
        { x: 0, y: 0, sign: "positive", bridge_index: 0 },
        { x: 2, y: 0, sign: "negative", bridge_index: 1 },
      ],
      display_name: "X",
      blurb: "",
    },
    candidates: [],
    selected: null,
    info_open: false,
    tutorial_page: "",
    ...overrides,
  };
  return { kind: "snapshot", seq: 1, payload };
}

describe("render", () => {
  it("zero candidates: scene is receptor plus HUD only", () => {
    const ctx = new FakeContext();
    const view = initialViewState();
    applyMessage(view, snapshotMessage(), 0);
    render(ctx, view, CAMERA, { width: 800, height: 600, nowMs: 0 });
    const fills = ctx.calls.filter(([n]) => n === "fill");
    // 1 polygon fill (receptor) + 2 charge dots; no candidate polygons.
    expect(fills).toHaveLength(3);
    expect(ctx.texts().some((t) => t.startsWith("Level 3"))).toBe(true);
    expect(ctx.texts().some((t) => t.includes("Time 42s"))).toBe(true);
  });

  it("colors charges blue positive, red negative", () => {
    const ctx = new FakeContext();
    const view = initialViewState();
    applyMessage(view, snapshotMessage(), 0);
    render(ctx, view, CAMERA, { width: 800, height: 600, nowMs: 0 });
    const chargeFills = ctx.calls
      .filter(([n]) => n === "fill")
      .map((c) => String(c[1]))
      .filter((style) => style === POSITIVE_COLOR || style === NEGATIVE_COLOR);
    expect(chargeFills).toEqual([POSITIVE_COLOR, NEGATIVE_COLOR]);
  });

  it("draws the percent bar at the score fraction", () => {
    const ctx = new FakeContext();
    const view = initialViewState();
    applyMessage(view, snapshotMessage(), 0);
    applyMessage(
      view,
      { kind: "score_update", seq: 2, payload: { candidate: 0, percent: 75 } },
      0,
    );
    render(ctx, view, CAMERA, { width: 800, height: 600, nowMs: 0 });
    const bar = ctx.calls.filter(([n]) => n === "fillRect").at(-1)!;
    expect(bar[3]).toBeCloseTo(218 * 0.75); // width argument
    expect(ctx.texts()).toContain("75%");
  });

  it("applies candidate poses before drawing", () => {
    const ctx = new FakeContext();
    const view = initialViewState();
    applyMessage(
      view,
      snapshotMessage({
        candidates: [
          {
            piece_id: "c0",
            outline: [[0, 0], [4, 0], [0, 4]],
            charges: [],
            display_name: "",
            blurb: "",
            pose: { tx: 20, ty: 0, theta: 0 },
          },
        ],
      }),
      0,
    );
    render(ctx, view, CAMERA, { width: 800, height: 600, nowMs: 0 });
    // First vertex of the candidate lands at world (20,0) -> screen (460, 300).
    const moves = ctx.calls.filter(([n]) => n === "moveTo");
    expect(moves.at(-1)).toEqual(["moveTo", 400 + 20 * 3, 300]);
  });

  it("draws the win flourish while active and drops it after", () => {
    const ctx = new FakeContext();
    const view = initialViewState();
    applyMessage(view, snapshotMessage(), 0);
    applyMessage(view, { kind: "win_animation", seq: 5, payload: { entry: "x" } }, 1000);
    render(ctx, view, CAMERA, { width: 800, height: 600, nowMs: 1400 });
    const arcs = ctx.calls.filter(([n]) => n === "arc");
    // 2 charge dots + 1 flourish ring
    expect(arcs).toHaveLength(3);

    const later = new FakeContext();
    render(later, view, CAMERA, { width: 800, height: 600, nowMs: 3000 });
    expect(later.calls.filter(([n]) => n === "arc")).toHaveLength(2);
  });

  it("renders a connecting screen without a snapshot", () => {
    const ctx = new FakeContext();
    render(ctx, initialViewState(), CAMERA, { width: 800, height: 600, nowMs: 0 });
    expect(ctx.texts().join(" ")).toMatch(/Connecting/);
  });
});
