import { beforeEach, describe, expect, it } from "vitest";

import { GestureDetector } from "../src/gestures.js";

interface Recorded {
  drags: Array<[number, number, number]>;
  doubleTaps: number[];
}

function makeDetector(hit: (px: number, py: number) => number | null) {
  const recorded: Recorded = { drags: [], doubleTaps: [] };
  const detector = new GestureDetector({
    hitTest: hit,
    onDrag: (i, dx, dy) => recorded.drags.push([i, dx, dy]),
    onDoubleTap: (i) => recorded.doubleTaps.push(i),
  });
  return { detector, recorded };
}

describe("GestureDetector", () => {
  let detector: GestureDetector;
  let recorded: Recorded;

  beforeEach(() => {
    ({ detector, recorded } = makeDetector((px) => (px < 200 ? 0 : null)));
  });

  it("two taps within 300 ms on a piece rotate it", () => {
    detector.pointerDown(50, 50, 0);
    detector.pointerUp(50, 50, 40);
    detector.pointerDown(52, 51, 180);
    detector.pointerUp(52, 51, 220);
    expect(recorded.doubleTaps).toEqual([0]);
  });

  it("taps 400 ms apart stay single taps", () => {
    detector.pointerDown(50, 50, 0);
    detector.pointerUp(50, 50, 30);
    detector.pointerDown(50, 50, 430);
    detector.pointerUp(50, 50, 460);
    expect(recorded.doubleTaps).toEqual([]);
  });

  it("a third tap after a double tap starts a fresh pair", () => {
    for (const t of [0, 100, 250, 330, 500, 560]) {
      detector.pointerDown(10, 10, t);
      detector.pointerUp(10, 10, t + 20);
    }
    // taps at 20/120 pair up, 270/350 pair up, 520/580 pair up
    expect(recorded.doubleTaps.length).toBeGreaterThanOrEqual(2);
  });

  it("taps on empty space produce nothing", () => {
    detector.pointerDown(300, 50, 0);
    detector.pointerUp(300, 50, 40);
    detector.pointerDown(300, 50, 100);
    detector.pointerUp(300, 50, 140);
    expect(recorded.doubleTaps).toEqual([]);
    expect(recorded.drags).toEqual([]);
  });

  it("movement beyond the slop becomes a drag with per-move deltas", () => {
    detector.pointerDown(50, 50, 0);
    detector.pointerMove(53, 50, 10); // under slop: ignored
    expect(recorded.drags).toEqual([]);
    detector.pointerMove(60, 50, 20); // passes slop
    detector.pointerMove(70, 45, 30);
    detector.pointerUp(70, 45, 40);
    expect(recorded.drags).toEqual([
      [0, 10, 0],
      [0, 10, -5],
    ]);
  });

  it("a drag does not count as a tap", () => {
    detector.pointerDown(50, 50, 0);
    detector.pointerMove(80, 50, 10);
    detector.pointerUp(80, 50, 20);
    detector.pointerDown(80, 50, 100);
    detector.pointerUp(80, 50, 130);
    expect(recorded.doubleTaps).toEqual([]);
  });

  it("drags on empty space are ignored", () => {
    detector.pointerDown(300, 50, 0);
    detector.pointerMove(340, 50, 10);
    detector.pointerUp(340, 50, 20);
    expect(recorded.drags).toEqual([]);
  });
});
