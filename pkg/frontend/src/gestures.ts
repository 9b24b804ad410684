/** Pointer gesture recognition: drags on pieces and the 300 ms double tap. */

export interface GestureCallbacks {
  /** Candidate index under the pointer, or null for empty space. */
  hitTest(px: number, py: number): number | null;
  onDrag(index: number, dxPx: number, dyPx: number): void;
  onDoubleTap(index: number): void;
}

export const DOUBLE_TAP_WINDOW_MS = 300;
const TAP_SLOP_PX = 6;

export class GestureDetector {
  private active: number | null = null;
  private downX = 0;
  private downY = 0;
  private lastX = 0;
  private lastY = 0;
  private dragging = false;
  private lastTapTime = -Infinity;
  private lastTapIndex: number | null = null;

  constructor(
    private readonly callbacks: GestureCallbacks,
    private readonly doubleTapWindowMs: number = DOUBLE_TAP_WINDOW_MS,
  ) {}

  pointerDown(px: number, py: number, _timeMs: number): void {
    this.active = this.callbacks.hitTest(px, py);
    this.downX = this.lastX = px;
    this.downY = this.lastY = py;
    this.dragging = false;
  }

  pointerMove(px: number, py: number, _timeMs: number): void {
    if (this.active === null) return;
    if (!this.dragging) {
      const moved = Math.hypot(px - this.downX, py - this.downY);
      if (moved < TAP_SLOP_PX) return;
      this.dragging = true;
    }
    this.callbacks.onDrag(this.active, px - this.lastX, py - this.lastY);
    this.lastX = px;
    this.lastY = py;
  }

  pointerUp(px: number, py: number, timeMs: number): void {
    const index = this.active;
    const wasDrag = this.dragging;
    this.active = null;
    this.dragging = false;
    if (index === null || wasDrag) {
      this.lastTapIndex = null;
      return;
    }
    // A clean tap on a piece; two of them inside the window rotate it.
    if (
      this.lastTapIndex === index &&
      timeMs - this.lastTapTime <= this.doubleTapWindowMs
    ) {
      this.lastTapIndex = null;
      this.lastTapTime = -Infinity;
      this.callbacks.onDoubleTap(index);
    } else {
      this.lastTapIndex = index;
      this.lastTapTime = timeMs;
    }
  }
}
