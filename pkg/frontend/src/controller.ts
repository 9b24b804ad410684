/** Maps pointer gestures and overlay buttons to protocol inputs.
 *
 * Inputs are suppressed outside phase `playing` (overlay buttons carry
 * the dismiss/quiz actions for the other phases).
 */

import type { Camera } from "./camera.js";
import { screenDeltaToWorld, screenToWorld } from "./camera.js";
import { applyPose, pointInPolygon } from "./geometry.js";
import type { Connection } from "./net.js";
import type { OverlayButton, ViewState } from "./store.js";

export class ClientController {
  constructor(
    private readonly connection: Connection,
    private readonly view: ViewState,
    private readonly camera: () => Camera,
  ) {}

  private playing(): boolean {
    return this.view.snapshot?.phase === "playing";
  }

  /** Topmost candidate under a canvas point, or null on empty space. */
  hitTest(px: number, py: number): number | null {
    const snap = this.view.snapshot;
    if (!snap || !this.playing()) return null;
    const [wx, wy] = screenToWorld(this.camera(), px, py);
    for (let i = snap.candidates.length - 1; i >= 0; i--) {
      const piece = snap.candidates[i]!;
      const outline = piece.pose ? applyPose(piece.pose, piece.outline) : piece.outline;
      if (pointInPolygon(wx, wy, outline)) return i;
    }
    return null;
  }

  onDrag(index: number, dxPx: number, dyPx: number): void {
    if (!this.playing()) return;
    const { dx, dy } = screenDeltaToWorld(this.camera(), dxPx, dyPx);
    // Move the local pose too so held pieces track the pointer between
    // snapshots; the next snapshot remains authoritative.
    const piece = this.view.snapshot?.candidates[index];
    if (piece?.pose) {
      piece.pose.tx += dx;
      piece.pose.ty += dy;
    }
    this.connection.sendInput({ type: "drag", candidate: index, dx, dy });
  }

  onDoubleTap(index: number): void {
    if (!this.playing()) return;
    this.connection.sendInput({ type: "double_tap", candidate: index });
  }

  requestInfo(): void {
    if (!this.playing()) return;
    this.connection.sendInput({ type: "select_info" });
  }

  overlayAction(action: OverlayButton["action"]): void {
    switch (action.type) {
      case "dismiss":
        this.connection.sendInput({ type: "dismiss" });
        break;
      case "answer_quiz":
        this.connection.sendInput({ type: "answer_quiz", choice: action.choice });
        break;
      case "skip_quiz":
        this.connection.sendInput({ type: "skip_quiz" });
        break;
      case "acknowledge":
        this.view.explanation = null; // local overlay only; server already advanced
        break;
    }
  }
}
