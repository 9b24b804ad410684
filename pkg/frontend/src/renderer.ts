/** Canvas scene: piece outlines, charge dots, HUD, and the win flourish.
 *
 * Pure: every frame is drawn from (view state, camera, clock) alone.
 * Only the 2D-context methods used here are required, so tests can pass
 * a recording fake.
 */

import type { Camera } from "./camera.js";
import { worldToScreen } from "./camera.js";
import { applyPose, polygonCentroid } from "./geometry.js";
import type { ViewState } from "./store.js";
import { flourishPhase } from "./store.js";
import type { PieceView } from "./types.js";
import { NEGATIVE_COLOR, POSITIVE_COLOR } from "./types.js";

export interface Canvas2D {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  fill(): void;
  stroke(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  fillText(text: string, x: number, y: number): void;
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  globalAlpha: number;
  lineWidth: number;
  font: string;
}

export interface RenderOptions {
  width: number;
  height: number;
  nowMs: number;
}

const RECEPTOR_FILL = "#3c4f62";
const CANDIDATE_FILLS = ["#5a8f7b", "#8f5a7b", "#7b8f5a", "#8f7b5a"];
const CHARGE_RADIUS_PX = 5;

function worldOutline(piece: PieceView): [number, number][] {
  return piece.pose ? applyPose(piece.pose, piece.outline) : piece.outline;
}

function drawPolygon(
  ctx: Canvas2D,
  cam: Camera,
  points: [number, number][],
  fill: string,
  alpha = 0.85,
): void {
  if (points.length < 3) return;
  ctx.beginPath();
  const [x0, y0] = worldToScreen(cam, points[0]![0], points[0]![1]);
  ctx.moveTo(x0, y0);
  for (let i = 1; i < points.length; i++) {
    const [x, y] = worldToScreen(cam, points[i]![0], points[i]![1]);
    ctx.lineTo(x, y);
  }
  ctx.closePath();
  ctx.globalAlpha = alpha;
  ctx.fillStyle = fill;
  ctx.fill();
  ctx.globalAlpha = 1;
  ctx.strokeStyle = "#1b2530";
  ctx.lineWidth = 1.5;
  ctx.stroke();
}

function drawCharges(ctx: Canvas2D, cam: Camera, piece: PieceView): void {
  for (const charge of piece.charges) {
    const world = piece.pose
      ? applyPose(piece.pose, [[charge.x, charge.y]])[0]!
      : [charge.x, charge.y];
    const [px, py] = worldToScreen(cam, world[0]!, world[1]!);
    ctx.beginPath();
    ctx.arc(px, py, CHARGE_RADIUS_PX, 0, Math.PI * 2);
    ctx.fillStyle = charge.sign === "positive" ? POSITIVE_COLOR : NEGATIVE_COLOR;
    ctx.fill();
    ctx.strokeStyle = "#ffffff";
    ctx.lineWidth = 1;
    ctx.stroke();
  }
}

function drawHud(
  ctx: Canvas2D,
  view: ViewState,
  width: number,
): void {
  const snap = view.snapshot;
  if (!snap) return;
  ctx.font = "16px sans-serif";
  ctx.fillStyle = "#e8eef4";
  ctx.fillText(`Level ${snap.level}  Round ${snap.round}/${snap.level_spec.n_rounds}`, 12, 24);
  ctx.fillText(`Points ${snap.points}`, 12, 46);
  ctx.fillText(`Lives ${"♥".repeat(Math.max(0, snap.lives))}`, 12, 68);
  ctx.fillText(`Time ${Math.max(0, snap.timer_remaining).toFixed(0)}s`, width - 90, 24);

  // Docking percentage bar from the latest score_update.
  const percent = view.lastScore?.percent ?? 0;
  const barX = width / 2 - 110;
  const barY = 12;
  ctx.strokeStyle = "#e8eef4";
  ctx.lineWidth = 1;
  ctx.strokeRect(barX, barY, 220, 16);
  ctx.fillStyle = percent >= 95 ? "#47d17c" : "#e8b84d";
  ctx.fillRect(barX + 1, barY + 1, 218 * (percent / 100), 14);
  ctx.fillStyle = "#e8eef4";
  ctx.fillText(`${percent.toFixed(0)}%`, barX + 228, barY + 14);
}

export function render(
  ctx: Canvas2D,
  view: ViewState,
  cam: Camera,
  options: RenderOptions,
): void {
  ctx.clearRect(0, 0, options.width, options.height);
  const snap = view.snapshot;
  if (!snap) {
    ctx.font = "18px sans-serif";
    ctx.fillStyle = "#e8eef4";
    ctx.fillText("Connecting…", options.width / 2 - 50, options.height / 2);
    return;
  }

  drawPolygon(ctx, cam, worldOutline(snap.receptor), RECEPTOR_FILL);
  drawCharges(ctx, cam, snap.receptor);

  snap.candidates.forEach((candidate, index) => {
    const outline = worldOutline(candidate);
    drawPolygon(ctx, cam, outline, CANDIDATE_FILLS[index % CANDIDATE_FILLS.length]!, 0.75);
    drawCharges(ctx, cam, candidate);
  });

  const glow = flourishPhase(view, options.nowMs);
  if (glow !== null) {
    // Join-and-glow: an expanding, fading ring over the docked pair.
    const [cx, cy] = polygonCentroid(worldOutline(snap.receptor));
    const [px, py] = worldToScreen(cam, cx, cy);
    ctx.beginPath();
    ctx.arc(px, py, 30 + glow * 120, 0, Math.PI * 2);
    ctx.globalAlpha = 1 - glow;
    ctx.strokeStyle = "#ffe27a";
    ctx.lineWidth = 6 * (1 - glow) + 1;
    ctx.stroke();
    ctx.globalAlpha = 1;
  }

  drawHud(ctx, view, options.width);
}
