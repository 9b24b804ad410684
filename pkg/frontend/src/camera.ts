/** Angstrom <-> pixel mapping.  World y points up, canvas y points down. */

export interface Camera {
  scale: number; // px per angstrom
  originX: number; // canvas x of world (0, 0)
  originY: number; // canvas y of world (0, 0)
}

export function fitCamera(
  canvasWidth: number,
  canvasHeight: number,
  worldHalfWidth: number,
  worldHalfHeight: number,
): Camera {
  const scale = Math.min(
    canvasWidth / (2 * worldHalfWidth),
    canvasHeight / (2 * worldHalfHeight),
  );
  return { scale, originX: canvasWidth / 2, originY: canvasHeight / 2 };
}

export function worldToScreen(cam: Camera, x: number, y: number): [number, number] {
  return [cam.originX + x * cam.scale, cam.originY - y * cam.scale];
}

export function screenToWorld(cam: Camera, px: number, py: number): [number, number] {
  return [(px - cam.originX) / cam.scale, (cam.originY - py) / cam.scale];
}

/** Pointer deltas in px become world deltas in angstroms (y flips). */
export function screenDeltaToWorld(
  cam: Camera,
  dxPx: number,
  dyPx: number,
): { dx: number; dy: number } {
  return { dx: dxPx / cam.scale, dy: -dyPx / cam.scale };
}
