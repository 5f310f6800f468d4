// Candidate-mask overlay helpers: tint palette and the display-to-canvas
// coordinate mapping (inverse of any CSS scaling on the canvas element).

export interface DisplayRect {
  left: number;
  top: number;
  width: number;
  height: number;
}

export const MASK_TINTS = [
  'rgba(255, 99, 71, 0.45)',
  'rgba(65, 145, 255, 0.45)',
  'rgba(60, 200, 120, 0.45)',
  'rgba(250, 200, 60, 0.45)',
  'rgba(200, 90, 240, 0.45)',
  'rgba(80, 220, 220, 0.45)',
];

export function tintFor(index: number): string {
  return MASK_TINTS[index % MASK_TINTS.length];
}

/**
 * Map a client (display) point onto canvas-space coordinates, undoing the
 * element's display scaling. A click at (300, 120) on a 400x300 canvas
 * displayed at 800x600 lands on canvas point (150, 60).
 */
export function displayToCanvas(
  clientX: number,
  clientY: number,
  rect: DisplayRect,
  canvasWidth: number,
  canvasHeight: number,
): { x: number; y: number } {
  const sx = canvasWidth / rect.width;
  const sy = canvasHeight / rect.height;
  return {
    x: (clientX - rect.left) * sx,
    y: (clientY - rect.top) * sy,
  };
}
