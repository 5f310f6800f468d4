import { describe, expect, it } from 'vitest';

import { MASK_TINTS, displayToCanvas, tintFor } from '../src/overlay.js';

describe('display to canvas mapping', () => {
  it('undoes a 2x display scale', () => {
    // 400x300 canvas displayed at 800x600, flush with the viewport
    const rect = { left: 0, top: 0, width: 800, height: 600 };
    const point = displayToCanvas(300, 120, rect, 400, 300);
    expect(point.x).toBeCloseTo(150, 9);
    expect(point.y).toBeCloseTo(60, 9);
  });

  it('accounts for the element offset', () => {
    const rect = { left: 25, top: 40, width: 800, height: 600 };
    const point = displayToCanvas(25 + 300, 40 + 120, rect, 400, 300);
    expect(point.x).toBeCloseTo(150, 9);
    expect(point.y).toBeCloseTo(60, 9);
  });

  it('is the identity at 1x', () => {
    const rect = { left: 0, top: 0, width: 640, height: 480 };
    const point = displayToCanvas(123.5, 77.25, rect, 640, 480);
    expect(point.x).toBeCloseTo(123.5, 9);
    expect(point.y).toBeCloseTo(77.25, 9);
  });

  it('handles non-uniform scaling per axis', () => {
    const rect = { left: 0, top: 0, width: 800, height: 300 };
    const point = displayToCanvas(400, 150, rect, 400, 300);
    expect(point.x).toBeCloseTo(200, 9);
    expect(point.y).toBeCloseTo(150, 9);
  });
});

describe('candidate tints', () => {
  it('gives distinct colours to the first candidates', () => {
    expect(tintFor(0)).not.toBe(tintFor(1));
    expect(new Set(MASK_TINTS).size).toBe(MASK_TINTS.length);
  });

  it('cycles beyond the palette', () => {
    expect(tintFor(MASK_TINTS.length)).toBe(tintFor(0));
  });
});
