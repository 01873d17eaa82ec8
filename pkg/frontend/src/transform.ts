/**
 * Plot-plane <-> canvas-pixel conversion.
 *
 * Built from the server-provided bounding box so that a rectangle drawn
 * on the canvas converts to exactly the plot-plane rectangle the server
 * would select with; the UI never does its own extent estimation.
 */

import type { PlotRect } from "./types.js";

export interface CanvasTransform {
  scale: number;
  xOffset: number;
  yOffset: number;
  height: number;
}

export function fitTransform(
  bbox: [number, number, number, number],
  width: number,
  height: number,
  margin: number,
): CanvasTransform {
  const [xMin, yMin, xMax, yMax] = bbox;
  const spanX = Math.max(xMax - xMin, 1e-12);
  const spanY = Math.max(yMax - yMin, 1e-12);
  const innerW = width - 2 * margin;
  const innerH = height - 2 * margin;
  const scale = Math.min(innerW / spanX, innerH / spanY);
  return {
    scale,
    xOffset: margin + (innerW - scale * spanX) / 2 - scale * xMin,
    yOffset: margin + (innerH - scale * spanY) / 2 - scale * yMin,
    height,
  };
}

/** Plot-plane point to canvas pixels (y axis flipped). */
export function toCanvas(t: CanvasTransform, x: number, y: number): [number, number] {
  return [t.xOffset + t.scale * x, t.height - (t.yOffset + t.scale * y)];
}

/** Canvas pixels back to the plot plane. */
export function toPlot(t: CanvasTransform, px: number, py: number): [number, number] {
  return [(px - t.xOffset) / t.scale, (t.height - py - t.yOffset) / t.scale];
}

/** Convert a dragged canvas rectangle into an ordered plot-plane rect. */
export function canvasRectToPlot(
  t: CanvasTransform,
  ax: number,
  ay: number,
  bx: number,
  by: number,
): PlotRect {
  const [x0, y0] = toPlot(t, ax, ay);
  const [x1, y1] = toPlot(t, bx, by);
  return {
    x0: Math.min(x0, x1),
    y0: Math.min(y0, y1),
    x1: Math.max(x0, x1),
    y1: Math.max(y0, y1),
  };
}
