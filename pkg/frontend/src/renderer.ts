/**
 * Canvas painting of a geometry payload. The renderer draws exactly the
 * vertices the server sent, converted through one CanvasTransform; it
 * performs no geometric computation of its own.
 */

import { CanvasTransform, toCanvas } from "./transform.js";
import type { GeometryPayload, PlotRect } from "./types.js";
import type { LayerToggles } from "./state.js";

export const CLASS_PALETTE = [
  "#e41a1c",
  "#4daf4a",
  "#377eb8",
  "#ff7f00",
  "#984ea3",
  "#a65628",
  "#f781bf",
  "#999999",
];

/** The subset of CanvasRenderingContext2D the renderer needs. */
export interface PaintingContext {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  setLineDash(segments: number[]): void;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  globalAlpha: number;
}

export interface RenderStats {
  polylines: number;
  bands: number;
  boxes: number;
}

export function classColors(classes: string[]): Map<string, string> {
  const colors = new Map<string, string>();
  classes.forEach((label, i) => {
    colors.set(label, CLASS_PALETTE[i % CLASS_PALETTE.length]);
  });
  return colors;
}

function paintPath(
  ctx: PaintingContext,
  t: CanvasTransform,
  vertices: [number, number][],
): void {
  ctx.beginPath();
  vertices.forEach(([x, y], i) => {
    const [px, py] = toCanvas(t, x, y);
    if (i === 0) {
      ctx.moveTo(px, py);
    } else {
      ctx.lineTo(px, py);
    }
  });
  ctx.stroke();
}

function paintRect(ctx: PaintingContext, t: CanvasTransform, rect: PlotRect): void {
  const [x0, y0] = toCanvas(t, rect.x0, rect.y0);
  const [x1, y1] = toCanvas(t, rect.x1, rect.y1);
  ctx.strokeRect(
    Math.min(x0, x1),
    Math.min(y0, y1),
    Math.abs(x1 - x0),
    Math.abs(y1 - y0),
  );
}

export function renderPlotView(
  ctx: PaintingContext,
  t: CanvasTransform,
  geometry: GeometryPayload,
  classes: string[],
  layers: LayerToggles,
  width: number,
  height: number,
  drawnBoxes: PlotRect[] = [],
): RenderStats {
  ctx.clearRect(0, 0, width, height);
  const colors = classColors(classes);
  const stats: RenderStats = { polylines: 0, bands: 0, boxes: 0 };

  if (layers.samples) {
    ctx.lineWidth = 1;
    ctx.globalAlpha = 0.7;
    ctx.setLineDash([]);
    const order = new Map(classes.map((label, i) => [label, i]));
    const lines = [...geometry.polylines].sort(
      (a, b) =>
        (order.get(a.class_label) ?? 0) - (order.get(b.class_label) ?? 0) ||
        a.sample_id - b.sample_id,
    );
    for (const line of lines) {
      ctx.strokeStyle = colors.get(line.class_label) ?? "#555555";
      paintPath(ctx, t, line.vertices);
      stats.polylines += 1;
    }
  }

  if (layers.hbBands) {
    ctx.globalAlpha = 1.0;
    ctx.lineWidth = 2.5;
    ctx.setLineDash([]);
    for (const overlay of geometry.hb_overlays) {
      ctx.strokeStyle = colors.get(overlay.class_label) ?? "#555555";
      for (const band of [overlay.lower, overlay.upper]) {
        if (band.length > 0) {
          paintPath(ctx, t, band);
          stats.bands += 1;
        }
      }
      for (const [x0, y0, x1, y1] of overlay.boxes) {
        paintRect(ctx, t, { x0, y0, x1, y1 });
        stats.boxes += 1;
      }
    }
  }

  if (layers.boxes) {
    ctx.globalAlpha = 1.0;
    ctx.lineWidth = 1.5;
    ctx.strokeStyle = "#000000";
    ctx.setLineDash([4, 4]);
    for (const rect of drawnBoxes) {
      paintRect(ctx, t, rect);
      stats.boxes += 1;
    }
    ctx.setLineDash([]);
  }

  return stats;
}

/**
 * Separator guide line for the leading pair of a dsc2/spc plot: vertical
 * for the pair's x attribute, horizontal for its y attribute.
 */
export function separatorGuide(
  geometry: GeometryPayload,
  attribute: number,
  position: number,
): { vertical: boolean; at: number } | null {
  const order = geometry.config.attribute_order;
  if (order.length < 2) {
    return null;
  }
  const weight = geometry.config.pair_weights?.[0] ?? 1.0;
  if (attribute === order[0]) {
    return { vertical: true, at: weight * position };
  }
  if (attribute === order[1]) {
    return { vertical: false, at: weight * position };
  }
  return null;
}
