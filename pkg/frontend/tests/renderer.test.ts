import { describe, expect, it } from "vitest";

import { fitTransform } from "../src/transform.js";
import {
  PaintingContext,
  classColors,
  renderPlotView,
  separatorGuide,
} from "../src/renderer.js";
import type { GeometryPayload } from "../src/types.js";

class RecordingContext implements PaintingContext {
  strokes = 0;
  rects = 0;
  strokeColors: string[] = [];
  strokeStyle: string = "#000";
  lineWidth = 1;
  globalAlpha = 1;

  clearRect(): void {}
  beginPath(): void {}
  moveTo(): void {}
  lineTo(): void {}
  setLineDash(): void {}
  stroke(): void {
    this.strokes += 1;
    this.strokeColors.push(String(this.strokeStyle));
  }
  strokeRect(): void {
    this.rects += 1;
  }
}

function payload(nLines: number, nOverlays: number): GeometryPayload {
  const classes = ["a", "b", "c"];
  return {
    system: "dsc2",
    n_attributes: 4,
    config: {
      system: "dsc2",
      attribute_order: [3, 0, 1, 2],
      first_angle: -10,
      rest_angle: -45,
      pair_weights: [0.9, 0.1],
      nonlinear: [],
    },
    scaffold: {},
    polylines: Array.from({ length: nLines }, (_, i) => ({
      sample_id: i,
      class_label: classes[i % 3],
      vertices: [
        [0, 0],
        [0.1 + i * 0.001, 0.2],
        [0.3, 0.4 + i * 0.001],
      ] as [number, number][],
    })),
    hb_overlays: Array.from({ length: nOverlays }, (_, i) => ({
      block_index: i,
      class_label: classes[i % 3],
      lower: [
        [0, 0],
        [0.1, 0.1],
      ] as [number, number][],
      upper: [
        [0.5, 0.5],
        [0.9, 0.9],
      ] as [number, number][],
      boxes: [[0.1, 0.1, 0.9, 0.9]] as [number, number, number, number][],
    })),
    bounding_box: [0, 0, 1, 1],
  };
}

const LAYERS = { samples: true, hbBands: true, separators: true, boxes: true };

describe("renderPlotView", () => {
  it("draws one visual polyline per payload polyline", () => {
    const ctx = new RecordingContext();
    const t = fitTransform([0, 0, 1, 1], 960, 640, 40);
    const stats = renderPlotView(ctx, t, payload(150, 0), ["a", "b", "c"], LAYERS, 960, 640);
    expect(stats.polylines).toBe(150);
    expect(new Set(ctx.strokeColors).size).toBe(3);
  });

  it("bands-only mode draws two band strokes per block and no samples", () => {
    const ctx = new RecordingContext();
    const t = fitTransform([0, 0, 1, 1], 960, 640, 40);
    const stats = renderPlotView(
      ctx,
      t,
      payload(150, 4),
      ["a", "b", "c"],
      { samples: false, hbBands: true, separators: true, boxes: true },
      960,
      640,
    );
    expect(stats.polylines).toBe(0);
    expect(stats.bands).toBe(8);
  });

  it("empty layer toggles leave a blank canvas", () => {
    const ctx = new RecordingContext();
    const t = fitTransform([0, 0, 1, 1], 960, 640, 40);
    const stats = renderPlotView(
      ctx,
      t,
      payload(20, 2),
      ["a", "b", "c"],
      { samples: false, hbBands: false, separators: false, boxes: false },
      960,
      640,
    );
    expect(stats).toEqual({ polylines: 0, bands: 0, boxes: 0 });
    expect(ctx.strokes).toBe(0);
    expect(ctx.rects).toBe(0);
  });

  it("draws pending selection boxes", () => {
    const ctx = new RecordingContext();
    const t = fitTransform([0, 0, 1, 1], 960, 640, 40);
    const stats = renderPlotView(
      ctx,
      t,
      payload(1, 0),
      ["a", "b", "c"],
      LAYERS,
      960,
      640,
      [{ x0: 0.1, y0: 0.1, x1: 0.4, y1: 0.4 }],
    );
    expect(stats.boxes).toBe(1);
    expect(ctx.rects).toBe(1);
  });
});

describe("classColors", () => {
  it("assigns palette colors in class order", () => {
    const colors = classColors(["x", "y"]);
    expect(colors.get("x")).toBe("#e41a1c");
    expect(colors.get("y")).toBe("#4daf4a");
  });
});

describe("separatorGuide", () => {
  it("is vertical for the leading pair x attribute, scaled by the weight", () => {
    const guide = separatorGuide(payload(1, 0), 3, 0.17);
    expect(guide).toEqual({ vertical: true, at: 0.9 * 0.17 });
  });

  it("is horizontal for the leading pair y attribute", () => {
    const guide = separatorGuide(payload(1, 0), 0, 0.67);
    expect(guide).toEqual({ vertical: false, at: 0.9 * 0.67 });
  });

  it("is null for attributes outside the leading pair", () => {
    expect(separatorGuide(payload(1, 0), 1, 0.5)).toBeNull();
  });
});
