/**
 * View state: the active plot configuration mirror, transient drag state,
 * layer toggles, and the last experiment report. Everything here is
 * reconstructible from the server project plus the transient drag, so a
 * reload loses nothing but an unfinished gesture.
 */

import type {
  GeometryPayload,
  PlotConfigPayload,
  PlotRect,
  ReportPayload,
} from "./types.js";

export interface LayerToggles {
  samples: boolean;
  hbBands: boolean;
  separators: boolean;
  boxes: boolean;
}

export interface SeparatorDrag {
  attribute: number;
  position: number; // live position while dragging, plot units in (0, 1)
  target: number;
}

export interface BoxDrag {
  startX: number;
  startY: number;
  currentX: number;
  currentY: number;
}

export interface ViewState {
  plotName: string;
  config: PlotConfigPayload | null;
  geometry: GeometryPayload | null;
  layers: LayerToggles;
  separatorDrag: SeparatorDrag | null;
  boxDrag: BoxDrag | null;
  drawnBoxes: PlotRect[];
  lastSelectionCount: number | null;
  lastSplitIndex: number | null;
  lastReport: ReportPayload | null;
  warning: string | null;
}

export function initialState(plotName: string): ViewState {
  return {
    plotName,
    config: null,
    geometry: null,
    layers: { samples: true, hbBands: true, separators: true, boxes: true },
    separatorDrag: null,
    boxDrag: null,
    drawnBoxes: [],
    lastSelectionCount: null,
    lastSplitIndex: null,
    lastReport: null,
    warning: null,
  };
}

const POSITION_EPSILON = 1e-3;

/**
 * Clamp a dragged separator position into the open unit interval. Returns
 * the clamped value and whether clamping occurred (shown as a warning).
 */
export function clampSeparatorPosition(position: number): {
  position: number;
  clamped: boolean;
} {
  if (position <= 0 || position >= 1) {
    return {
      position: Math.min(1 - POSITION_EPSILON, Math.max(POSITION_EPSILON, position)),
      clamped: true,
    };
  }
  return { position, clamped: false };
}

/** The separator list the server should hold after a drag commits. */
export function separatorsAfterDrag(
  config: PlotConfigPayload,
  drag: SeparatorDrag,
): { attribute: number; position: number; target: number }[] {
  const kept = config.nonlinear
    .filter(([attr]) => attr !== drag.attribute)
    .map(([attribute, position, target]) => ({ attribute, position, target }));
  kept.push({ attribute: drag.attribute, position: drag.position, target: drag.target });
  kept.sort((a, b) => a.attribute - b.attribute);
  return kept;
}

/** True when a drag would not change the server-side configuration. */
export function dragIsNoop(config: PlotConfigPayload, drag: SeparatorDrag): boolean {
  return config.nonlinear.some(
    ([attribute, position, target]) =>
      attribute === drag.attribute &&
      position === drag.position &&
      target === drag.target,
  );
}
