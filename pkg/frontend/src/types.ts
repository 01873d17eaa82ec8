/** Payload shapes served by the scaffoldviz HTTP API. */

export interface DatasetSummary {
  name: string;
  n_samples: number;
  classes: string[];
  class_counts: Record<string, number>;
  attributes: { index: number; name: string; min: number; max: number }[];
}

export interface PlotConfigPayload {
  system: string;
  attribute_order: number[];
  first_angle: number;
  rest_angle: number;
  pair_weights: number[] | null;
  nonlinear: [number, number, number][];
}

export interface PolylinePayload {
  sample_id: number;
  class_label: string;
  vertices: [number, number][];
}

export interface OverlayPayload {
  block_index: number;
  class_label: string;
  lower: [number, number][];
  upper: [number, number][];
  boxes: [number, number, number, number][];
}

export interface GeometryPayload {
  system: string;
  n_attributes: number;
  config: PlotConfigPayload;
  scaffold: Record<string, unknown>;
  polylines: PolylinePayload[];
  hb_overlays: OverlayPayload[];
  bounding_box: [number, number, number, number];
}

export interface SelectResult {
  ids: number[];
  count: number;
}

export interface SplitResult {
  split_index: number;
  validation_size: number;
  validation_ids: number[];
}

export interface ReportRowPayload {
  classifier: string;
  cv_average: number;
  cv_max: number;
  cv_min: number;
  worst_split_accuracy: number;
}

export interface ReportPayload {
  dataset: string;
  k: number;
  seed: number;
  validation_size: number;
  rows: ReportRowPayload[];
}

export interface SeparatorPayload {
  attribute: number;
  position: number;
  target: number;
}

/** Rectangle in plot-plane coordinates. */
export interface PlotRect {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}
