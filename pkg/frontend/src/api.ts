/** Thin typed client for the scaffoldviz HTTP API. */

import type {
  DatasetSummary,
  GeometryPayload,
  PlotConfigPayload,
  PlotRect,
  ReportPayload,
  SelectResult,
  SeparatorPayload,
  SplitResult,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      detail = typeof body.detail === "string" ? body.detail : JSON.stringify(body);
    } catch {
      // keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class WorkbenchClient {
  constructor(private readonly base: string) {}

  dataset(): Promise<DatasetSummary> {
    return request(`${this.base}/api/dataset`);
  }

  plots(): Promise<Record<string, PlotConfigPayload>> {
    return request(`${this.base}/api/plots`);
  }

  plotConfig(plot: string): Promise<PlotConfigPayload> {
    return request(`${this.base}/api/plots/${plot}/config`);
  }

  putPlotConfig(plot: string, config: PlotConfigPayload): Promise<PlotConfigPayload> {
    return request(`${this.base}/api/plots/${plot}/config`, {
      method: "PUT",
      body: JSON.stringify(config),
    });
  }

  geometry(plot: string, withHyperblocks = false): Promise<GeometryPayload> {
    const suffix = withHyperblocks ? "?hyperblocks=true" : "";
    return request(`${this.base}/api/plots/${plot}/geometry${suffix}`);
  }

  putSeparators(plot: string, separators: SeparatorPayload[]): Promise<PlotConfigPayload> {
    return request(`${this.base}/api/plots/${plot}/separators`, {
      method: "PUT",
      body: JSON.stringify(separators),
    });
  }

  select(plot: string, rect: PlotRect, mode = "bounding"): Promise<SelectResult> {
    return request(`${this.base}/api/plots/${plot}/select`, {
      method: "POST",
      body: JSON.stringify({ rect: [rect.x0, rect.y0, rect.x1, rect.y1], mode }),
    });
  }

  addBox(plot: string, rect: PlotRect, mode = "bounding"): Promise<{ n_boxes: number }> {
    return request(`${this.base}/api/boxes`, {
      method: "POST",
      body: JSON.stringify({ plot, rect: [rect.x0, rect.y0, rect.x1, rect.y1], mode }),
    });
  }

  split(plot: string, fraction = 0.1, seed = 0): Promise<SplitResult> {
    return request(`${this.base}/api/splits`, {
      method: "POST",
      body: JSON.stringify({ plot, fraction, seed }),
    });
  }

  experiment(
    specs: Record<string, unknown>[],
    k: number,
    seed: number,
    splitIndex: number,
  ): Promise<ReportPayload> {
    return request(`${this.base}/api/experiments`, {
      method: "POST",
      body: JSON.stringify({ specs, k, seed, split_index: splitIndex }),
    });
  }
}
