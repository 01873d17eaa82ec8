/**
 * Orchestration of the workbench: every user action round-trips through
 * the HTTP API and re-renders from the server's response. No
 * classification or geometry math happens on this side; displayed numbers
 * all originate from server payloads.
 */

import { WorkbenchClient, ApiError } from "./api.js";
import {
  ViewState,
  initialState,
  clampSeparatorPosition,
  separatorsAfterDrag,
  dragIsNoop,
} from "./state.js";
import type { GeometryPayload, PlotRect, ReportPayload } from "./types.js";

export interface WorkbenchView {
  /** Repaint with a fresh geometry payload. */
  render(geometry: GeometryPayload, state: ViewState): void;
  /** Surface a status or warning line (selection counts, clamps, errors). */
  status(message: string): void;
  /** Show the experiment report table. */
  report(report: ReportPayload): void;
}

export class Workbench {
  state: ViewState;

  constructor(
    private readonly client: WorkbenchClient,
    private readonly view: WorkbenchView,
    plotName: string,
  ) {
    this.state = initialState(plotName);
  }

  async load(withHyperblocks = false): Promise<void> {
    this.state.config = await this.client.plotConfig(this.state.plotName);
    this.state.geometry = await this.client.geometry(
      this.state.plotName,
      withHyperblocks,
    );
    this.view.render(this.state.geometry, this.state);
  }

  /**
   * Commit a separator drag: clamp into (0, 1), skip the round trip when
   * nothing changed, otherwise PUT and refetch. A server rejection keeps
   * the previous state and surfaces the reason.
   */
  async dragSeparator(
    attribute: number,
    position: number,
    target = 0.5,
  ): Promise<GeometryPayload | null> {
    if (!this.state.config || !this.state.geometry) {
      throw new Error("workbench not loaded");
    }
    const clamp = clampSeparatorPosition(position);
    if (clamp.clamped) {
      this.state.warning = `separator position clamped to ${clamp.position.toFixed(3)}`;
      this.view.status(this.state.warning);
    }
    const drag = { attribute, position: clamp.position, target };
    if (dragIsNoop(this.state.config, drag)) {
      this.view.status(
        `separator on attribute ${attribute} unchanged at ${drag.position.toFixed(3)}`,
      );
      return null;
    }
    const previousConfig = this.state.config;
    const previousGeometry = this.state.geometry;
    try {
      this.state.config = await this.client.putSeparators(
        this.state.plotName,
        separatorsAfterDrag(this.state.config, drag),
      );
      this.state.geometry = await this.client.geometry(this.state.plotName);
    } catch (error) {
      this.state.config = previousConfig;
      this.state.geometry = previousGeometry;
      const reason = error instanceof ApiError ? error.message : String(error);
      this.view.status(`separator rejected: ${reason}`);
      return null;
    }
    this.view.status(
      `separator on attribute ${attribute} at ${drag.position.toFixed(3)}`,
    );
    this.view.render(this.state.geometry, this.state);
    return this.state.geometry;
  }

  /** Select samples under a drawn plot-plane rectangle and show the count. */
  async drawBox(rect: PlotRect, mode = "bounding"): Promise<number> {
    const result = await this.client.select(this.state.plotName, rect, mode);
    this.state.drawnBoxes.push(rect);
    this.state.lastSelectionCount = result.count;
    this.view.status(`${result.count} samples selected`);
    if (result.count === 0) {
      this.view.status("empty selection; adjust the box");
    }
    return result.count;
  }

  /** Persist drawn boxes and build a worst-case split from them. */
  async requestSplit(fraction = 0.1, seed = 0): Promise<number> {
    for (const rect of this.state.drawnBoxes) {
      await this.client.addBox(this.state.plotName, rect);
    }
    this.state.drawnBoxes = [];
    const split = await this.client.split(this.state.plotName, fraction, seed);
    this.state.lastSplitIndex = split.split_index;
    this.view.status(
      `split ${split.split_index}: ${split.validation_size} validation samples`,
    );
    return split.split_index;
  }

  async runExperiment(
    specs: Record<string, unknown>[],
    k = 10,
    seed = 0,
  ): Promise<ReportPayload> {
    if (this.state.lastSplitIndex === null) {
      throw new Error("no split yet; draw a box and request a split first");
    }
    const report = await this.client.experiment(
      specs,
      k,
      seed,
      this.state.lastSplitIndex,
    );
    this.state.lastReport = report;
    this.view.report(report);
    return report;
  }
}

/** Plain-text report table (also used by the DOM layer). */
export function formatReport(report: ReportPayload): string {
  const header = "classifier     cv avg  cv max  cv min   worst";
  const lines = report.rows.map(
    (r) =>
      `${r.classifier.padEnd(14)} ${r.cv_average.toFixed(1).padStart(6)} ` +
      `${r.cv_max.toFixed(1).padStart(7)} ${r.cv_min.toFixed(1).padStart(7)} ` +
      `${r.worst_split_accuracy.toFixed(1).padStart(7)}`,
  );
  return [header, ...lines].join("\n");
}
