/**
 * Browser bootstrap: wires the canvas, the separator slider, box drawing,
 * and the split/experiment buttons to the Workbench orchestrator.
 */

import { WorkbenchClient } from "./api.js";
import { fitTransform, canvasRectToPlot, CanvasTransform } from "./transform.js";
import { renderPlotView } from "./renderer.js";
import { Workbench, WorkbenchView, formatReport } from "./workbench.js";
import type { GeometryPayload, ReportPayload } from "./types.js";
import type { ViewState } from "./state.js";

const WIDTH = 960;
const HEIGHT = 640;
const MARGIN = 40;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function bootstrap(): void {
  const canvas = el<HTMLCanvasElement>("plot");
  canvas.width = WIDTH;
  canvas.height = HEIGHT;
  const ctx = canvas.getContext("2d");
  if (!ctx) {
    throw new Error("canvas 2d context unavailable");
  }
  const statusLine = el<HTMLDivElement>("status");
  const reportPre = el<HTMLPreElement>("report");
  const client = new WorkbenchClient("");

  let transform: CanvasTransform | null = null;
  let classes: string[] = [];

  const view: WorkbenchView = {
    render(geometry: GeometryPayload, state: ViewState): void {
      transform = fitTransform(geometry.bounding_box, WIDTH, HEIGHT, MARGIN);
      renderPlotView(
        ctx as unknown as import("./renderer.js").PaintingContext,
        transform,
        geometry,
        classes,
        state.layers,
        WIDTH,
        HEIGHT,
        state.drawnBoxes,
      );
    },
    status(message: string): void {
      statusLine.textContent = message;
    },
    report(report: ReportPayload): void {
      reportPre.textContent = formatReport(report);
    },
  };

  const workbench = new Workbench(client, view, "overlap");

  client
    .dataset()
    .then((summary) => {
      classes = summary.classes;
      el<HTMLDivElement>("dataset").textContent =
        `${summary.name}: ${summary.n_samples} samples, ` +
        `${summary.attributes.length} attributes, classes ${summary.classes.join(", ")}`;
      return workbench.load(true);
    })
    .catch((error) => view.status(String(error)));

  // box drawing: drag with the mouse, selection count comes from the server
  let dragStart: [number, number] | null = null;
  canvas.addEventListener("mousedown", (event) => {
    dragStart = [event.offsetX, event.offsetY];
  });
  canvas.addEventListener("mouseup", (event) => {
    if (!dragStart || !transform) {
      return;
    }
    const rect = canvasRectToPlot(
      transform,
      dragStart[0],
      dragStart[1],
      event.offsetX,
      event.offsetY,
    );
    dragStart = null;
    if (rect.x1 - rect.x0 > 1e-9 && rect.y1 - rect.y0 > 1e-9) {
      void workbench.drawBox(rect);
    }
  });

  const slider = el<HTMLInputElement>("separator");
  const sliderValue = el<HTMLSpanElement>("separator-value");
  slider.addEventListener("change", () => {
    const position = Number(slider.value);
    sliderValue.textContent = position.toFixed(3);
    const attribute = workbench.state.config?.attribute_order[0] ?? 0;
    void workbench.dragSeparator(attribute, position);
  });

  // attribute reordering: comma-separated indices, applied via config PUT
  const orderInput = el<HTMLInputElement>("order");
  el<HTMLButtonElement>("order-button").addEventListener("click", () => {
    const config = workbench.state.config;
    if (!config) {
      return;
    }
    const order = orderInput.value
      .split(",")
      .map((token) => Number(token.trim()))
      .filter((n) => Number.isInteger(n) && n >= 0);
    if (order.length === 0) {
      view.status("cannot parse the attribute order");
      return;
    }
    client
      .putPlotConfig(workbench.state.plotName, { ...config, attribute_order: order })
      .then(() => workbench.load(true))
      .catch((error) => view.status(`reorder rejected: ${error}`));
  });

  el<HTMLButtonElement>("split-button").addEventListener("click", () => {
    void workbench.requestSplit(0.1, 7);
  });
  el<HTMLButtonElement>("experiment-button").addEventListener("click", () => {
    void workbench
      .runExperiment(
        [
          { kind: "decision-tree", max_depth: null },
          { kind: "knn", k: 5 },
          { kind: "gaussian-nb" },
        ],
        10,
        7,
      )
      .catch((error) => view.status(String(error)));
  });
}

window.addEventListener("DOMContentLoaded", bootstrap);
