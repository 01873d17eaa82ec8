"""HTTP/JSON service exposing one project to the workbench UI.

Reads work against an immutable project snapshot; mutations (plot config
changes, separators, boxes, splits, experiments, project replacement)
serialize through a single writer lock and swap the snapshot atomically.
"""

from __future__ import annotations

import threading
from dataclasses import replace
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .classifiers import ClassifierSpec, DecisionTree
from .evaluation import run_experiment
from .geometry import ConfigError, PlotConfig, map_plot
from .hyperblocks import extract_hyperblocks, purity_table
from .project import (
    BoxRef,
    Project,
    ProjectError,
    load_project,
    with_box,
    with_report,
    with_split,
)
from .splits import SelectionBox, box_select, build_worst_split, default_mode


class PlotConfigBody(BaseModel):
    system: str
    attribute_order: list[int]
    first_angle: float = -10.0
    rest_angle: float = -45.0
    pair_weights: list[float] | None = None
    nonlinear: list[list[float]] = Field(default_factory=list)


class SeparatorBody(BaseModel):
    attribute: int
    position: float
    target: float = 0.5


class SelectBody(BaseModel):
    rect: list[float]
    mode: str | None = None  # default depends on the plot system


class BoxBody(BaseModel):
    plot: str
    rect: list[float]
    mode: str | None = None


class SplitBody(BaseModel):
    plot: str
    fraction: float = 0.10
    seed: int = 0
    per_box_cap: int | None = None


class ExperimentBody(BaseModel):
    specs: list[dict]
    k: int = 10
    seed: int = 0
    split_index: int = 0


def hyperblocks_for(project: Project):
    data = project.dataset
    tree = DecisionTree(max_depth=project.hyperblock_max_depth).fit(
        data.scaled_matrix(), data.label_indices(), n_classes=len(data.classes)
    )
    return extract_hyperblocks(tree, data)


def create_app(project: Project, project_path: "str | Path | None" = None) -> FastAPI:
    app = FastAPI(title="scaffoldviz", docs_url=None, redoc_url=None)
    state: dict[str, Any] = {"project": project}
    base_dir = Path(project_path).resolve().parent if project_path else Path.cwd()
    write_lock = threading.Lock()

    @app.exception_handler(Exception)
    async def internal_error(_request, _exc) -> JSONResponse:
        # never leak internal details
        return JSONResponse(status_code=500, content={"error": "internal error"})

    def current() -> Project:
        return state["project"]

    def get_plot_config(name: str) -> PlotConfig:
        config = current().plots.get(name)
        if config is None:
            raise HTTPException(status_code=404, detail=f"unknown plot {name!r}")
        return config

    def build_config(body: PlotConfigBody, old: PlotConfig | None = None) -> PlotConfig:
        try:
            return PlotConfig(
                system=body.system,
                attribute_order=tuple(body.attribute_order),
                first_angle=body.first_angle,
                rest_angle=body.rest_angle,
                pair_weights=tuple(body.pair_weights) if body.pair_weights else None,
                nonlinear=tuple(
                    (int(a), float(s), float(t)) for a, s, t in body.nonlinear
                ),
                ngon_vertices=old.ngon_vertices if old else (),
                circumradius=old.circumradius if old else 1.0,
            )
        except (ConfigError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.get("/api/dataset")
    def dataset_summary() -> dict:
        data = current().dataset
        return {
            "name": data.name,
            "n_samples": len(data),
            "classes": list(data.classes),
            "class_counts": data.class_counts(),
            "attributes": [
                {"index": i, "name": a.name, "min": a.minimum, "max": a.maximum}
                for i, a in enumerate(data.attributes)
            ],
        }

    @app.get("/api/plots")
    def list_plots() -> dict:
        return {name: cfg.to_dict() for name, cfg in current().plots.items()}

    @app.get("/api/plots/{name}/config")
    def plot_config(name: str) -> dict:
        return get_plot_config(name).to_dict()

    @app.put("/api/plots/{name}/config")
    def put_plot_config(name: str, body: PlotConfigBody) -> dict:
        config = build_config(body, current().plots.get(name))
        with write_lock:
            project = current()
            plots = dict(project.plots)
            plots[name] = config
            state["project"] = replace(project, plots=plots)
        return config.to_dict()

    @app.get("/api/plots/{name}/geometry")
    def plot_geometry(name: str, hyperblocks: bool = False) -> dict:
        config = get_plot_config(name)
        project = current()
        hbs = hyperblocks_for(project) if hyperblocks else None
        try:
            geometry = map_plot(project.dataset, config, hbs)
        except (ConfigError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        payload = geometry.to_dict()
        payload["bounding_box"] = list(geometry.bounding_box())
        return payload

    @app.put("/api/plots/{name}/separators")
    def put_separators(name: str, body: list[SeparatorBody]) -> dict:
        config = get_plot_config(name)
        try:
            new_config = replace(
                config,
                nonlinear=tuple((s.attribute, s.position, s.target) for s in body),
            )
        except (ConfigError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        with write_lock:
            project = current()
            plots = dict(project.plots)
            plots[name] = new_config
            state["project"] = replace(project, plots=plots)
        return new_config.to_dict()

    @app.get("/api/hyperblocks")
    def hyperblocks_endpoint() -> dict:
        project = current()
        hbs = hyperblocks_for(project)
        rows = purity_table(hbs)
        return {
            "n_blocks": len(hbs),
            "blocks": [
                {
                    "intervals": [list(iv) for iv in b.intervals],
                    "n_samples": b.n_samples,
                    "majority_class": b.majority_class,
                    "purity": b.purity,
                    "member_ids": list(b.member_ids),
                }
                for b in hbs.blocks
            ],
            "table": [
                {
                    "block": r.block_index,
                    "samples": r.sample_count,
                    "pct_of_dataset": r.pct_of_dataset,
                    "purity_pct": r.purity_pct,
                    "majority_class": r.majority_class,
                    "pct_of_majority_class": r.pct_of_majority_class,
                }
                for r in rows
            ],
        }

    @app.post("/api/plots/{name}/select")
    def select(name: str, body: SelectBody) -> dict:
        config = get_plot_config(name)
        if len(body.rect) != 4:
            raise HTTPException(status_code=422, detail="rect needs 4 numbers")
        try:
            mode = body.mode or default_mode(config.system)
            box = SelectionBox(*body.rect, mode=mode)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        geometry = map_plot(current().dataset, config)
        ids = box_select(geometry, box)
        return {"ids": list(ids), "count": len(ids), "mode": mode}

    @app.post("/api/boxes")
    def add_box(body: BoxBody) -> dict:
        config = get_plot_config(body.plot)
        if len(body.rect) != 4:
            raise HTTPException(status_code=422, detail="rect needs 4 numbers")
        try:
            mode = body.mode or default_mode(config.system)
            ref = BoxRef(plot=body.plot, box=SelectionBox(*body.rect, mode=mode))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        with write_lock:
            state["project"] = with_box(current(), ref)
        return {"n_boxes": len(current().boxes)}

    @app.post("/api/splits")
    def make_split(body: SplitBody) -> dict:
        project = current()
        config = project.plots.get(body.plot)
        if config is None:
            raise HTTPException(status_code=404, detail=f"unknown plot {body.plot!r}")
        geometry = map_plot(project.dataset, config)
        selections = [
            box_select(geometry, ref.box)
            for ref in project.boxes
            if ref.plot == body.plot
        ]
        if not selections:
            raise HTTPException(
                status_code=422, detail="project has no boxes on that plot"
            )
        try:
            split = build_worst_split(
                project.dataset,
                selections,
                target_fraction=body.fraction,
                seed=body.seed,
                per_box_cap=body.per_box_cap,
            )
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        with write_lock:
            state["project"] = with_split(current(), split)
        return {
            "split_index": len(current().splits) - 1,
            "validation_size": len(split.validation_ids),
            "validation_ids": list(split.validation_ids),
        }

    @app.post("/api/experiments")
    def run_experiment_endpoint(body: ExperimentBody) -> dict:
        project = current()
        if not 0 <= body.split_index < len(project.splits):
            raise HTTPException(
                status_code=422, detail=f"split {body.split_index} does not exist"
            )
        try:
            specs = [ClassifierSpec.from_dict(s) for s in body.specs]
        except (TypeError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        report = run_experiment(
            specs,
            project.dataset,
            project.splits[body.split_index],
            k=body.k,
            seed=body.seed,
        )
        with write_lock:
            state["project"] = with_report(current(), report.to_dict())
        return report.to_dict()

    @app.get("/api/project")
    def get_project() -> dict:
        return current().to_dict()

    @app.put("/api/project")
    def put_project(body: dict) -> dict:
        import json
        import tempfile

        try:
            with tempfile.NamedTemporaryFile(
                "w", suffix=".json", dir=base_dir, delete=False
            ) as fh:
                json.dump(body, fh)
                temp_path = Path(fh.name)
            try:
                new_project = load_project(temp_path)
            finally:
                temp_path.unlink(missing_ok=True)
        except (ProjectError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        with write_lock:
            state["project"] = new_project
        return new_project.to_dict()

    return app


def serve(project: Project, port: int = 8650, host: str = "127.0.0.1",
          project_path: "str | Path | None" = None) -> None:
    import uvicorn

    uvicorn.run(
        create_app(project, project_path), host=host, port=port, log_level="warning"
    )
