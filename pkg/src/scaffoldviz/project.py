"""Project files: one JSON document tying together a dataset, plot
configurations, selection boxes, splits, experiment configs, and reports.

The dataset itself stays in its CSV file; the project stores a path
relative to the project file so a project directory can be moved around.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .classifiers import ClassifierSpec
from .data import Dataset, load_dataset
from .geometry import PlotConfig
from .rules import RuleSeries
from .splits import SelectionBox, WorstSplit

SCHEMA_VERSION = 1


class ProjectError(ValueError):
    pass


@dataclass(frozen=True)
class BoxRef:
    plot: str
    box: SelectionBox

    def to_dict(self) -> dict:
        return {
            "plot": self.plot,
            "rect": list(self.box.as_tuple()),
            "mode": self.box.mode,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoxRef":
        x0, y0, x1, y1 = d["rect"]
        return cls(plot=d["plot"], box=SelectionBox(x0, y0, x1, y1, mode=d["mode"]))


@dataclass(frozen=True)
class ExperimentConfig:
    specs: tuple[ClassifierSpec, ...]
    k: int = 10
    seed: int = 0
    split_index: int = 0

    def to_dict(self) -> dict:
        return {
            "specs": [s.to_dict() for s in self.specs],
            "k": self.k,
            "seed": self.seed,
            "split_index": self.split_index,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        return cls(
            specs=tuple(ClassifierSpec.from_dict(s) for s in d["specs"]),
            k=d["k"],
            seed=d["seed"],
            split_index=d.get("split_index", 0),
        )


@dataclass(frozen=True)
class Project:
    dataset: Dataset
    dataset_path: str
    class_column: str = "class"
    plots: dict = field(default_factory=dict)  # name -> PlotConfig
    hyperblock_max_depth: int | None = 3
    rule_series: RuleSeries | None = None
    boxes: tuple[BoxRef, ...] = ()
    splits: tuple[WorstSplit, ...] = ()
    experiments: tuple[ExperimentConfig, ...] = ()
    reports: tuple[dict, ...] = ()
    schema_version: int = SCHEMA_VERSION

    def validate(self) -> None:
        for ref in self.boxes:
            if ref.plot not in self.plots:
                raise ProjectError(f"box references unknown plot {ref.plot!r}")
        for exp in self.experiments:
            if exp.split_index < 0 or (
                self.splits and exp.split_index >= len(self.splits)
            ):
                # a pending split (no splits yet) is fine; the evaluate
                # command builds it from the project boxes first
                raise ProjectError(
                    f"experiment references split {exp.split_index}, "
                    f"project has {len(self.splits)}"
                )

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "dataset": {
                "path": self.dataset_path,
                "class_column": self.class_column,
                "name": self.dataset.name,
            },
            "plots": {name: cfg.to_dict() for name, cfg in self.plots.items()},
            "hyperblocks": {"max_depth": self.hyperblock_max_depth},
            "rule_series": self.rule_series.to_dict() if self.rule_series else None,
            "boxes": [ref.to_dict() for ref in self.boxes],
            "splits": [s.to_dict() for s in self.splits],
            "experiments": [e.to_dict() for e in self.experiments],
            "reports": list(self.reports),
        }


def save_project(project: Project, path: "str | Path") -> Path:
    path = Path(path)
    project.validate()
    path.write_text(json.dumps(project.to_dict(), indent=2, sort_keys=True) + "\n")
    return path


def load_project(path: "str | Path") -> Project:
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ProjectError(f"cannot read project {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ProjectError(f"malformed project file {path}: {exc}") from exc

    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ProjectError(
            f"project schema version {version} unsupported (expected {SCHEMA_VERSION})"
        )
    info = raw["dataset"]
    data_path = Path(info["path"])
    if not data_path.is_absolute():
        data_path = path.parent / data_path
    dataset = load_dataset(
        data_path, class_column=info.get("class_column", "class"), name=info.get("name")
    )
    project = Project(
        dataset=dataset,
        dataset_path=info["path"],
        class_column=info.get("class_column", "class"),
        plots={
            name: PlotConfig.from_dict(cfg) for name, cfg in raw.get("plots", {}).items()
        },
        hyperblock_max_depth=raw.get("hyperblocks", {}).get("max_depth", 3),
        rule_series=(
            RuleSeries.from_dict(raw["rule_series"]) if raw.get("rule_series") else None
        ),
        boxes=tuple(BoxRef.from_dict(b) for b in raw.get("boxes", ())),
        splits=tuple(WorstSplit.from_dict(s) for s in raw.get("splits", ())),
        experiments=tuple(
            ExperimentConfig.from_dict(e) for e in raw.get("experiments", ())
        ),
        reports=tuple(raw.get("reports", ())),
        schema_version=version,
    )
    project.validate()
    return project


def with_split(project: Project, split: WorstSplit) -> Project:
    return replace(project, splits=project.splits + (split,))


def with_report(project: Project, report: dict) -> Project:
    return replace(project, reports=project.reports + (report,))


def with_box(project: Project, ref: BoxRef) -> Project:
    return replace(project, boxes=project.boxes + (ref,))
