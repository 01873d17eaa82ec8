"""Stratified k-fold cross-validation and the worst-split experiment.

Accuracies are percentages. Fold assembly is seeded and stratified by
class so repeated runs with the same seed reproduce the report exactly.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

import numpy as np

from .classifiers import ClassifierSpec
from .data import Dataset
from .splits import WorstSplit


class EvaluationError(ValueError):
    pass


def stratified_folds(data: Dataset, k: int, seed: int) -> list[list[int]]:
    """k folds of sample ids; per-class sizes differ by at most one."""
    if k < 2:
        raise EvaluationError("k must be >= 2")
    if k > len(data):
        raise EvaluationError(f"k={k} exceeds dataset size {len(data)}")
    rng = random.Random(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    offset = 0
    for label in data.classes:
        ids = [s.id for s in data.samples if s.class_label == label]
        rng.shuffle(ids)
        for i, sample_id in enumerate(ids):
            folds[(offset + i) % k].append(sample_id)
        offset += len(ids)
    for fold in folds:
        fold.sort()
        if not fold:
            raise EvaluationError("a fold came out empty; reduce k")
    return folds


def _fit_eval(
    spec: ClassifierSpec,
    X: np.ndarray,
    y: np.ndarray,
    train_ids: list[int],
    test_ids: list[int],
    n_classes: int,
) -> float:
    model = spec.build()
    model.fit(X[train_ids], y[train_ids], n_classes=n_classes)
    predictions = model.predict(X[test_ids])
    return float(np.mean(predictions == y[test_ids]) * 100.0)


def kfold_cv(
    spec: ClassifierSpec, data: Dataset, k: int = 10, seed: int = 0
) -> tuple[float, float, float]:
    """(average, max, min) held-out accuracy over stratified folds."""
    X = data.scaled_matrix()
    y = data.label_indices()
    n_classes = len(data.classes)
    folds = stratified_folds(data, k, seed)
    all_ids = set(range(len(data)))
    scores = []
    for fold in folds:
        train_ids = sorted(all_ids - set(fold))
        scores.append(_fit_eval(spec, X, y, train_ids, fold, n_classes))
    return (
        float(np.mean(scores)),
        float(np.max(scores)),
        float(np.min(scores)),
    )


def worst_split_eval(spec: ClassifierSpec, data: Dataset, split: WorstSplit) -> float:
    """Accuracy on the validation side after training on the rest."""
    if not split.training_ids or not split.validation_ids:
        raise EvaluationError("both split sides must be non-empty")
    ids = sorted(split.training_ids + split.validation_ids)
    if ids != list(range(len(data))):
        raise EvaluationError("split does not partition the dataset")
    X = data.scaled_matrix()
    y = data.label_indices()
    return _fit_eval(
        spec,
        X,
        y,
        list(split.training_ids),
        list(split.validation_ids),
        len(data.classes),
    )


@dataclass(frozen=True)
class ReportRow:
    classifier: str
    cv_average: float
    cv_max: float
    cv_min: float
    worst_split_accuracy: float


@dataclass(frozen=True)
class ExperimentReport:
    rows: tuple[ReportRow, ...]
    k: int
    seed: int
    dataset_name: str
    validation_size: int

    def to_dict(self) -> dict:
        return {
            "dataset": self.dataset_name,
            "k": self.k,
            "seed": self.seed,
            "validation_size": self.validation_size,
            "rows": [
                {
                    "classifier": r.classifier,
                    "cv_average": round(r.cv_average, 4),
                    "cv_max": round(r.cv_max, 4),
                    "cv_min": round(r.cv_min, 4),
                    "worst_split_accuracy": round(r.worst_split_accuracy, 4),
                }
                for r in self.rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentReport":
        return cls(
            rows=tuple(
                ReportRow(
                    classifier=r["classifier"],
                    cv_average=r["cv_average"],
                    cv_max=r["cv_max"],
                    cv_min=r["cv_min"],
                    worst_split_accuracy=r["worst_split_accuracy"],
                )
                for r in d["rows"]
            ),
            k=d["k"],
            seed=d["seed"],
            dataset_name=d["dataset"],
            validation_size=d["validation_size"],
        )

    def to_text(self) -> str:
        """Aligned table, one row per classifier, accuracies to 1 decimal."""
        header = (
            f"{'classifier':<14} {'cv avg':>7} {'cv max':>7} {'cv min':>7} {'worst':>7}"
        )
        lines = [header, "-" * len(header)]
        for r in self.rows:
            lines.append(
                f"{r.classifier:<14} {r.cv_average:>7.1f} {r.cv_max:>7.1f} "
                f"{r.cv_min:>7.1f} {r.worst_split_accuracy:>7.1f}"
            )
        return "\n".join(lines) + "\n"


_SPEC_NAMES = {"decision-tree": "DT", "knn": "kNN", "gaussian-nb": "NB"}


def run_experiment(
    specs: "list[ClassifierSpec]",
    data: Dataset,
    split: WorstSplit,
    k: int = 10,
    seed: int = 0,
) -> ExperimentReport:
    if not specs:
        raise EvaluationError("need at least one classifier spec")
    rows = []
    for spec in specs:
        avg, top, low = kfold_cv(spec, data, k, seed)
        worst = worst_split_eval(spec, data, split)
        rows.append(
            ReportRow(
                classifier=_SPEC_NAMES.get(spec.kind, spec.kind),
                cv_average=avg,
                cv_max=top,
                cv_min=low,
                worst_split_accuracy=worst,
            )
        )
    return ExperimentReport(
        rows=tuple(rows),
        k=k,
        seed=seed,
        dataset_name=data.name,
        validation_size=len(split.validation_ids),
    )
