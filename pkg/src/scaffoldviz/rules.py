"""Rule series: ordered graphically linear separators compiled from a tree.

Each stage is an axis-aligned threshold on one attribute. A sample walks
the stages in order; the first assign action that covers its side fires,
and anything that passes every stage takes the series default class.

A tree whose internal nodes always have at least one leaf child (a chain)
compiles exactly: series predictions equal tree predictions. When a node
has two internal children the series cannot branch, so the below-side
subtree is collapsed to its majority class, the series continues into the
above side, and `fallback_used` is set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classifiers import DecisionTree, TreeNode
from .data import Dataset

ASSIGN = "assign"
PASS = "pass"


@dataclass(frozen=True)
class Separator:
    attribute: int
    threshold: float
    action_below: str  # ASSIGN or PASS
    action_above: str
    class_below: str | None = None
    class_above: str | None = None
    source: str = "tree"  # or "user"
    mergeable_with_next: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold {self.threshold} outside [0, 1]")
        actions = (self.action_below, self.action_above)
        if sorted(actions) != [ASSIGN, PASS]:
            raise ValueError("one side must assign and the other must pass")
        if self.action_below == ASSIGN and self.class_below is None:
            raise ValueError("assigning side needs a class")
        if self.action_above == ASSIGN and self.class_above is None:
            raise ValueError("assigning side needs a class")

    def to_dict(self) -> dict:
        return {
            "attribute": self.attribute,
            "threshold": self.threshold,
            "action_below": self.action_below,
            "action_above": self.action_above,
            "class_below": self.class_below,
            "class_above": self.class_above,
            "source": self.source,
            "mergeable_with_next": self.mergeable_with_next,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Separator":
        return cls(**d)


@dataclass(frozen=True)
class RuleSeries:
    stages: tuple[Separator, ...]
    default_class: str
    fallback_used: bool = False

    def to_dict(self) -> dict:
        return {
            "stages": [s.to_dict() for s in self.stages],
            "default_class": self.default_class,
            "fallback_used": self.fallback_used,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RuleSeries":
        return cls(
            stages=tuple(Separator.from_dict(s) for s in d["stages"]),
            default_class=d["default_class"],
            fallback_used=d.get("fallback_used", False),
        )


def compile_tree_to_series(tree: DecisionTree, classes: "tuple[str, ...]") -> RuleSeries:
    """Depth-first linearization of a fitted tree into a rule series.

    At every internal node the leaf child (preferring below when both
    children are leaves) becomes the assigning side and the other side
    passes onward. A node with two internal children collapses its below
    subtree into a majority-class assignment and continues down the above
    side; that sets fallback_used.
    """
    if tree.root is None:
        raise ValueError("tree is not fitted")
    stages: list[Separator] = []
    fallback = False

    def assign_stage(node: TreeNode, below: bool, label: str) -> Separator:
        return Separator(
            attribute=node.attribute,
            threshold=node.threshold,
            action_below=ASSIGN if below else PASS,
            action_above=PASS if below else ASSIGN,
            class_below=label if below else None,
            class_above=None if below else label,
        )

    node = tree.root
    if node.is_leaf:
        return RuleSeries(stages=(), default_class=classes[node.majority])

    while True:
        left, right = node.left, node.right
        if left.is_leaf and right.is_leaf:
            stages.append(assign_stage(node, True, classes[left.majority]))
            default = classes[right.majority]
            break
        if left.is_leaf:
            stages.append(assign_stage(node, True, classes[left.majority]))
            node = right
        elif right.is_leaf:
            stages.append(assign_stage(node, False, classes[right.majority]))
            node = left
        else:
            fallback = True
            stages.append(assign_stage(node, True, classes[left.majority]))
            node = right

    marked = [
        s if i + 1 >= len(stages) or stages[i + 1].attribute != s.attribute
        else Separator(
            attribute=s.attribute,
            threshold=s.threshold,
            action_below=s.action_below,
            action_above=s.action_above,
            class_below=s.class_below,
            class_above=s.class_above,
            source=s.source,
            mergeable_with_next=True,
        )
        for i, s in enumerate(stages)
    ]
    return RuleSeries(
        stages=tuple(marked), default_class=default, fallback_used=fallback
    )


def classify_series(series: RuleSeries, sample) -> str:
    """First assign action along the stages wins; default otherwise."""
    values = np.asarray(sample, dtype=float)
    for stage in series.stages:
        below = values[stage.attribute] <= stage.threshold
        if below and stage.action_below == ASSIGN:
            return stage.class_below
        if not below and stage.action_above == ASSIGN:
            return stage.class_above
    return series.default_class


def _capture_stage(series: RuleSeries, values: np.ndarray) -> int:
    """Index of the stage that labels the sample; len(stages) = default."""
    for i, stage in enumerate(series.stages):
        below = values[stage.attribute] <= stage.threshold
        if below and stage.action_below == ASSIGN:
            return i
        if not below and stage.action_above == ASSIGN:
            return i
    return len(series.stages)


def series_accuracy(series: RuleSeries, data: Dataset) -> tuple[float, list[int]]:
    """Accuracy plus per-stage capture counts (last slot is the default)."""
    X = data.scaled_matrix()
    captures = [0] * (len(series.stages) + 1)
    correct = 0
    for sample in data.samples:
        values = X[sample.id]
        stage = _capture_stage(series, values)
        captures[stage] += 1
        label = (
            series.default_class
            if stage == len(series.stages)
            else (
                series.stages[stage].class_below
                if values[series.stages[stage].attribute] <= series.stages[stage].threshold
                else series.stages[stage].class_above
            )
        )
        if label == sample.class_label:
            correct += 1
    return correct / len(data), captures


def truncate_series(series: RuleSeries, n_stages: int) -> RuleSeries:
    """Keep the first n_stages separators; the default class is unchanged."""
    if n_stages < 0:
        raise ValueError("stage count must be non-negative")
    return RuleSeries(
        stages=series.stages[:n_stages],
        default_class=series.default_class,
        fallback_used=series.fallback_used,
    )


def format_rules(series: RuleSeries, attribute_names: "list[str]") -> str:
    """Human-readable IF/ELSE text for a rule series."""
    lines = []
    for stage in series.stages:
        name = attribute_names[stage.attribute]
        if stage.action_below == ASSIGN:
            lines.append(f"IF {name} <= {stage.threshold:.4f} THEN {stage.class_below}")
        else:
            lines.append(f"IF {name} > {stage.threshold:.4f} THEN {stage.class_above}")
    lines.append(f"ELSE {series.default_class}")
    return "\n".join(lines)
