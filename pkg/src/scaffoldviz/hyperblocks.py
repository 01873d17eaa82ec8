"""Hyperblock extraction from decision trees and attribute ordering.

A hyperblock is an axis-aligned interval box in the scaled unit cube.
Blocks extracted from one tree partition the dataset: intervals are
half-open [lo, hi) except at the top of the cube, where hi = 1 is closed,
mirroring the tree's <= / > split semantics.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .classifiers import DecisionTree
from .data import Dataset


@dataclass(frozen=True)
class Hyperblock:
    intervals: tuple[tuple[float, float], ...]
    member_ids: tuple[int, ...]
    class_counts: tuple[int, ...]
    majority_class: str

    @property
    def n_samples(self) -> int:
        return len(self.member_ids)

    @property
    def purity(self) -> float:
        total = sum(self.class_counts)
        return max(self.class_counts) / total if total else 0.0

    @property
    def center(self) -> tuple[float, ...]:
        return tuple((lo + hi) / 2.0 for lo, hi in self.intervals)

    @property
    def lengths(self) -> tuple[float, ...]:
        return tuple(hi - lo for lo, hi in self.intervals)

    def contains(self, point: np.ndarray) -> bool:
        """Interval membership with the half-open boundary convention."""
        for (lo, hi), v in zip(self.intervals, point):
            if v < lo:
                return False
            if v > hi or (v == hi and hi < 1.0):
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "intervals": [list(iv) for iv in self.intervals],
            "member_ids": list(self.member_ids),
            "class_counts": list(self.class_counts),
            "majority_class": self.majority_class,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Hyperblock":
        return cls(
            intervals=tuple(tuple(iv) for iv in d["intervals"]),
            member_ids=tuple(d["member_ids"]),
            class_counts=tuple(d["class_counts"]),
            majority_class=d["majority_class"],
        )


@dataclass(frozen=True)
class HyperblockSet:
    blocks: tuple[Hyperblock, ...]
    dataset_name: str
    dataset_size: int
    classes: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.blocks)

    def by_size(self) -> list[Hyperblock]:
        return sorted(self.blocks, key=lambda b: -b.n_samples)

    def to_dict(self) -> dict:
        return {
            "dataset_name": self.dataset_name,
            "dataset_size": self.dataset_size,
            "classes": list(self.classes),
            "blocks": [b.to_dict() for b in self.blocks],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HyperblockSet":
        return cls(
            blocks=tuple(Hyperblock.from_dict(b) for b in d["blocks"]),
            dataset_name=d["dataset_name"],
            dataset_size=d["dataset_size"],
            classes=tuple(d["classes"]),
        )


def extract_hyperblocks(tree: DecisionTree, data: Dataset) -> HyperblockSet:
    """One block per tree leaf; unconstrained attributes span [0, 1]."""
    X = data.scaled_matrix()
    n_attrs = data.n_attributes
    blocks = []
    for path, _leaf in tree.leaves():
        lows = np.zeros(n_attrs)
        highs = np.ones(n_attrs)
        mask = np.ones(len(X), dtype=bool)
        for attr, threshold, is_upper in path:
            if is_upper:
                highs[attr] = min(highs[attr], threshold)
                mask &= X[:, attr] <= threshold
            else:
                lows[attr] = max(lows[attr], threshold)
                mask &= X[:, attr] > threshold
        ids = np.nonzero(mask)[0]
        counts = [0] * len(data.classes)
        for i in ids:
            counts[data.class_index(data.samples[i].class_label)] += 1
        majority = data.classes[int(np.argmax(counts))]
        blocks.append(
            Hyperblock(
                intervals=tuple(zip(lows.tolist(), highs.tolist())),
                member_ids=tuple(int(i) for i in ids),
                class_counts=tuple(counts),
                majority_class=majority,
            )
        )
    return HyperblockSet(
        blocks=tuple(blocks),
        dataset_name=data.name,
        dataset_size=len(data),
        classes=data.classes,
    )


@dataclass(frozen=True)
class PurityRow:
    block_index: int
    sample_count: int
    pct_of_dataset: float
    purity_pct: float
    majority_class: str
    pct_of_majority_class: float


def purity_table(hbs: HyperblockSet) -> list[PurityRow]:
    """Per-block statistics, largest block first.

    pct_of_majority_class relates the block to its majority class: the
    share of all same-class samples in the dataset that the block holds.
    """
    if not hbs.blocks:
        raise ValueError("empty hyperblock set")
    class_totals = {c: 0 for c in hbs.classes}
    for b in hbs.blocks:
        for c, n in zip(hbs.classes, b.class_counts):
            class_totals[c] += n
    rows = []
    for i, b in enumerate(hbs.blocks):
        majority_count = max(b.class_counts)
        total_for_class = class_totals[b.majority_class]
        rows.append(
            PurityRow(
                block_index=i,
                sample_count=b.n_samples,
                pct_of_dataset=100.0 * b.n_samples / hbs.dataset_size,
                purity_pct=100.0 * b.purity,
                majority_class=b.majority_class,
                pct_of_majority_class=(
                    100.0 * majority_count / total_for_class if total_for_class else 0.0
                ),
            )
        )
    rows.sort(key=lambda r: (-r.sample_count, r.block_index))
    return rows


def format_purity_table(rows: list[PurityRow]) -> str:
    header = f"{'block':>5} {'samples':>7} {'% data':>7} {'% purity':>8} {'class':>12} {'% of class':>10}"
    lines = [header]
    for r in rows:
        lines.append(
            f"{r.block_index:>5} {r.sample_count:>7} {r.pct_of_dataset:>7.2f} "
            f"{r.purity_pct:>8.2f} {r.majority_class:>12} {r.pct_of_majority_class:>10.2f}"
        )
    return "\n".join(lines)


def purity_table_csv(rows: list[PurityRow]) -> str:
    lines = ["block,samples,pct_of_dataset,pct_purity,majority_class,pct_of_majority_class"]
    for r in rows:
        lines.append(
            f"{r.block_index},{r.sample_count},{r.pct_of_dataset:.2f},"
            f"{r.purity_pct:.2f},{r.majority_class},{r.pct_of_majority_class:.2f}"
        )
    return "\n".join(lines) + "\n"


def purity_table_json(hbs: HyperblockSet, rows: list[PurityRow]) -> str:
    import json

    return json.dumps(
        {
            "hyperblocks": hbs.to_dict(),
            "table": [
                {
                    "block": r.block_index,
                    "samples": r.sample_count,
                    "pct_of_dataset": round(r.pct_of_dataset, 2),
                    "purity_pct": round(r.purity_pct, 2),
                    "majority_class": r.majority_class,
                    "pct_of_majority_class": round(r.pct_of_majority_class, 2),
                }
                for r in rows
            ],
        },
        indent=2,
        sort_keys=True,
    ) + "\n"


def primary_blocks(hbs: HyperblockSet, min_fraction: float = 0.02) -> list[Hyperblock]:
    """Blocks holding at least min_fraction of the dataset, largest first.

    Tiny residual blocks carry noise-driven path constraints, so attribute
    ordering works from the dominant blocks only.
    """
    cutoff = min_fraction * hbs.dataset_size
    out = [b for b in hbs.by_size() if b.n_samples >= cutoff]
    return out if len(out) >= 2 else hbs.by_size()[:2]


def _intervals_disjoint(a: tuple[float, float], b: tuple[float, float]) -> bool:
    # half-open boxes: touching intervals do not overlap
    return a[1] <= b[0] or b[1] <= a[0]


def attribute_of_separation(a: Hyperblock, b: Hyperblock) -> int | None:
    """Lowest attribute index on which the two blocks' intervals are disjoint."""
    if len(a.intervals) != len(b.intervals):
        raise ValueError(
            f"dimension mismatch: {len(a.intervals)} vs {len(b.intervals)}"
        )
    for i, (ia, ib) in enumerate(zip(a.intervals, b.intervals)):
        if _intervals_disjoint(ia, ib):
            return i
    return None


def order_attributes(
    blocks: "list[Hyperblock] | tuple[Hyperblock, ...]",
    n_attributes: int,
    for_pairs: bool = False,
) -> tuple[tuple[int, ...], bool]:
    """Attribute permutation led by attributes of separation.

    The separation attribute of the first separated block pair goes first.
    With for_pairs=True a second pair separated on a different attribute
    contributes the second slot, so the leading attribute pair carries two
    separating attributes. Returns (order, fallback); fallback is True when
    no pair of blocks is separated and the original order is kept.
    """
    if len(blocks) < 2:
        raise ValueError("need at least two blocks to order attributes")
    leaders: list[int] = []
    for a, b in combinations(blocks, 2):
        sep = attribute_of_separation(a, b)
        if sep is None or sep in leaders:
            continue
        leaders.append(sep)
        if not for_pairs or len(leaders) == 2:
            break
    if not leaders:
        return tuple(range(n_attributes)), True
    rest = [i for i in range(n_attributes) if i not in leaders]
    return tuple(leaders + rest), False
