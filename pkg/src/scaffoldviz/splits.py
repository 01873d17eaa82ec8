"""Rectangle selection on plot geometry and worst-case split construction.

The selection rectangle lives in plot-plane coordinates. Bounding mode
keeps samples with a polyline vertex inside the rectangle; clipping mode
keeps samples whose polyline crosses it. Selected samples seed the
validation side of a worst-case split.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .data import Dataset
from .geometry import PlotGeometry


def default_mode(system: str) -> str:
    """Clipping suits the long chained dsc1 polylines; bounding the rest."""
    return "clipping" if system == "dsc1" else "bounding"


@dataclass(frozen=True)
class SelectionBox:
    x_min: float
    y_min: float
    x_max: float
    y_max: float
    mode: str = "bounding"  # or "clipping"

    def __post_init__(self) -> None:
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError(
                f"degenerate rectangle ({self.x_min}, {self.y_min}, "
                f"{self.x_max}, {self.y_max})"
            )
        if self.mode not in ("bounding", "clipping"):
            raise ValueError(f"unknown selection mode {self.mode!r}")

    def contains(self, x: float, y: float) -> bool:
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x_min, self.y_min, self.x_max, self.y_max)


def _segment_hits_box(p: tuple[float, float], q: tuple[float, float], box: SelectionBox) -> bool:
    if box.contains(*p) or box.contains(*q):
        return True
    # Liang-Barsky clipping of the parametric segment against the rectangle
    dx = q[0] - p[0]
    dy = q[1] - p[1]
    t0, t1 = 0.0, 1.0
    for delta, lo, hi, start in (
        (dx, box.x_min, box.x_max, p[0]),
        (dy, box.y_min, box.y_max, p[1]),
    ):
        if delta == 0.0:
            if start < lo or start > hi:
                return False
            continue
        ta = (lo - start) / delta
        tb = (hi - start) / delta
        if ta > tb:
            ta, tb = tb, ta
        t0 = max(t0, ta)
        t1 = min(t1, tb)
        if t0 > t1:
            return False
    return True


def box_select(geometry: PlotGeometry, box: SelectionBox) -> tuple[int, ...]:
    """Sample ids whose polylines hit the box, ascending."""
    hit: set[int] = set()
    for line in geometry.polylines:
        if line.sample_id in hit:
            continue
        if box.mode == "bounding":
            if any(box.contains(x, y) for x, y in line.vertices):
                hit.add(line.sample_id)
        else:
            pairs = zip(line.vertices[:-1], line.vertices[1:])
            if any(_segment_hits_box(p, q, box) for p, q in pairs):
                hit.add(line.sample_id)
    return tuple(sorted(hit))


@dataclass(frozen=True)
class WorstSplit:
    validation_ids: tuple[int, ...]
    training_ids: tuple[int, ...]
    target_fraction: float
    seed: int

    def __post_init__(self) -> None:
        overlap = set(self.validation_ids) & set(self.training_ids)
        if overlap:
            raise ValueError(f"split sides overlap on ids {sorted(overlap)[:5]}")

    def to_dict(self) -> dict:
        return {
            "validation_ids": list(self.validation_ids),
            "training_ids": list(self.training_ids),
            "target_fraction": self.target_fraction,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "WorstSplit":
        return cls(
            validation_ids=tuple(d["validation_ids"]),
            training_ids=tuple(d["training_ids"]),
            target_fraction=d["target_fraction"],
            seed=d["seed"],
        )


def build_worst_split(
    data: Dataset,
    selected: "list[tuple[int, ...]]",
    target_fraction: float = 0.10,
    seed: int = 0,
    per_box_cap: int | None = None,
) -> WorstSplit:
    """Validation set from box selections, filled from the rest if short.

    Boxes contribute in creation order, each internally by ascending id,
    until the floor(target_fraction * N) cap. A shortfall is filled by a
    seeded uniform draw from the unselected remainder.
    """
    if not 0.0 < target_fraction < 1.0:
        raise ValueError(f"target_fraction {target_fraction} outside (0, 1)")
    n = len(data)
    if n == 0:
        raise ValueError("empty dataset")
    cap = min(int(target_fraction * n), n)

    validation: list[int] = []
    taken: set[int] = set()
    for box_ids in selected:
        quota = len(box_ids) if per_box_cap is None else per_box_cap
        added = 0
        for sample_id in sorted(box_ids):
            if len(validation) >= cap or added >= quota:
                break
            if sample_id in taken:
                continue
            validation.append(sample_id)
            taken.add(sample_id)
            added += 1

    if len(validation) < cap:
        remainder = sorted(set(range(n)) - taken)
        fill = random.Random(seed).sample(remainder, cap - len(validation))
        validation.extend(fill)
        taken.update(fill)

    training = tuple(i for i in range(n) if i not in taken)
    return WorstSplit(
        validation_ids=tuple(sorted(validation)),
        training_ids=training,
        target_fraction=target_fraction,
        seed=seed,
    )
