"""Tabular dataset ingestion with per-attribute min-max scaling.

Every sample keeps both its raw values and the scaled copy in [0, 1], plus
the (min, max) pair per attribute, so any scaled value can be mapped back
to raw units exactly.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

MISSING_TOKEN = "?"


class DataError(ValueError):
    """Raised for unreadable, malformed, or empty input files."""


@dataclass(frozen=True)
class Attribute:
    name: str
    minimum: float
    maximum: float


@dataclass(frozen=True)
class Sample:
    id: int
    raw_values: tuple[float, ...]
    scaled_values: tuple[float, ...]
    class_label: str


@dataclass(frozen=True)
class Dataset:
    name: str
    attributes: tuple[Attribute, ...]
    samples: tuple[Sample, ...]
    classes: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    def attribute_names(self) -> list[str]:
        return [a.name for a in self.attributes]

    def attribute_index(self, name: str) -> int:
        for i, a in enumerate(self.attributes):
            if a.name == name:
                return i
        raise KeyError(f"unknown attribute {name!r}")

    def class_index(self, label: str) -> int:
        return self.classes.index(label)

    def scaled_matrix(self) -> np.ndarray:
        """Samples-by-attributes matrix of scaled values."""
        return np.array([s.scaled_values for s in self.samples], dtype=float)

    def label_indices(self) -> np.ndarray:
        lookup = {c: i for i, c in enumerate(self.classes)}
        return np.array([lookup[s.class_label] for s in self.samples], dtype=int)

    def class_counts(self) -> dict[str, int]:
        counts = {c: 0 for c in self.classes}
        for s in self.samples:
            counts[s.class_label] += 1
        return counts

    def sample_by_id(self, sample_id: int) -> Sample:
        # ids are assigned densely in file order, so index == id
        s = self.samples[sample_id]
        if s.id != sample_id:
            raise KeyError(f"no sample with id {sample_id}")
        return s


def minmax_scale(raw: "list[float] | np.ndarray") -> tuple[np.ndarray, float, float]:
    """Affine map of a column onto [0, 1]; constant columns map to zeros.

    Returns (scaled, min, max) so the map can be inverted later.
    """
    column = np.asarray(raw, dtype=float)
    if column.size == 0:
        raise DataError("cannot scale an empty column")
    lo = float(column.min())
    hi = float(column.max())
    if hi > lo:
        scaled = (column - lo) / (hi - lo)
    else:
        scaled = np.zeros_like(column)
    return scaled, lo, hi


def unscale(scaled: float, minimum: float, maximum: float) -> float:
    """Invert minmax_scale for one value. Constant columns invert to min."""
    if minimum > maximum:
        raise ValueError(f"min {minimum} exceeds max {maximum}")
    if scaled < -1e-9 or scaled > 1.0 + 1e-9:
        raise ValueError(f"scaled value {scaled} outside [0, 1]")
    return minimum + scaled * (maximum - minimum)


def load_dataset(
    source: "str | Path",
    class_column: str = "class",
    name: str | None = None,
) -> Dataset:
    """Load a character-separated file with a header row into a Dataset.

    Rows containing the missing token "?" are dropped. Sample ids are
    assigned in file order among retained rows, and per-attribute min/max
    are computed over retained rows only.
    """
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc

    reader = csv.reader(text.splitlines())
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("empty dataset") from None
    header = [h.strip() for h in header]
    if class_column not in header:
        raise DataError(f"class column {class_column!r} not in header {header}")
    class_pos = header.index(class_column)
    attr_names = [h for i, h in enumerate(header) if i != class_pos]

    raw_rows: list[list[float]] = []
    labels: list[str] = []
    for row_number, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise DataError(
                f"row {row_number} has {len(row)} cells, expected {len(header)}"
            )
        cells = [c.strip() for c in row]
        if any(c == MISSING_TOKEN for c in cells):
            continue
        values = []
        for pos, cell in enumerate(cells):
            if pos == class_pos:
                continue
            try:
                values.append(float(cell))
            except ValueError:
                raise DataError(
                    f"row {row_number}, column {header[pos]!r}: "
                    f"cannot parse {cell!r} as a number"
                ) from None
        raw_rows.append(values)
        labels.append(cells[class_pos])

    if not raw_rows:
        raise DataError("empty dataset")

    raw = np.array(raw_rows, dtype=float)
    attributes = []
    scaled_cols = []
    for j, attr_name in enumerate(attr_names):
        scaled, lo, hi = minmax_scale(raw[:, j])
        attributes.append(Attribute(attr_name, lo, hi))
        scaled_cols.append(scaled)
    scaled = np.column_stack(scaled_cols)

    classes: list[str] = []
    for label in labels:
        if label not in classes:
            classes.append(label)

    samples = tuple(
        Sample(
            id=i,
            raw_values=tuple(raw[i]),
            scaled_values=tuple(scaled[i]),
            class_label=labels[i],
        )
        for i in range(len(raw_rows))
    )
    return Dataset(
        name=name or path.stem,
        attributes=tuple(attributes),
        samples=samples,
        classes=tuple(classes),
    )
