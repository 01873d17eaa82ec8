"""Regenerate the bundled dataset fixtures.

iris.csv is written from scikit-learn's bundled copy of the UCI Iris data.

wbc.csv is a synthetic reconstruction of the UCI Wisconsin Breast Cancer
(original) file. The real file cannot be redistributed from this build
environment, so we generate 699 rows with the same shape: nine integer
attributes in 1..10, 16 rows carrying the missing token '?' in bare_nuclei
(14 benign, 2 malignant), and 444 benign / 239 malignant rows once the
missing rows are dropped.

The generator models the four populations that give the original file its
character: a tight benign core at low values, a small atypical-benign group
whose cell size is elevated while cell shape stays low, a malignant core
spread over high values, and a mild-malignant group overlapping the
atypical benign cases. This reproduces the published behavior: a decision
tree roots on cell_size_uniformity, uses cell_shape_uniformity next, two
dominant near-pure blocks hold roughly 87% of the samples, and 10-fold CV
accuracy for standard classifiers lands in the mid-90s with a genuinely
hard overlap region.

Run from the repository root:  python3 tools/make_fixtures.py
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

HERE = Path(__file__).resolve().parent
OUT = HERE.parent / "src" / "scaffoldviz" / "datasets"

WBC_COLUMNS = [
    "clump_thickness",
    "cell_size_uniformity",
    "cell_shape_uniformity",
    "marginal_adhesion",
    "epithelial_cell_size",
    "bare_nuclei",
    "bland_chromatin",
    "normal_nucleoli",
    "mitoses",
]

# Normalized attribute means, (raw_mean - 1) / 9, from the published
# per-class summary statistics of the original file.
BENIGN_MEANS = np.array([0.218, 0.037, 0.049, 0.040, 0.124, 0.039, 0.122, 0.032, 0.007])
MALIG_MEANS = np.array([0.688, 0.619, 0.618, 0.506, 0.478, 0.650, 0.552, 0.540, 0.175])

BENIGN_CORE_SIGMA = np.array([0.11, 0.030, 0.035, 0.07, 0.07, 0.06, 0.08, 0.06, 0.020])
MALIG_CORE_SIGMA = np.array([0.14, 0.060, 0.060, 0.12, 0.10, 0.16, 0.10, 0.13, 0.10])


def _benign_core(rng: np.random.Generator) -> np.ndarray:
    return BENIGN_MEANS + rng.normal(0.0, BENIGN_CORE_SIGMA)


def _benign_atypical(rng: np.random.Generator) -> np.ndarray:
    """Elevated cell size and clump, near-normal cell shape."""
    row = np.empty(9)
    row[0] = rng.normal(0.45, 0.12)
    row[1] = rng.uniform(0.26, 0.58)
    row[2] = max(0.0, rng.normal(0.11, 0.06))
    row[3:8] = rng.normal(0.26, 0.11, size=5)
    row[8] = rng.normal(0.02, 0.03)
    return row


def _malig_core(rng: np.random.Generator) -> np.ndarray:
    u = rng.beta(2.2, 1.2)
    row = MALIG_MEANS + 0.8 * (u - 0.65) + rng.normal(0.0, MALIG_CORE_SIGMA)
    row[8] = max(0.0, row[8] - 0.25)  # mitoses stays low for most cases
    return row


def _malig_mild(rng: np.random.Generator) -> np.ndarray:
    """The hard cases: size overlaps the atypical benign group and the
    shape reading can stay near normal."""
    row = np.empty(9)
    row[0] = rng.normal(0.45, 0.15)
    row[1] = rng.uniform(0.22, 0.50)
    row[2] = rng.uniform(0.03, 0.45)
    row[3:5] = rng.normal(0.33, 0.13, size=2)
    row[5] = rng.normal(0.40, 0.17)
    row[6:8] = rng.normal(0.33, 0.13, size=2)
    row[8] = rng.normal(0.08, 0.06)
    return row


def _malig_occult(rng: np.random.Generator) -> np.ndarray:
    """Rare malignancies whose readings sit inside the benign range."""
    row = np.empty(9)
    row[0] = rng.normal(0.35, 0.15)
    row[1] = rng.uniform(0.04, 0.15)
    row[2] = rng.uniform(0.05, 0.30)
    row[3:8] = rng.normal(0.20, 0.12, size=5)
    row[8] = rng.normal(0.04, 0.04)
    return row


def generate_wbc(seed: int = 20230917) -> list[list[str]]:
    rng = np.random.default_rng(seed)

    rows = []
    for label, maker, count in (
        ("benign", _benign_core, 432),
        ("benign", _benign_atypical, 26),
        ("malignant", _malig_core, 170),
        ("malignant", _malig_mild, 65),
        ("malignant", _malig_occult, 6),
    ):
        for _ in range(count):
            norm = np.clip(maker(rng), 0.0, 1.0)
            values = [1 + int(round(9 * v)) for v in norm]
            rows.append([label, values])

    order = rng.permutation(len(rows))
    shuffled = [rows[i] for i in order]

    # every attribute spans the full 1..10 range, as in the original file
    for j in range(9):
        col = [r[1][j] for r in shuffled]
        if min(col) > 1:
            shuffled[int(np.argmin(col))][1][j] = 1
        if max(col) < 10:
            shuffled[int(np.argmax(col))][1][j] = 10

    # 16 rows carry '?' in bare_nuclei: 14 benign, 2 malignant
    benign_pos = [i for i, r in enumerate(shuffled) if r[0] == "benign"]
    malig_pos = [i for i, r in enumerate(shuffled) if r[0] == "malignant"]
    missing = set(rng.choice(benign_pos, size=14, replace=False))
    missing |= set(rng.choice(malig_pos, size=2, replace=False))

    out = []
    for i, (label, values) in enumerate(shuffled):
        cells = [str(v) for v in values]
        if i in missing:
            cells[5] = "?"
        out.append(cells + [label])
    return out


def write_wbc() -> Path:
    rows = generate_wbc()
    path = OUT / "wbc.csv"
    with path.open("w") as fh:
        fh.write(",".join(WBC_COLUMNS + ["class"]) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")
    return path


def write_iris() -> Path:
    from sklearn.datasets import load_iris

    iris = load_iris()
    names = ["sepal_length", "sepal_width", "petal_length", "petal_width"]
    labels = [iris.target_names[t] for t in iris.target]
    path = OUT / "iris.csv"
    with path.open("w") as fh:
        fh.write(",".join(names + ["class"]) + "\n")
        for row, label in zip(iris.data, labels):
            cells = [f"{v:.1f}" for v in row]
            fh.write(",".join(cells + [label]) + "\n")
    return path


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    print("wrote", write_iris())
    print("wrote", write_wbc())
