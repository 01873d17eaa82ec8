"""Calibration check for the synthetic WBC fixture.

Targets (from the build's acceptance bands):
  - 10-fold CV: DT / kNN(5) / NB averages all inside [92, 98], DT near 94-95
  - depth-3 tree: largest benign block + largest malignant block jointly
    hold 86.68% +- 3pp of the dataset, purities near 97% / 98%
  - root split attribute is cell_size_uniformity (index 1)
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from scaffoldviz.data import load_dataset  # noqa: E402

from sklearn.model_selection import StratifiedKFold, cross_val_score  # noqa: E402
from sklearn.tree import DecisionTreeClassifier  # noqa: E402
from sklearn.neighbors import KNeighborsClassifier  # noqa: E402
from sklearn.naive_bayes import GaussianNB  # noqa: E402


def main() -> None:
    ds = load_dataset(
        Path(__file__).resolve().parent.parent
        / "src/scaffoldviz/datasets/wbc.csv"
    )
    X = ds.scaled_matrix()
    y = ds.label_indices()
    print(f"samples={len(ds)} classes={ds.class_counts()}")

    cv = StratifiedKFold(n_splits=10, shuffle=True, random_state=0)
    for name, clf in (
        ("DT", DecisionTreeClassifier(random_state=0)),
        ("kNN", KNeighborsClassifier(5)),
        ("NB", GaussianNB()),
    ):
        scores = cross_val_score(clf, X, y, cv=cv) * 100
        print(f"{name:4s} cv avg={scores.mean():.1f} max={scores.max():.1f} min={scores.min():.1f}")

    tree = DecisionTreeClassifier(max_depth=3, random_state=0).fit(X, y)
    print("root split attr:", ds.attributes[tree.tree_.feature[0]].name,
          f"(index {tree.tree_.feature[0]})")
    leaves = tree.apply(X)
    stats = []
    for leaf in np.unique(leaves):
        mask = leaves == leaf
        labels = y[mask]
        counts = np.bincount(labels, minlength=2)
        maj = int(np.argmax(counts))
        stats.append((int(mask.sum()), ds.classes[maj], counts[maj] / mask.sum() * 100))
    stats.sort(reverse=True)
    for n, cls, pur in stats:
        print(f"  block n={n:4d} ({n / len(ds) * 100:5.2f}%) {cls:9s} purity={pur:.2f}%")
    big_b = max((s for s in stats if s[1] == "benign"), default=None)
    big_m = max((s for s in stats if s[1] == "malignant"), default=None)
    if big_b and big_m:
        joint = (big_b[0] + big_m[0]) / len(ds) * 100
        print(f"primary blocks joint coverage: {joint:.2f}% (target 86.68 +- 3)")


if __name__ == "__main__":
    main()
