"""End-to-end calibration check of the WBC fixture against the native stack."""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from scaffoldviz.data import load_dataset
from scaffoldviz.classifiers import DecisionTree, ClassifierSpec
from scaffoldviz.hyperblocks import (
    extract_hyperblocks,
    format_purity_table,
    order_attributes,
    purity_table,
)
from scaffoldviz.evaluation import kfold_cv


def main() -> None:
    wbc = load_dataset(
        Path(__file__).resolve().parent.parent / "src/scaffoldviz/datasets/wbc.csv"
    )
    print(f"samples={len(wbc)} counts={wbc.class_counts()}")
    specs = [
        ClassifierSpec(kind="decision-tree", max_depth=None),
        ClassifierSpec(kind="knn", k=5),
        ClassifierSpec(kind="gaussian-nb"),
    ]
    for spec in specs:
        avg, hi, lo = kfold_cv(spec, wbc, 10, seed=7)
        print(f"{spec.kind:<14} cv avg={avg:.1f} max={hi:.1f} min={lo:.1f}")

    tree = DecisionTree(max_depth=3).fit(wbc.scaled_matrix(), wbc.label_indices())
    hbs = extract_hyperblocks(tree, wbc)
    print("root attr:", tree.root.attribute, wbc.attributes[tree.root.attribute].name)
    print(format_purity_table(purity_table(hbs)))
    by_size = hbs.by_size()
    big_b = next(b for b in by_size if b.majority_class == "benign")
    big_m = next(b for b in by_size if b.majority_class == "malignant")
    joint = (big_b.n_samples + big_m.n_samples) / len(wbc) * 100
    print(f"joint={joint:.2f}% (target 86.68 +- 3) purities "
          f"{big_b.purity * 100:.2f}/{big_m.purity * 100:.2f}")
    print("order:", order_attributes(by_size, 9, for_pairs=True))


if __name__ == "__main__":
    main()
