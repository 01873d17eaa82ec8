"""Search for the WBC overlap box used by the worst-split experiment.

The box lives on the DSC2 plot with hyperblock-driven attribute order
(x1, x2, x0, x3, x4, x5, x6, x7), mitoses dropped to even the count, the
leading pair weighted 1.5 and the rest 0.05. Candidates are scored by how
comfortably the resulting experiment clears the acceptance bands:
DT/kNN/NB cv averages in [92, 98], every worst-split accuracy at least
5 points under its cv average, DT worst-split in [75, 90].
"""

from __future__ import annotations

import sys
from itertools import product
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from scaffoldviz.data import load_dataset
from scaffoldviz.classifiers import ClassifierSpec
from scaffoldviz.geometry import PlotConfig, map_dsc2
from scaffoldviz.splits import SelectionBox, box_select, build_worst_split
from scaffoldviz.evaluation import kfold_cv, worst_split_eval

WBC_ORDER = (1, 2, 0, 3, 4, 5, 6, 7)
WBC_WEIGHTS = (1.5, 0.05, 0.05, 0.05)
K = 10
SEED = 7


def main() -> None:
    wbc = load_dataset(
        Path(__file__).resolve().parent.parent / "src/scaffoldviz/datasets/wbc.csv"
    )
    config = PlotConfig(system="dsc2", attribute_order=WBC_ORDER, pair_weights=WBC_WEIGHTS)
    geometry = map_dsc2(wbc, config)

    specs = [
        ClassifierSpec(kind="decision-tree", max_depth=None),
        ClassifierSpec(kind="knn", k=5),
        ClassifierSpec(kind="gaussian-nb"),
    ]
    cv = {s.kind: kfold_cv(s, wbc, K, SEED) for s in specs}
    for kind, (avg, hi, lo) in cv.items():
        print(f"cv {kind:<14} avg={avg:.1f} max={hi:.1f} min={lo:.1f}")

    labels = {s.id: s.class_label for s in wbc.samples}
    results = []
    for x0, y0, w, h in product(
        (0.30, 0.35, 0.40, 0.45, 0.50),
        (0.02, 0.06, 0.10, 0.15),
        (0.30, 0.40, 0.50, 0.60),
        (0.30, 0.40, 0.50, 0.60),
    ):
        box = SelectionBox(x0, y0, x0 + w, y0 + h, mode="bounding")
        ids = box_select(geometry, box)
        if len(ids) < 68:
            continue
        n_benign = sum(1 for i in ids if labels[i] == "benign")
        split = build_worst_split(wbc, [ids], target_fraction=0.10, seed=SEED)
        worst = {s.kind: worst_split_eval(s, wbc, split) for s in specs}
        dt, knn, nb = (
            worst["decision-tree"],
            worst["knn"],
            worst["gaussian-nb"],
        )
        slack = min(
            cv["decision-tree"][0] - 5 - dt,
            cv["knn"][0] - 5 - knn,
            cv["gaussian-nb"][0] - 5 - nb,
            dt - 75,
            90 - dt,
        )
        results.append((slack, (x0, y0, x0 + w, y0 + h), len(ids), n_benign, dt, knn, nb))

    results.sort(reverse=True)
    print(f"\n{len(results)} candidate boxes with >= 68 samples; top 12 by slack:")
    for slack, rect, n, nb_, dt, knn, nb in results[:12]:
        print(
            f"slack={slack:6.2f} rect={rect} n={n:3d} benign={nb_:3d} "
            f"DT={dt:.1f} kNN={knn:.1f} NB={nb:.1f}"
        )


if __name__ == "__main__":
    main()
