"""Native CART decision tree, k-nearest-neighbors, and Gaussian naive Bayes.

All classifiers work on min-max scaled feature matrices and integer class
indices. Tie handling is fixed so that repeated fits are reproducible:
equal split gains resolve to the highest attribute index then the lowest
threshold, and equal votes or posteriors resolve to the lowest class index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np


class ClassifierError(ValueError):
    pass


@dataclass
class TreeNode:
    counts: np.ndarray
    attribute: Optional[int] = None
    threshold: Optional[float] = None
    left: Optional["TreeNode"] = None
    right: Optional["TreeNode"] = None

    @property
    def is_leaf(self) -> bool:
        return self.attribute is None

    @property
    def majority(self) -> int:
        return int(np.argmax(self.counts))

    @property
    def n_samples(self) -> int:
        return int(self.counts.sum())


def gini(counts: np.ndarray) -> float:
    n = counts.sum()
    if n == 0:
        return 0.0
    p = counts / n
    return float(1.0 - np.sum(p * p))


def _best_split_for_attribute(
    values: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    min_samples_leaf: int,
) -> tuple[float, float] | None:
    """Best (gain, threshold) over midpoint candidates, or None.

    Candidates whose midpoint does not fall strictly between the two
    neighboring values (possible for adjacent floats) are discarded so
    thresholds never coincide with an observed value.
    """
    order = np.argsort(values, kind="stable")
    sv = values[order]
    sy = y[order]
    n = len(sv)

    boundaries = np.nonzero(sv[:-1] != sv[1:])[0]
    if boundaries.size == 0:
        return None

    one_hot = np.zeros((n, n_classes))
    one_hot[np.arange(n), sy] = 1.0
    cum = np.cumsum(one_hot, axis=0)
    total = cum[-1]
    parent = gini(total)

    left_counts = cum[boundaries]
    right_counts = total - left_counts
    n_left = (boundaries + 1).astype(float)
    n_right = n - n_left

    ok = (n_left >= min_samples_leaf) & (n_right >= min_samples_leaf)
    thresholds = (sv[boundaries] + sv[boundaries + 1]) / 2.0
    ok &= (thresholds > sv[boundaries]) & (thresholds < sv[boundaries + 1])
    if not ok.any():
        return None

    gini_left = 1.0 - np.sum((left_counts / n_left[:, None]) ** 2, axis=1)
    gini_right = 1.0 - np.sum((right_counts / n_right[:, None]) ** 2, axis=1)
    gains = parent - (n_left / n) * gini_left - (n_right / n) * gini_right
    gains[~ok] = -np.inf

    best = int(np.argmax(gains))  # first max = lowest threshold on ties
    return float(gains[best]), float(thresholds[best])


@dataclass
class DecisionTree:
    max_depth: Optional[int] = 8  # None grows to purity
    min_samples_leaf: int = 1
    root: Optional[TreeNode] = field(default=None, repr=False)
    n_classes: int = 0
    n_attributes: int = 0

    def fit(self, X: np.ndarray, y: np.ndarray, n_classes: int | None = None) -> "DecisionTree":
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        if len(X) == 0:
            raise ClassifierError("cannot fit a tree on an empty training set")
        if self.max_depth is not None and self.max_depth < 1:
            raise ClassifierError("max_depth must be >= 1")
        self.n_classes = n_classes if n_classes is not None else int(y.max()) + 1
        self.n_attributes = X.shape[1]
        self.root = self._grow(X, y, depth=0)
        return self

    def _grow(self, X: np.ndarray, y: np.ndarray, depth: int) -> TreeNode:
        counts = np.bincount(y, minlength=self.n_classes).astype(float)
        node = TreeNode(counts=counts)
        if self.max_depth is not None and depth >= self.max_depth:
            return node
        if len(np.unique(y)) == 1:
            return node
        if len(y) < 2 * self.min_samples_leaf:
            return node

        best_gain = -np.inf
        best_attr = None
        best_threshold = None
        for attr in range(X.shape[1]):
            found = _best_split_for_attribute(
                X[:, attr], y, self.n_classes, self.min_samples_leaf
            )
            if found is None:
                continue
            gain, threshold = found
            # >= so equal gains resolve to the highest attribute index
            if gain >= best_gain:
                best_gain = gain
                best_attr = attr
                best_threshold = threshold
        if best_attr is None or best_gain <= 0.0:
            return node

        mask = X[:, best_attr] <= best_threshold
        node.attribute = best_attr
        node.threshold = best_threshold
        node.left = self._grow(X[mask], y[mask], depth + 1)
        node.right = self._grow(X[~mask], y[~mask], depth + 1)
        return node

    def predict_one(self, x: np.ndarray) -> int:
        node = self._check_fitted(x)
        while not node.is_leaf:
            node = node.left if x[node.attribute] <= node.threshold else node.right
        return node.majority

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        return np.array([self.predict_one(x) for x in X], dtype=int)

    def _check_fitted(self, x: np.ndarray) -> TreeNode:
        if self.root is None:
            raise ClassifierError("tree is not fitted")
        if len(x) != self.n_attributes:
            raise ClassifierError(
                f"sample has {len(x)} attributes, tree expects {self.n_attributes}"
            )
        return self.root

    def leaves(self) -> list[tuple[list[tuple[int, float, bool]], TreeNode]]:
        """All leaves with their path constraints.

        Each constraint is (attribute, threshold, is_upper): is_upper means
        the path took the <= branch, so threshold bounds the value above.
        """
        if self.root is None:
            raise ClassifierError("tree is not fitted")
        out: list[tuple[list[tuple[int, float, bool]], TreeNode]] = []

        def walk(node: TreeNode, path: list[tuple[int, float, bool]]) -> None:
            if node.is_leaf:
                out.append((list(path), node))
                return
            walk(node.left, path + [(node.attribute, node.threshold, True)])
            walk(node.right, path + [(node.attribute, node.threshold, False)])

        walk(self.root, [])
        return out

    def depth(self) -> int:
        def d(node: TreeNode) -> int:
            if node.is_leaf:
                return 0
            return 1 + max(d(node.left), d(node.right))

        if self.root is None:
            raise ClassifierError("tree is not fitted")
        return d(self.root)


@dataclass
class KNearestNeighbors:
    k: int = 5
    _X: Optional[np.ndarray] = field(default=None, repr=False)
    _y: Optional[np.ndarray] = field(default=None, repr=False)
    n_classes: int = 0

    def fit(self, X: np.ndarray, y: np.ndarray, n_classes: int | None = None) -> "KNearestNeighbors":
        if self.k < 1:
            raise ClassifierError("k must be >= 1")
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        if len(X) == 0:
            raise ClassifierError("cannot fit kNN on an empty training set")
        self._X = X
        self._y = y
        self.n_classes = n_classes if n_classes is not None else int(y.max()) + 1
        return self

    def predict_one(self, x: np.ndarray) -> int:
        if self._X is None:
            raise ClassifierError("kNN is not fitted")
        if len(x) != self._X.shape[1]:
            raise ClassifierError(
                f"sample has {len(x)} attributes, model expects {self._X.shape[1]}"
            )
        d = np.sum((self._X - x) ** 2, axis=1)
        k = min(self.k, len(d))
        # stable sort: equidistant neighbors keep training order
        nearest = np.argsort(d, kind="stable")[:k]
        votes = np.bincount(self._y[nearest], minlength=self.n_classes)
        return int(np.argmax(votes))  # argmax returns the lowest class on ties

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.array([self.predict_one(x) for x in np.asarray(X, dtype=float)], dtype=int)


@dataclass
class GaussianNaiveBayes:
    var_floor: float = 1e-9
    priors: Optional[np.ndarray] = field(default=None, repr=False)
    means: Optional[np.ndarray] = field(default=None, repr=False)
    variances: Optional[np.ndarray] = field(default=None, repr=False)
    n_classes: int = 0

    def fit(self, X: np.ndarray, y: np.ndarray, n_classes: int | None = None) -> "GaussianNaiveBayes":
        if self.var_floor <= 0:
            raise ClassifierError("variance floor must be positive")
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        if len(X) == 0:
            raise ClassifierError("cannot fit naive Bayes on an empty training set")
        self.n_classes = n_classes if n_classes is not None else int(y.max()) + 1
        n, m = X.shape
        self.priors = np.zeros(self.n_classes)
        self.means = np.zeros((self.n_classes, m))
        self.variances = np.zeros((self.n_classes, m))
        for c in range(self.n_classes):
            mask = y == c
            if not mask.any():
                raise ClassifierError(f"class {c} has no training samples")
            self.priors[c] = mask.sum() / n
            self.means[c] = X[mask].mean(axis=0)
            var = X[mask].var(axis=0)
            self.variances[c] = np.maximum(var, self.var_floor)
        return self

    def predict_one(self, x: np.ndarray) -> int:
        if self.priors is None:
            raise ClassifierError("naive Bayes is not fitted")
        if len(x) != self.means.shape[1]:
            raise ClassifierError(
                f"sample has {len(x)} attributes, model expects {self.means.shape[1]}"
            )
        log_post = (
            np.log(self.priors)
            - 0.5 * np.sum(np.log(2 * np.pi * self.variances), axis=1)
            - 0.5 * np.sum((x - self.means) ** 2 / self.variances, axis=1)
        )
        return int(np.argmax(log_post))

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.array([self.predict_one(x) for x in np.asarray(X, dtype=float)], dtype=int)


@dataclass(frozen=True)
class ClassifierSpec:
    """Serializable description of a classifier and its hyperparameters."""

    kind: str  # "decision-tree" | "knn" | "gaussian-nb"
    k: int = 5
    max_depth: Optional[int] = 8
    min_samples_leaf: int = 1
    var_floor: float = 1e-9

    KINDS = ("decision-tree", "knn", "gaussian-nb")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ClassifierError(f"unknown classifier kind {self.kind!r}")
        if self.kind == "knn" and self.k < 1:
            raise ClassifierError("k must be >= 1")
        if self.kind == "decision-tree" and self.max_depth is not None and self.max_depth < 1:
            raise ClassifierError("max_depth must be >= 1")
        if self.kind == "gaussian-nb" and self.var_floor <= 0:
            raise ClassifierError("variance floor must be positive")

    def build(self):
        if self.kind == "decision-tree":
            return DecisionTree(max_depth=self.max_depth, min_samples_leaf=self.min_samples_leaf)
        if self.kind == "knn":
            return KNearestNeighbors(k=self.k)
        return GaussianNaiveBayes(var_floor=self.var_floor)

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "knn":
            d["k"] = self.k
        elif self.kind == "decision-tree":
            d["max_depth"] = self.max_depth
            d["min_samples_leaf"] = self.min_samples_leaf
        else:
            d["var_floor"] = self.var_floor
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ClassifierSpec":
        return cls(**d)
