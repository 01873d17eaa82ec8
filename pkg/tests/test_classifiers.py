import math

import numpy as np
import pytest

from scaffoldviz.classifiers import (
    ClassifierError,
    ClassifierSpec,
    DecisionTree,
    GaussianNaiveBayes,
    KNearestNeighbors,
    gini,
)


def brute_force_best_split(X, y, min_samples_leaf=1):
    """Exhaustive (gain, attribute, threshold) search used as the oracle."""
    parent = gini(np.bincount(y))
    n = len(y)
    best = (-1.0, None, None)
    for attr in range(X.shape[1]):
        values = sorted(set(X[:, attr]))
        for a, b in zip(values[:-1], values[1:]):
            t = (a + b) / 2
            if not a < t < b:
                continue
            mask = X[:, attr] <= t
            if mask.sum() < min_samples_leaf or (~mask).sum() < min_samples_leaf:
                continue
            g = (
                parent
                - mask.sum() / n * gini(np.bincount(y[mask]))
                - (~mask).sum() / n * gini(np.bincount(y[~mask]))
            )
            if g > best[0] + 1e-12:
                best = (g, attr, t)
    return best


class TestDecisionTree:
    def test_single_class_is_one_pure_leaf(self):
        X = np.random.default_rng(0).random((10, 3))
        y = np.zeros(10, dtype=int)
        tree = DecisionTree().fit(X, y, n_classes=1)
        assert tree.root.is_leaf
        assert tree.predict(X).tolist() == [0] * 10

    def test_iris_first_split_isolates_setosa_on_petal_width(self, iris):
        tree = DecisionTree().fit(iris.scaled_matrix(), iris.label_indices())
        assert tree.depth() <= 5
        assert tree.root.attribute == iris.attribute_index("petal_width")
        left = tree.root.left
        assert left.counts.tolist() == [50.0, 0.0, 0.0]

    def test_four_point_set_splits_on_attribute_zero(self):
        # exhaustive check of both attributes' gini gain is the oracle
        X = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
        y = np.array([0, 0, 1, 1])
        gain, attr, threshold = brute_force_best_split(X, y)
        assert attr == 0
        tree = DecisionTree().fit(X, y)
        assert tree.root.attribute == 0
        assert tree.root.threshold == pytest.approx(threshold)
        assert tree.root.left.is_leaf and tree.root.right.is_leaf

    def test_full_depth_training_accuracy_is_one(self, iris, wbc):
        for ds in (iris, wbc):
            X, y = ds.scaled_matrix(), ds.label_indices()
            tree = DecisionTree(max_depth=None, min_samples_leaf=1).fit(X, y)
            assert (tree.predict(X) == y).mean() == 1.0

    def test_chosen_split_beats_brute_force(self):
        rng = np.random.default_rng(42)
        for trial in range(20):
            n = int(rng.integers(5, 50))
            X = rng.random((n, 3))
            y = rng.integers(0, 3, size=n)
            if len(set(y.tolist())) < 2:
                continue
            tree = DecisionTree(max_depth=1).fit(X, y)
            gain, attr, threshold = brute_force_best_split(X, y)
            if tree.root.is_leaf:
                assert gain <= 0 or attr is None
                continue
            node = tree.root
            mask = X[:, node.attribute] <= node.threshold
            parent = gini(np.bincount(y, minlength=3))
            got = (
                parent
                - mask.sum() / n * gini(np.bincount(y[mask], minlength=3))
                - (~mask).sum() / n * gini(np.bincount(y[~mask], minlength=3))
            )
            assert got >= gain - 1e-12

    def test_threshold_strictly_between_observed_values(self, iris):
        # strict relative to the values reaching the node: below the
        # threshold there is a strictly smaller value, above a strictly
        # larger one, and no routed value equals the threshold
        X = iris.scaled_matrix()

        def walk(node, rows):
            if node.is_leaf:
                return
            column = X[rows, node.attribute]
            assert node.threshold not in set(column.tolist())
            assert column.min() < node.threshold < column.max()
            mask = column <= node.threshold
            walk(node.left, rows[mask])
            walk(node.right, rows[~mask])

        tree = DecisionTree(max_depth=None).fit(X, iris.label_indices())
        walk(tree.root, np.arange(len(X)))

    def test_min_samples_leaf_respected(self, iris):
        tree = DecisionTree(max_depth=None, min_samples_leaf=10).fit(
            iris.scaled_matrix(), iris.label_indices()
        )
        for _, leaf in tree.leaves():
            assert leaf.n_samples >= 10

    def test_empty_training_set(self):
        with pytest.raises(ClassifierError, match="empty"):
            DecisionTree().fit(np.empty((0, 2)), np.empty(0, dtype=int))

    def test_arity_mismatch(self, iris):
        tree = DecisionTree().fit(iris.scaled_matrix(), iris.label_indices())
        with pytest.raises(ClassifierError, match="attributes"):
            tree.predict_one(np.zeros(7))


class TestKNN:
    def test_training_point_with_k1(self, iris):
        X, y = iris.scaled_matrix(), iris.label_indices()
        model = KNearestNeighbors(k=1).fit(X, y)
        assert (model.predict(X) == y).mean() == 1.0

    def test_permutation_invariance_without_ties(self):
        rng = np.random.default_rng(3)
        X = rng.random((40, 4))
        y = rng.integers(0, 2, size=40)
        queries = rng.random((15, 4))
        model = KNearestNeighbors(k=5).fit(X, y)
        baseline = model.predict(queries)
        perm = rng.permutation(40)
        shuffled = KNearestNeighbors(k=5).fit(X[perm], y[perm])
        assert (shuffled.predict(queries) == baseline).all()

    def test_vote_tie_breaks_to_lowest_class(self):
        X = np.array([[0.0], [0.2], [0.8], [1.0]])
        y = np.array([1, 1, 0, 0])
        model = KNearestNeighbors(k=4).fit(X, y)
        assert model.predict_one(np.array([0.5])) == 0

    def test_k_validation(self):
        with pytest.raises(ClassifierError, match="k must be"):
            KNearestNeighbors(k=0).fit(np.ones((2, 1)), np.array([0, 1]))


class TestGaussianNB:
    def test_well_separated_means(self):
        # oracle: hand-computed posterior comparison. Equal priors, equal
        # variances: the query at a class mean is closer to that mean, so
        # its likelihood strictly dominates.
        a = np.array([0.1, 0.2, 0.3])
        b = np.array([0.7, 0.8, 0.9])
        X = np.concatenate([a, b]).reshape(-1, 1)
        y = np.array([0, 0, 0, 1, 1, 1])
        model = GaussianNaiveBayes().fit(X, y)
        mean_a, var = a.mean(), a.var()
        log_lik_a = -0.5 * math.log(2 * math.pi * var)
        log_lik_b = -0.5 * math.log(2 * math.pi * var) - 0.5 * (mean_a - b.mean()) ** 2 / var
        assert log_lik_a > log_lik_b
        assert model.predict_one(np.array([mean_a])) == 0
        assert model.predict_one(np.array([b.mean()])) == 1

    def test_wbc_priors(self, wbc):
        model = GaussianNaiveBayes().fit(wbc.scaled_matrix(), wbc.label_indices())
        benign = wbc.class_index("benign")
        malignant = wbc.class_index("malignant")
        assert model.priors[benign] == pytest.approx(444 / 683)
        assert model.priors[malignant] == pytest.approx(239 / 683)

    def test_constant_attribute_gets_variance_floor(self):
        X = np.array([[0.5, 0.1], [0.5, 0.2], [0.5, 0.8], [0.5, 0.9]])
        y = np.array([0, 0, 1, 1])
        model = GaussianNaiveBayes(var_floor=1e-9).fit(X, y)
        assert (model.variances[:, 0] == 1e-9).all()
        assert model.predict(X).tolist() == [0, 0, 1, 1]

    def test_empty_class_error_names_class(self):
        X = np.ones((3, 1))
        y = np.array([0, 0, 0])
        with pytest.raises(ClassifierError, match="class 1"):
            GaussianNaiveBayes().fit(X, y, n_classes=2)


class TestClassifierSpec:
    def test_build_kinds(self):
        assert isinstance(ClassifierSpec(kind="decision-tree").build(), DecisionTree)
        assert isinstance(ClassifierSpec(kind="knn").build(), KNearestNeighbors)
        assert isinstance(ClassifierSpec(kind="gaussian-nb").build(), GaussianNaiveBayes)

    def test_roundtrip(self):
        spec = ClassifierSpec(kind="knn", k=3)
        assert ClassifierSpec.from_dict(spec.to_dict()) == spec

    def test_validation(self):
        with pytest.raises(ClassifierError):
            ClassifierSpec(kind="svm")
        with pytest.raises(ClassifierError):
            ClassifierSpec(kind="knn", k=0)
        with pytest.raises(ClassifierError):
            ClassifierSpec(kind="decision-tree", max_depth=0)
        with pytest.raises(ClassifierError):
            ClassifierSpec(kind="gaussian-nb", var_floor=0.0)
