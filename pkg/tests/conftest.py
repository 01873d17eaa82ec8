import numpy as np
import pytest

from scaffoldviz import datasets
from scaffoldviz.classifiers import DecisionTree
from scaffoldviz.data import Dataset, Attribute, Sample, load_dataset


@pytest.fixture(scope="session")
def iris():
    return load_dataset(datasets.iris_path())


@pytest.fixture(scope="session")
def wbc():
    return load_dataset(datasets.wbc_path())


@pytest.fixture(scope="session")
def iris_tree(iris):
    return DecisionTree(max_depth=None).fit(
        iris.scaled_matrix(), iris.label_indices(), n_classes=3
    )


@pytest.fixture(scope="session")
def iris_tree_depth2(iris):
    return DecisionTree(max_depth=2).fit(
        iris.scaled_matrix(), iris.label_indices(), n_classes=3
    )


def make_dataset(X, labels, name="synthetic") -> Dataset:
    """Build a Dataset directly from scaled values in [0, 1]."""
    X = np.asarray(X, dtype=float)
    attributes = tuple(
        Attribute(f"a{j}", float(X[:, j].min()), float(X[:, j].max()))
        for j in range(X.shape[1])
    )
    classes = []
    for label in labels:
        if label not in classes:
            classes.append(label)
    samples = tuple(
        Sample(
            id=i,
            raw_values=tuple(X[i]),
            scaled_values=tuple(X[i]),
            class_label=labels[i],
        )
        for i in range(len(X))
    )
    return Dataset(name=name, attributes=attributes, samples=samples, classes=tuple(classes))


def random_dataset(rng, n_samples, n_dims, n_classes=2) -> Dataset:
    X = rng.random((n_samples, n_dims))
    labels = [f"c{rng.integers(n_classes)}" for _ in range(n_samples)]
    return make_dataset(X, labels)
