import numpy as np
import pytest

from minacc.data import Dataset, Provenance

pytest.importorskip("sklearn", reason="scikit-learn supplies the reference WDBC copy")


def make_dataset(features, labels, ids=None, provenance=Provenance.ORIGINAL) -> Dataset:
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if ids is None:
        ids = np.arange(1, len(labels) + 1, dtype=np.int64)
    return Dataset(ids, labels, features, provenance)


def random_dataset(rng: np.random.Generator, n: int, d: int, both_classes=True) -> Dataset:
    features = rng.normal(size=(n, d))
    labels = rng.integers(0, 2, size=n)
    if both_classes:
        labels[0] = 0
        labels[-1] = 1
    return make_dataset(features, labels)


@pytest.fixture(scope="session")
def wdbc_path(tmp_path_factory):
    """WDBC-format file rebuilt from scikit-learn's copy of the dataset.

    Feature values and record order match the canonical UCI file; patient
    ids are synthetic (the content fingerprint ignores them).
    """
    from sklearn.datasets import load_breast_cancer

    bundle = load_breast_cancer()
    X, y = bundle.data, bundle.target  # target 0 = malignant, 1 = benign
    lines = []
    for i in range(len(X)):
        letter = "M" if y[i] == 0 else "B"
        lines.append(f"{842000 + i},{letter}," + ",".join(repr(float(v)) for v in X[i]))
    path = tmp_path_factory.mktemp("data") / "wdbc.data"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def wdbc(wdbc_path):
    from minacc.data import load_wdbc

    return load_wdbc(wdbc_path)
