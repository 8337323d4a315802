"""Shared classifier surface: kinds, hyperparameters, trained-model contract."""

from __future__ import annotations

from dataclasses import dataclass, fields
from enum import Enum

import numpy as np

from ..data import Label, StandardizationParams, standardize_matrix


class ClassifierKind(Enum):
    """The eight evaluated classifier families.

    The integer code is part of the seed-derivation contract and must
    never be renumbered.
    """

    RANDOM_FOREST = ("random-forest", 1)
    SUPPORT_VECTOR_MACHINE = ("svm", 2)
    K_NEAREST_NEIGHBOR = ("knn", 3)
    NEURAL_NETWORK = ("neural-network", 4)
    NAIVE_BAYES = ("naive-bayes", 5)
    LOGISTIC_REGRESSION = ("logistic-regression", 6)
    DECISION_TREE_ENTROPY = ("decision-tree-entropy", 7)
    DECISION_TREE_REGRESSOR = ("decision-tree-regressor", 8)

    @property
    def tag(self) -> str:
        return self.value[0]

    @property
    def code(self) -> int:
        return self.value[1]

    @property
    def slug(self) -> str:
        """Filesystem-safe name used in trace filenames."""
        return self.tag.replace("-", "_")

    @classmethod
    def from_tag(cls, tag: str) -> "ClassifierKind":
        for kind in cls:
            if kind.tag == tag:
                return kind
        known = ", ".join(k.tag for k in cls)
        raise ValueError(f"unknown classifier {tag!r} (known: {known})")


# Kinds whose distance/gradient geometry needs z-scored inputs. Trees and
# Naive Bayes consume raw features.
STANDARDIZED_KINDS = frozenset(
    {
        ClassifierKind.K_NEAREST_NEIGHBOR,
        ClassifierKind.SUPPORT_VECTOR_MACHINE,
        ClassifierKind.LOGISTIC_REGRESSION,
        ClassifierKind.NEURAL_NETWORK,
    }
)


@dataclass(frozen=True)
class Hyperparams:
    """Every tunable in one bag; defaults are the audited configuration."""

    knn_k: int = 5
    svm_c: float = 1.0
    svm_epochs: int = 200
    logreg_lr: float = 0.1
    logreg_epochs: int = 500
    mlp_lr: float = 0.01
    mlp_hidden: int = 16
    mlp_epochs: int = 1500
    tree_max_depth: int | None = None
    tree_min_samples_split: int = 2
    forest_trees: int = 10
    forest_feature_subset: int = 5
    forest_bootstrap: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.knn_k <= 0 or self.knn_k % 2 == 0:
            raise ValueError("knn_k must be a positive odd integer")
        for name in ("svm_c", "svm_epochs", "logreg_lr", "logreg_epochs",
                     "mlp_lr", "mlp_hidden", "mlp_epochs", "forest_trees",
                     "forest_feature_subset"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.tree_max_depth is not None and self.tree_max_depth <= 0:
            raise ValueError("tree_max_depth must be positive or None")
        if self.tree_min_samples_split < 2:
            raise ValueError("tree_min_samples_split must be at least 2")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class TrainedModel:
    """Immutable fitted classifier exposing one scoring contract.

    ``raw_score`` maps an already-standardized (when applicable) feature
    vector to the malignant score in [0, 1]; use the module-level
    ``predict`` for the full validated contract.
    """

    kind: ClassifierKind
    n_features: int
    standardization: StandardizationParams | None

    def raw_score(self, x: np.ndarray) -> float:
        raise NotImplementedError


def predict(model: TrainedModel, features) -> tuple[Label, float]:
    """Score one feature vector: (label, malignant score in [0, 1]).

    Label is malignant exactly when score > 0.5; a score of exactly 0.5
    maps to benign.
    """
    x = np.asarray(features, dtype=np.float64)
    if x.shape != (model.n_features,):
        raise ValueError(
            f"expected a feature vector of length {model.n_features}, got shape {x.shape}"
        )
    if not np.all(np.isfinite(x)):
        raise ValueError("feature vector must be finite")
    if model.standardization is not None:
        x = standardize_matrix(model.standardization, x)
    score = float(model.raw_score(x))
    label = Label.MALIGNANT if score > 0.5 else Label.BENIGN
    return label, score


def require_both_classes(kind: ClassifierKind, labels: np.ndarray) -> None:
    if np.all(labels == labels[0]):
        raise ValueError(f"{kind.tag}: training data must contain both classes")
