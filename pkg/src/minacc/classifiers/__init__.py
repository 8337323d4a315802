"""Eight from-scratch classifiers behind one train/predict contract."""

from __future__ import annotations

import numpy as np

from ..data import Dataset, fit_standardizer, standardize_matrix
from .base import (
    STANDARDIZED_KINDS,
    ClassifierKind,
    Hyperparams,
    TrainedModel,
    predict,
    require_both_classes,
)
from .linear import (
    logreg_gradient,
    logreg_loss,
    svm_lambda,
    svm_objective,
    svm_subgradient,
    train_logistic,
    train_svm,
)
from .neural import mlp_gradient, mlp_loss, train_mlp
from .simple import train_knn, train_naive_bayes
from .trees import (
    SplitCriterion,
    TreeNode,
    best_split,
    entropy,
    grow_tree,
    train_forest,
    train_tree,
)

__all__ = [
    "ClassifierKind",
    "Hyperparams",
    "TrainedModel",
    "SplitCriterion",
    "TreeNode",
    "best_split",
    "entropy",
    "grow_tree",
    "train",
    "predict",
    "loss_gradient",
    "training_loss",
    "STANDARDIZED_KINDS",
]

# Kinds that tolerate a single-class training fold (pure leaves / votes).
_SINGLE_CLASS_OK = frozenset(
    {
        ClassifierKind.K_NEAREST_NEIGHBOR,
        ClassifierKind.DECISION_TREE_ENTROPY,
        ClassifierKind.DECISION_TREE_REGRESSOR,
        ClassifierKind.RANDOM_FOREST,
    }
)


def train(kind: ClassifierKind, train_data: Dataset, hp: Hyperparams) -> TrainedModel:
    """Fit one classifier on a dataset; deterministic given (data, hp).

    Scale-sensitive kinds (k-NN, SVM, logistic regression, neural network)
    fit a z-score standardizer on the training fold and bake it into the
    model, so prediction always takes raw feature vectors.
    """
    if len(train_data) < 2 and kind not in _SINGLE_CLASS_OK:
        raise ValueError(f"{kind.tag}: need at least 2 training samples")
    y = train_data.labels
    if kind not in _SINGLE_CLASS_OK:
        require_both_classes(kind, y)
    if kind in STANDARDIZED_KINDS:
        params = fit_standardizer(train_data)
        X = standardize_matrix(params, train_data.features)
    else:
        params = None
        X = train_data.features

    if kind is ClassifierKind.K_NEAREST_NEIGHBOR:
        return train_knn(X, y, hp, params)
    if kind is ClassifierKind.NAIVE_BAYES:
        return train_naive_bayes(X, y, hp)
    if kind is ClassifierKind.LOGISTIC_REGRESSION:
        return train_logistic(X, y, hp, params)
    if kind is ClassifierKind.SUPPORT_VECTOR_MACHINE:
        return train_svm(X, y, hp, params)
    if kind is ClassifierKind.NEURAL_NETWORK:
        return train_mlp(X, y, hp, params)
    if kind is ClassifierKind.RANDOM_FOREST:
        return train_forest(X, y, hp)
    if kind in (ClassifierKind.DECISION_TREE_ENTROPY, ClassifierKind.DECISION_TREE_REGRESSOR):
        return train_tree(kind, X, y, hp)
    raise ValueError(f"unhandled classifier kind {kind}")


_GRADIENT_KINDS = (
    ClassifierKind.LOGISTIC_REGRESSION,
    ClassifierKind.NEURAL_NETWORK,
    ClassifierKind.SUPPORT_VECTOR_MACHINE,
)


def training_loss(
    kind: ClassifierKind,
    params: np.ndarray,
    X: np.ndarray,
    y: np.ndarray,
    hp: Hyperparams = Hyperparams(),
) -> float:
    """The objective each gradient-trained kind descends, at ``params``."""
    params = np.asarray(params, dtype=np.float64)
    yf = np.asarray(y, dtype=np.float64)
    if kind is ClassifierKind.LOGISTIC_REGRESSION:
        return logreg_loss(params, X, yf)
    if kind is ClassifierKind.NEURAL_NETWORK:
        return mlp_loss(params, X, yf, hp.mlp_hidden)
    if kind is ClassifierKind.SUPPORT_VECTOR_MACHINE:
        y_pm = np.where(yf == 1, 1.0, -1.0)
        return svm_objective(params, X, y_pm, svm_lambda(hp.svm_c, X.shape[0]))
    raise ValueError(f"{kind.tag} has no gradient-descent objective")


def loss_gradient(
    kind: ClassifierKind,
    params: np.ndarray,
    X: np.ndarray,
    y: np.ndarray,
    hp: Hyperparams = Hyperparams(),
) -> np.ndarray:
    """Analytic gradient (subgradient for the hinge) of ``training_loss``."""
    params = np.asarray(params, dtype=np.float64)
    yf = np.asarray(y, dtype=np.float64)
    if kind is ClassifierKind.LOGISTIC_REGRESSION:
        return logreg_gradient(params, X, yf)
    if kind is ClassifierKind.NEURAL_NETWORK:
        return mlp_gradient(params, X, yf, hp.mlp_hidden)
    if kind is ClassifierKind.SUPPORT_VECTOR_MACHINE:
        y_pm = np.where(yf == 1, 1.0, -1.0)
        return svm_subgradient(params, X, y_pm, svm_lambda(hp.svm_c, X.shape[0]))
    raise ValueError(f"{kind.tag} has no gradient-descent objective")
