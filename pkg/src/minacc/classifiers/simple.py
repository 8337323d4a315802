"""Instance- and statistics-based baselines: k-NN and Gaussian Naive Bayes."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..data import StandardizationParams
from .base import ClassifierKind, Hyperparams, TrainedModel

NB_VARIANCE_FLOOR = 1e-9


@dataclass(frozen=True)
class KnnModel(TrainedModel):
    train_features: np.ndarray = None
    train_labels: np.ndarray = None
    k: int = 5

    def raw_score(self, x: np.ndarray) -> float:
        """Malignant fraction among the k nearest stored points.

        Distance ties resolve toward the lower training index (stable
        argsort), so scoring is deterministic on duplicated data.
        """
        d2 = np.sum((self.train_features - x) ** 2, axis=1)
        nearest = np.argsort(d2, kind="stable")[: self.k]
        return float(self.train_labels[nearest].mean())


def train_knn(
    X: np.ndarray, y: np.ndarray, hp: Hyperparams, params: StandardizationParams
) -> KnnModel:
    if hp.knn_k > X.shape[0]:
        raise ValueError(f"knn: k={hp.knn_k} exceeds training size {X.shape[0]}")
    return KnnModel(
        kind=ClassifierKind.K_NEAREST_NEIGHBOR,
        n_features=X.shape[1],
        standardization=params,
        train_features=X,
        train_labels=y,
        k=hp.knn_k,
    )


@dataclass(frozen=True)
class NaiveBayesModel(TrainedModel):
    """Per-class Gaussian feature likelihoods with class priors.

    Variances are population variances floored at 1e-9 so duplicated or
    constant strata cannot divide by zero.
    """

    log_priors: np.ndarray = None    # (2,) for classes 0, 1
    means: np.ndarray = None         # (2, d)
    variances: np.ndarray = None     # (2, d)

    def raw_score(self, x: np.ndarray) -> float:
        diff = x - self.means
        log_lik = -0.5 * np.sum(
            np.log(2.0 * math.pi * self.variances) + diff * diff / self.variances,
            axis=1,
        )
        joint = self.log_priors + log_lik
        # posterior of class 1 = 1 / (1 + exp(joint0 - joint1)), overflow-safe
        delta = float(joint[0] - joint[1])
        if delta > 0:
            e = math.exp(-delta)
            return e / (1.0 + e)
        return 1.0 / (1.0 + math.exp(delta))


def train_naive_bayes(X: np.ndarray, y: np.ndarray, hp: Hyperparams) -> NaiveBayesModel:
    n = X.shape[0]
    means, variances, priors = [], [], []
    for cls in (0, 1):
        rows = X[y == cls]
        priors.append(rows.shape[0] / n)
        means.append(rows.mean(axis=0))
        variances.append(np.maximum(rows.var(axis=0), NB_VARIANCE_FLOOR))
    return NaiveBayesModel(
        kind=ClassifierKind.NAIVE_BAYES,
        n_features=X.shape[1],
        standardization=None,
        log_priors=np.log(np.array(priors)),
        means=np.stack(means),
        variances=np.stack(variances),
    )
