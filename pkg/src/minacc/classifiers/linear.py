"""Linear models trained by gradient methods: logistic regression and SVM.

Both operate on standardized features. For the gradient-check interface,
logistic regression flattens its parameters as ``[w_0..w_{d-1}, bias]``;
the SVM carries no intercept, so its parameter vector is just ``w``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..data import StandardizationParams
from ..rng import SplitMix64
from .base import ClassifierKind, Hyperparams, TrainedModel


def sigmoid(z):
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _softplus(z: np.ndarray) -> np.ndarray:
    # log(1 + e^z) without overflow
    return np.maximum(z, 0.0) + np.log1p(np.exp(-np.abs(z)))


def logreg_loss(params: np.ndarray, X: np.ndarray, y: np.ndarray) -> float:
    """Mean binary log-loss at params = [w, b]."""
    w, b = params[:-1], params[-1]
    z = X @ w + b
    return float(np.mean(_softplus(z) - y * z))


def logreg_gradient(params: np.ndarray, X: np.ndarray, y: np.ndarray) -> np.ndarray:
    if params.shape != (X.shape[1] + 1,):
        raise ValueError("params length must be n_features + 1")
    w, b = params[:-1], params[-1]
    p = sigmoid(X @ w + b)
    resid = (p - y) / X.shape[0]
    return np.concatenate([X.T @ resid, [resid.sum()]])


@dataclass(frozen=True)
class LogisticModel(TrainedModel):
    weights: np.ndarray = None
    bias: float = 0.0

    def raw_score(self, x: np.ndarray) -> float:
        return float(sigmoid(x @ self.weights + self.bias))


def train_logistic(
    X: np.ndarray, y: np.ndarray, hp: Hyperparams, params: StandardizationParams
) -> LogisticModel:
    """Full-batch gradient descent from zero init, fixed epoch budget."""
    theta = np.zeros(X.shape[1] + 1)
    yf = y.astype(np.float64)
    for _ in range(hp.logreg_epochs):
        theta = theta - hp.logreg_lr * logreg_gradient(theta, X, yf)
    return LogisticModel(
        kind=ClassifierKind.LOGISTIC_REGRESSION,
        n_features=X.shape[1],
        standardization=params,
        weights=theta[:-1],
        bias=float(theta[-1]),
    )


def svm_lambda(c: float, n: int) -> float:
    return 1.0 / (c * n)


def svm_objective(params: np.ndarray, X: np.ndarray, y_pm: np.ndarray, lam: float) -> float:
    """0.5 * lam * ||w||^2 + mean hinge loss. No intercept: the classic
    primal form on standardized (centred) features."""
    margins = y_pm * (X @ params)
    hinge = np.maximum(0.0, 1.0 - margins)
    return float(0.5 * lam * (params @ params) + hinge.mean())


def svm_subgradient(params: np.ndarray, X: np.ndarray, y_pm: np.ndarray, lam: float) -> np.ndarray:
    """Full-batch subgradient; at the hinge kink the zero branch is taken."""
    if params.shape != (X.shape[1],):
        raise ValueError("params length must equal n_features")
    n = X.shape[0]
    margins = y_pm * (X @ params)
    viol = margins < 1.0
    grad = lam * params
    if np.any(viol):
        grad = grad - (y_pm[viol, None] * X[viol]).sum(axis=0) / n
    return grad


@dataclass(frozen=True)
class SvmModel(TrainedModel):
    weights: np.ndarray = None

    def raw_score(self, x: np.ndarray) -> float:
        """Sigmoid of the signed margin, so score > 0.5 iff margin > 0."""
        margin = float(x @ self.weights)
        if margin >= 0:
            return 1.0 / (1.0 + math.exp(-margin))
        e = math.exp(margin)
        return e / (1.0 + e)


def train_svm(
    X: np.ndarray, y: np.ndarray, hp: Hyperparams, params: StandardizationParams
) -> SvmModel:
    """Epoch-shuffled single-sample subgradient descent, step 1/(lam*t).

    Labels map to +/-1. One persistent index array is reshuffled at the
    start of every epoch from SplitMix64(hp.seed); the step counter t runs
    across epochs.
    """
    n, d = X.shape
    y_pm = np.where(y == 1, 1.0, -1.0)
    lam = svm_lambda(hp.svm_c, n)
    rng = SplitMix64(hp.seed)
    w = np.zeros(d)
    order = list(range(n))
    t = 0
    for _ in range(hp.svm_epochs):
        rng.shuffle(order)
        for i in order:
            t += 1
            xi = X[i]
            yi = y_pm[i]
            violated = yi * (w @ xi) < 1.0
            w *= 1.0 - 1.0 / t  # = 1 - eta * lam
            if violated:
                w += (yi / (lam * t)) * xi
    return SvmModel(
        kind=ClassifierKind.SUPPORT_VECTOR_MACHINE,
        n_features=d,
        standardization=params,
        weights=w,
    )
