"""One-hidden-layer network: tanh units into a sigmoid output, log-loss."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..data import StandardizationParams
from ..rng import SplitMix64
from .base import ClassifierKind, Hyperparams, TrainedModel
from .linear import _softplus, sigmoid


def mlp_param_count(d: int, hidden: int) -> int:
    return d * hidden + hidden + hidden + 1


def unpack_mlp(params: np.ndarray, d: int, hidden: int):
    """Views into the flat layout [W1 (d*h row-major), b1 (h), w2 (h), b2]."""
    if params.shape != (mlp_param_count(d, hidden),):
        raise ValueError("params length does not match the architecture")
    k = d * hidden
    W1 = params[:k].reshape(d, hidden)
    b1 = params[k : k + hidden]
    w2 = params[k + hidden : k + 2 * hidden]
    b2 = params[-1]
    return W1, b1, w2, b2


def init_mlp_params(d: int, hidden: int, seed: int) -> np.ndarray:
    """Weights uniform(-0.5, 0.5) scaled by 1/sqrt(fan_in); biases zero.

    Draw order: W1 entries row-major, then w2; fan_in is d for the hidden
    layer and ``hidden`` for the output.
    """
    rng = SplitMix64(seed)
    params = np.zeros(mlp_param_count(d, hidden))
    scale1 = 1.0 / math.sqrt(d)
    for i in range(d * hidden):
        params[i] = (rng.next_float() - 0.5) * scale1
    scale2 = 1.0 / math.sqrt(hidden)
    base = d * hidden + hidden
    for i in range(hidden):
        params[base + i] = (rng.next_float() - 0.5) * scale2
    return params


def _forward(params: np.ndarray, X: np.ndarray, hidden: int):
    W1, b1, w2, b2 = unpack_mlp(params, X.shape[1], hidden)
    H = np.tanh(X @ W1 + b1)
    z = H @ w2 + b2
    return H, z


def mlp_loss(params: np.ndarray, X: np.ndarray, y: np.ndarray, hidden: int) -> float:
    _, z = _forward(params, X, hidden)
    return float(np.mean(_softplus(z) - y * z))


def mlp_gradient(params: np.ndarray, X: np.ndarray, y: np.ndarray, hidden: int) -> np.ndarray:
    """Exact gradient of the mean log-loss by backpropagation."""
    n, d = X.shape
    W1, b1, w2, b2 = unpack_mlp(params, d, hidden)
    H = np.tanh(X @ W1 + b1)
    z = H @ w2 + b2
    delta = (sigmoid(z) - y) / n
    g_w2 = H.T @ delta
    g_b2 = delta.sum()
    d_pre = np.outer(delta, w2) * (1.0 - H * H)
    g_W1 = X.T @ d_pre
    g_b1 = d_pre.sum(axis=0)
    return np.concatenate([g_W1.ravel(), g_b1, g_w2, [g_b2]])


@dataclass(frozen=True)
class MlpModel(TrainedModel):
    params: np.ndarray = None
    hidden: int = 0

    def raw_score(self, x: np.ndarray) -> float:
        W1, b1, w2, b2 = unpack_mlp(self.params, self.n_features, self.hidden)
        h = np.tanh(x @ W1 + b1)
        return float(sigmoid(h @ w2 + b2))


def train_mlp(
    X: np.ndarray, y: np.ndarray, hp: Hyperparams, std: StandardizationParams
) -> MlpModel:
    params = init_mlp_params(X.shape[1], hp.mlp_hidden, hp.seed)
    yf = y.astype(np.float64)
    for _ in range(hp.mlp_epochs):
        params = params - hp.mlp_lr * mlp_gradient(params, X, yf, hp.mlp_hidden)
    return MlpModel(
        kind=ClassifierKind.NEURAL_NETWORK,
        n_features=X.shape[1],
        standardization=std,
        params=params,
        hidden=hp.mlp_hidden,
    )
