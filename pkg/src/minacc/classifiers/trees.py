"""Decision trees (entropy and variance criteria) and the random forest."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..rng import SplitMix64
from .base import ClassifierKind, Hyperparams, TrainedModel


class SplitCriterion(Enum):
    ENTROPY = "entropy"
    VARIANCE = "variance"


def entropy(class_counts) -> float:
    """Shannon entropy in bits of a two-class count pair; 0*log0 is 0."""
    c0, c1 = class_counts
    if c0 < 0 or c1 < 0:
        raise ValueError("counts must be nonnegative")
    total = c0 + c1
    if total == 0:
        raise ValueError("entropy undefined for an empty node")
    h = 0.0
    for c in (c0, c1):
        if c:
            p = c / total
            h -= p * math.log2(p)
    return h


def _entropy_vec(ones: np.ndarray, counts: np.ndarray) -> np.ndarray:
    p = ones / counts
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        hp = np.where(p > 0, -p * np.log2(p), 0.0)
        hq = np.where(q > 0, -q * np.log2(q), 0.0)
    return hp + hq


def _column_candidates(col: np.ndarray, y: np.ndarray, criterion: SplitCriterion):
    """Best (gain, threshold) for one column, or None if no cut exists.

    Thresholds sit at midpoints between consecutive distinct sorted
    values; for equal gains the lowest threshold wins (argmax keeps the
    first, and candidates ascend).
    """
    n = col.shape[0]
    order = np.argsort(col, kind="stable")
    sv = col[order]
    sy = y[order]
    cut = np.flatnonzero(sv[1:] != sv[:-1])
    if cut.size == 0:
        return None
    prefix_ones = np.cumsum(sy)
    total_ones = float(prefix_ones[-1])
    n_left = (cut + 1).astype(np.float64)
    n_right = n - n_left
    ones_left = prefix_ones[cut].astype(np.float64)
    ones_right = total_ones - ones_left
    if criterion is SplitCriterion.ENTROPY:
        parent = entropy((n - total_ones, total_ones))
        child = (
            n_left * _entropy_vec(ones_left, n_left)
            + n_right * _entropy_vec(ones_right, n_right)
        ) / n
    else:
        p = total_ones / n
        parent = p * (1.0 - p)
        p_left = ones_left / n_left
        p_right = ones_right / n_right
        child = (
            n_left * p_left * (1.0 - p_left) + n_right * p_right * (1.0 - p_right)
        ) / n
    gains = parent - child
    k = int(np.argmax(gains))
    thr = (sv[cut[k]] + sv[cut[k] + 1]) / 2.0
    return float(gains[k]), float(thr)


def best_split(
    X: np.ndarray,
    y: np.ndarray,
    criterion: SplitCriterion,
    feature_indices=None,
) -> tuple[int, float] | None:
    """The (feature, threshold) maximizing gain, or None when nothing helps.

    Ties break toward the lowest feature index, then the lowest
    threshold. Entropy gain is information gain in bits; variance gain is
    the weighted reduction in population variance of the 0/1 targets.
    """
    if X.shape[0] == 0:
        raise ValueError("cannot split an empty node")
    if feature_indices is None:
        feature_indices = range(X.shape[1])
    best_gain = 0.0
    best: tuple[int, float] | None = None
    for f in feature_indices:
        found = _column_candidates(X[:, f], y, criterion)
        if found is None:
            continue
        gain, thr = found
        if gain > best_gain:
            best_gain = gain
            best = (int(f), thr)
    return best


@dataclass(frozen=True)
class TreeNode:
    """Leaf (value = malignant fraction) or internal test x[f] <= threshold."""

    value: float | None = None
    feature_index: int = -1
    threshold: float = 0.0
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.value is not None


def grow_tree(
    X: np.ndarray,
    y: np.ndarray,
    criterion: SplitCriterion,
    max_depth: int | None,
    min_samples_split: int,
    rng: SplitMix64 | None = None,
    feature_subset_size: int | None = None,
    depth: int = 0,
) -> TreeNode:
    """Recursive growth until purity, depth, min-samples, or zero gain.

    When ``feature_subset_size`` is set, each node draws a fresh feature
    subset from ``rng`` (depth-first, left child first), which makes
    forest construction reproducible from its seed alone.
    """
    leaf_value = float(y.mean())
    n, d = X.shape
    if (
        leaf_value in (0.0, 1.0)
        or n < min_samples_split
        or (max_depth is not None and depth >= max_depth)
    ):
        return TreeNode(value=leaf_value)
    if feature_subset_size is not None and feature_subset_size < d:
        assert rng is not None
        feature_indices = rng.sample_indices(d, feature_subset_size)
    else:
        feature_indices = None
    found = best_split(X, y, criterion, feature_indices)
    if found is None:
        return TreeNode(value=leaf_value)
    f, thr = found
    mask = X[:, f] <= thr
    left = grow_tree(
        X[mask], y[mask], criterion, max_depth, min_samples_split,
        rng, feature_subset_size, depth + 1,
    )
    right = grow_tree(
        X[~mask], y[~mask], criterion, max_depth, min_samples_split,
        rng, feature_subset_size, depth + 1,
    )
    return TreeNode(feature_index=f, threshold=thr, left=left, right=right)


def tree_leaf_value(node: TreeNode, x: np.ndarray) -> float:
    while not node.is_leaf:
        node = node.left if x[node.feature_index] <= node.threshold else node.right
    return node.value


@dataclass(frozen=True)
class TreeModel(TrainedModel):
    root: TreeNode = None

    def raw_score(self, x: np.ndarray) -> float:
        return tree_leaf_value(self.root, x)


@dataclass(frozen=True)
class ForestModel(TrainedModel):
    trees: tuple[TreeNode, ...] = ()

    def raw_score(self, x: np.ndarray) -> float:
        """Fraction of trees voting malignant; 0.5 resolves to benign downstream."""
        votes = sum(1 for t in self.trees if tree_leaf_value(t, x) > 0.5)
        return votes / len(self.trees)


def train_tree(kind: ClassifierKind, X: np.ndarray, y: np.ndarray, hp: Hyperparams) -> TreeModel:
    criterion = (
        SplitCriterion.ENTROPY
        if kind is ClassifierKind.DECISION_TREE_ENTROPY
        else SplitCriterion.VARIANCE
    )
    root = grow_tree(X, y, criterion, hp.tree_max_depth, hp.tree_min_samples_split)
    return TreeModel(kind=kind, n_features=X.shape[1], standardization=None, root=root)


def train_forest(X: np.ndarray, y: np.ndarray, hp: Hyperparams) -> ForestModel:
    """Entropy trees on seeded bootstrap draws with per-split feature subsets.

    The single SplitMix64 stream is consumed per tree as: n bootstrap
    draws, then the growth-time subset draws in depth-first order.
    """
    n, d = X.shape
    rng = SplitMix64(hp.seed)
    subset = min(hp.forest_feature_subset, d)
    trees = []
    for _ in range(hp.forest_trees):
        if hp.forest_bootstrap:
            idx = np.array([rng.randbelow(n) for _ in range(n)], dtype=np.int64)
            Xb, yb = X[idx], y[idx]
        else:
            Xb, yb = X, y
        trees.append(
            grow_tree(
                Xb, yb, SplitCriterion.ENTROPY, hp.tree_max_depth,
                hp.tree_min_samples_split, rng, subset,
            )
        )
    return ForestModel(
        kind=ClassifierKind.RANDOM_FOREST,
        n_features=d,
        standardization=None,
        trees=tuple(trees),
    )
