"""Seeded train/test splitting and the cross-boundary leakage audit."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset, find_duplicates
from .rng import SplitMix64


@dataclass(frozen=True)
class SplitSpec:
    """How to cut a dataset: fraction sent to train, seed, stratification."""

    train_fraction: float
    seed: int
    stratified: bool = False

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must lie strictly between 0 and 1")


@dataclass(frozen=True)
class SplitResult:
    train_indices: np.ndarray
    test_indices: np.ndarray

    def __post_init__(self):
        for name in ("train_indices", "test_indices"):
            arr = np.asarray(getattr(self, name), dtype=np.int64).copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class LeakageReport:
    """How many test records have an exact feature twin in the train fold."""

    contaminated_test_count: int
    test_size: int
    contamination_fraction: float
    duplicate_group_count: int


def _train_size(n: int, fraction: float) -> int:
    # round() is ties-to-even, which pins 0.5*569 -> 284 and 0.7*569 -> 398.
    return round(fraction * n)


def _cut(perm: list[int], n_train: int) -> tuple[np.ndarray, np.ndarray]:
    return (
        np.sort(np.array(perm[:n_train], dtype=np.int64)),
        np.sort(np.array(perm[n_train:], dtype=np.int64)),
    )


def random_split(n: int, spec: SplitSpec, labels=None) -> SplitResult:
    """Cut a seeded uniform permutation of range(n) at round(fraction * n).

    Deterministic: the permutation comes from a Fisher-Yates shuffle driven
    by SplitMix64(spec.seed). Stratified mode shuffles and cuts each class
    separately (class 0 first, then class 1) and merges the pieces. Both
    index arrays come back sorted ascending.
    """
    if n < 2:
        raise ValueError("need at least 2 records to split")
    rng = SplitMix64(spec.seed)
    if not spec.stratified:
        perm = list(range(n))
        rng.shuffle(perm)
        train, test = _cut(perm, _train_size(n, spec.train_fraction))
        return SplitResult(train, test)

    if labels is None:
        raise ValueError("stratified splitting requires labels")
    labels = np.asarray(labels)
    if labels.shape != (n,):
        raise ValueError("labels must have one entry per record")
    classes = np.unique(labels)
    if classes.size < 2:
        raise ValueError("stratified splitting requires both classes present")
    train_parts, test_parts = [], []
    for cls in classes:
        members = np.flatnonzero(labels == cls).tolist()
        rng.shuffle(members)
        tr, te = _cut(members, _train_size(len(members), spec.train_fraction))
        train_parts.append(tr)
        test_parts.append(te)
    return SplitResult(
        np.sort(np.concatenate(train_parts)), np.sort(np.concatenate(test_parts))
    )


def contaminated_count(train_features: np.ndarray, test_features: np.ndarray) -> int:
    """Test rows whose bytes match at least one train row exactly."""
    train_keys = {row.tobytes() for row in np.ascontiguousarray(train_features)}
    return sum(1 for row in np.ascontiguousarray(test_features) if row.tobytes() in train_keys)


def leakage_report(data: Dataset, split: SplitResult) -> LeakageReport:
    """Measure exact-duplicate contamination across the split boundary."""
    n = len(data)
    for arr in (split.train_indices, split.test_indices):
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError("split indices out of range for dataset")
    test_size = int(split.test_indices.size)
    if test_size == 0:
        raise ValueError("cannot audit an empty test fold")
    count = contaminated_count(
        data.features[split.train_indices], data.features[split.test_indices]
    )
    return LeakageReport(
        contaminated_test_count=count,
        test_size=test_size,
        contamination_fraction=count / test_size,
        duplicate_group_count=len(find_duplicates(data)),
    )
