"""Repeated-trial evaluation: run, aggregate, and compare accuracy runs.

Every trial is replayable in isolation: its seed derives from
(master_seed, classifier code, round(1000 * fraction), trial index), and
the split and model seeds derive from the trial seed with suffixes 1 and
2. Trials therefore parallelize without affecting any result.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

from .classifiers import ClassifierKind, Hyperparams, predict, train
from .data import Dataset, Provenance, double_dataset
from .rng import derive_seed
from .splitting import SplitSpec, contaminated_count, leakage_report, random_split


class Phase(Enum):
    ORIGINAL = "original"
    DOUBLED = "doubled"


@dataclass(frozen=True)
class TrialResult:
    """Accuracy of one (classifier, split, seed) trial."""

    classifier: ClassifierKind
    split_spec: SplitSpec
    phase: Phase
    trial_index: int
    correct: int
    test_size: int
    accuracy: float
    contamination_fraction: float


@dataclass(frozen=True)
class RunSummary:
    """Min/mean/max and perfect-accuracy count over one trial batch."""

    classifier: ClassifierKind
    train_fraction: float
    phase: Phase
    rounds: int
    min_accuracy: float
    mean_accuracy: float
    max_accuracy: float
    perfect_count: int
    per_trial: tuple[TrialResult, ...]


@dataclass(frozen=True)
class AccuracyFloorRow:
    input_size: int
    misclassifications: int
    accuracy_percent: float


@dataclass(frozen=True)
class ComparisonVerdict:
    """Winner by best case vs winner by worst case; the worst case decides."""

    method_a: RunSummary
    method_b: RunSummary
    winner_by_max: str  # "a" | "b" | "tie"
    winner_by_min: str
    recommendation: str


def derive_trial_seed(master_seed: int, kind: ClassifierKind, fraction: float, index: int) -> int:
    return derive_seed(master_seed, kind.code, round(fraction * 1000), index)


def run_trial(
    data: Dataset,
    kind: ClassifierKind,
    spec: SplitSpec,
    hp: Hyperparams,
    *,
    trial_index: int = 0,
    double_train_after_split: bool = False,
) -> TrialResult:
    """Split, fit, score the test fold, and attach the leakage measurement.

    With ``double_train_after_split`` the dataset is split first and only
    the training fold is duplicated, which keeps the training-set size of
    a pre-split doubling while making cross-boundary leakage impossible.
    """
    n = len(data)
    labels = data.labels if spec.stratified else None
    split = random_split(n, spec, labels)
    if split.test_indices.size == 0 or split.train_indices.size == 0:
        raise ValueError(
            f"degenerate split for n={n}, train_fraction={spec.train_fraction}"
        )
    train_data = data.subset(split.train_indices)
    if double_train_after_split:
        train_data = double_dataset(train_data)
        contamination = contaminated_count(
            train_data.features, data.features[split.test_indices]
        ) / split.test_indices.size
    else:
        contamination = leakage_report(data, split).contamination_fraction
    model = train(kind, train_data, hp)
    correct = 0
    for idx in split.test_indices:
        label, _ = predict(model, data.features[idx])
        correct += int(label.value == data.labels[idx])
    test_size = int(split.test_indices.size)
    phase = (
        Phase.DOUBLED
        if double_train_after_split or data.provenance is Provenance.DOUBLED
        else Phase.ORIGINAL
    )
    return TrialResult(
        classifier=kind,
        split_spec=spec,
        phase=phase,
        trial_index=trial_index,
        correct=correct,
        test_size=test_size,
        accuracy=correct / test_size,
        contamination_fraction=contamination,
    )


def summarize(trials) -> RunSummary:
    """Aggregate a homogeneous trial batch; mean over exact per-trial ratios."""
    trials = tuple(trials)
    if not trials:
        raise ValueError("cannot summarize zero trials")
    first = trials[0]
    for t in trials:
        if (
            t.classifier is not first.classifier
            or t.split_spec.train_fraction != first.split_spec.train_fraction
            or t.phase is not first.phase
        ):
            raise ValueError("trials mix classifiers, fractions, or phases")
    accuracies = [t.accuracy for t in trials]
    return RunSummary(
        classifier=first.classifier,
        train_fraction=first.split_spec.train_fraction,
        phase=first.phase,
        rounds=len(trials),
        min_accuracy=min(accuracies),
        mean_accuracy=math.fsum(accuracies) / len(accuracies),
        max_accuracy=max(accuracies),
        perfect_count=sum(1 for t in trials if t.correct == t.test_size),
        per_trial=trials,
    )


def resolve_worker_count(explicit: int | None = None) -> int:
    """Explicit argument, else MINACC_THREADS, else available parallelism."""
    if explicit is not None:
        value = explicit
    else:
        env = os.environ.get("MINACC_THREADS")
        if env is None:
            return max(1, os.cpu_count() or 1)
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"MINACC_THREADS must be an integer, got {env!r}") from None
    if value < 1:
        raise ValueError("worker count must be at least 1")
    return value


def run_protocol(
    data: Dataset,
    kinds,
    fractions,
    rounds: int,
    phase: Phase,
    master_seed: int,
    hp: Hyperparams = Hyperparams(),
    *,
    double_after_split: bool = False,
    max_workers: int | None = None,
) -> list[RunSummary]:
    """Run ``rounds`` trials per (classifier, fraction) and summarize each.

    The doubled phase duplicates the dataset before any splitting unless
    ``double_after_split`` asks for the leak-free control. Trials are
    index-seeded, so distributing them over threads changes nothing.
    """
    kinds = list(kinds)
    fractions = list(fractions)
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    if not kinds or not fractions:
        raise ValueError("need at least one classifier and one fraction")
    if double_after_split and phase is not Phase.DOUBLED:
        raise ValueError("double_after_split only applies to the doubled phase")
    if phase is Phase.DOUBLED and not double_after_split:
        base = double_dataset(data)
    else:
        base = data
    tasks = [
        (kind, fraction, i)
        for kind in kinds
        for fraction in fractions
        for i in range(rounds)
    ]

    def one(task) -> TrialResult:
        kind, fraction, i = task
        trial_seed = derive_trial_seed(master_seed, kind, fraction, i)
        spec = SplitSpec(train_fraction=fraction, seed=derive_seed(trial_seed, 1))
        hp_i = replace(hp, seed=derive_seed(trial_seed, 2))
        return run_trial(
            base, kind, spec, hp_i,
            trial_index=i, double_train_after_split=double_after_split,
        )

    workers = resolve_worker_count(max_workers)
    if workers == 1 or len(tasks) == 1:
        results = [one(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, tasks))

    summaries = []
    per_combo = rounds
    pos = 0
    for kind in kinds:
        for fraction in fractions:
            batch = sorted(results[pos : pos + per_combo], key=lambda t: t.trial_index)
            summaries.append(summarize(batch))
            pos += per_combo
    return summaries


def accuracy_floor_table(inputs) -> list[AccuracyFloorRow]:
    """Accuracy 100*(n-m)/n for each (test size n, misclassification count m)."""
    rows = []
    for n, m in inputs:
        if n < 1:
            raise ValueError("input size must be at least 1")
        if not 0 <= m <= n:
            raise ValueError(f"misclassifications {m} out of range for n={n}")
        rows.append(AccuracyFloorRow(n, m, 100.0 * (n - m) / n))
    return rows


def _argmax_pair(va: float, vb: float) -> str:
    if va > vb:
        return "a"
    if vb > va:
        return "b"
    return "tie"


def compare_methods(a: RunSummary, b: RunSummary) -> ComparisonVerdict:
    """Rank two runs; the recommendation follows the higher minimum accuracy."""
    if a.phase is not b.phase or a.train_fraction != b.train_fraction:
        raise ValueError("can only compare runs with matching phase and fraction")
    winner_by_min = _argmax_pair(a.min_accuracy, b.min_accuracy)
    return ComparisonVerdict(
        method_a=a,
        method_b=b,
        winner_by_max=_argmax_pair(a.max_accuracy, b.max_accuracy),
        winner_by_min=winner_by_min,
        recommendation=winner_by_min,
    )
