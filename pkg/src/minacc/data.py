"""WDBC dataset handling: parsing, transforms, and duplicate auditing.

The on-disk format is the UCI layout: one record per line, 32
comma-separated fields (``id,diagnosis,f1,...,f30``), diagnosis ``M`` or
``B``, no header. All datasets are immutable once constructed.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .rng import SplitMix64

N_FEATURES = 30

# Canonical-file facts used by validation and the --expect-canonical check.
CANONICAL_SIZE = 569
CANONICAL_MALIGNANT = 212
CANONICAL_BENIGN = 357
# SHA-256 over (label byte + IEEE-754 feature bytes) per record, in file
# order. Identifier-insensitive, so any faithful copy of the canonical
# data matches regardless of formatting.
CANONICAL_FINGERPRINT = "1e06bac879ec34f8ed941635ce68ff3e2d5312773dd5d3af692da3361e2431cd"


class DataError(Exception):
    """Input data is unusable (unreadable, malformed, or not as declared)."""


class WdbcParseError(DataError):
    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class CanonicalMismatchError(DataError):
    pass


class Label(Enum):
    BENIGN = 0
    MALIGNANT = 1

    @property
    def letter(self) -> str:
        return "M" if self is Label.MALIGNANT else "B"


class Provenance(Enum):
    ORIGINAL = "original"
    DOUBLED = "doubled"
    AUGMENTED = "augmented"


@dataclass(frozen=True)
class Sample:
    """One patient record: integer id, class label, 30 measurements."""

    id: int
    label: Label
    features: np.ndarray

    def __post_init__(self):
        feats = np.asarray(self.features, dtype=np.float64)
        if feats.ndim != 1:
            raise ValueError("features must be a 1-D vector")
        if not np.all(np.isfinite(feats)):
            raise ValueError("features must be finite")
        feats = feats.copy()
        feats.flags.writeable = False
        object.__setattr__(self, "features", feats)


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = arr.copy()
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class Dataset:
    """An ordered, immutable collection of samples, stored columnar.

    ``labels`` holds 1 for malignant and 0 for benign; ``features`` is the
    (n, d) float64 matrix in record order.
    """

    ids: np.ndarray
    labels: np.ndarray
    features: np.ndarray
    provenance: Provenance = Provenance.ORIGINAL

    def __post_init__(self):
        ids = np.asarray(self.ids, dtype=np.int64)
        labels = np.asarray(self.labels, dtype=np.int64)
        feats = np.asarray(self.features, dtype=np.float64)
        if feats.ndim != 2:
            raise ValueError("features must be a 2-D matrix")
        n = feats.shape[0]
        if ids.shape != (n,) or labels.shape != (n,):
            raise ValueError("ids, labels, and features disagree on length")
        if not np.all((labels == 0) | (labels == 1)):
            raise ValueError("labels must be 0 (benign) or 1 (malignant)")
        if n and not np.all(np.isfinite(feats)):
            raise ValueError("features must be finite")
        object.__setattr__(self, "ids", _frozen(ids))
        object.__setattr__(self, "labels", _frozen(labels))
        object.__setattr__(self, "features", _frozen(feats))

    def __len__(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def sample(self, i: int) -> Sample:
        return Sample(int(self.ids[i]), Label(int(self.labels[i])), self.features[i])

    def __iter__(self):
        return (self.sample(i) for i in range(len(self)))

    @property
    def samples(self) -> tuple[Sample, ...]:
        return tuple(self)

    def class_counts(self) -> tuple[int, int]:
        """(malignant, benign) counts."""
        m = int(np.count_nonzero(self.labels == 1))
        return m, len(self) - m

    def subset(self, indices) -> "Dataset":
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(self.ids[idx], self.labels[idx], self.features[idx], self.provenance)

    @staticmethod
    def from_samples(samples, provenance: Provenance = Provenance.ORIGINAL) -> "Dataset":
        samples = list(samples)
        if not samples:
            raise ValueError("cannot build a dataset from zero samples")
        return Dataset(
            np.array([s.id for s in samples], dtype=np.int64),
            np.array([s.label.value for s in samples], dtype=np.int64),
            np.stack([s.features for s in samples]),
            provenance,
        )


def parse_wdbc(text: str) -> Dataset:
    """Parse WDBC-format text into a Dataset with provenance ``original``.

    Blank lines are skipped; any malformed line raises WdbcParseError
    carrying its 1-based line number.
    """
    ids: list[int] = []
    labels: list[int] = []
    rows: list[list[float]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != 2 + N_FEATURES:
            raise WdbcParseError(
                lineno, f"expected {2 + N_FEATURES} fields, got {len(fields)}"
            )
        try:
            record_id = int(fields[0])
        except ValueError:
            raise WdbcParseError(lineno, f"bad id {fields[0]!r}") from None
        diagnosis = fields[1].strip()
        if diagnosis == "M":
            label = 1
        elif diagnosis == "B":
            label = 0
        else:
            raise WdbcParseError(lineno, f"unknown diagnosis {diagnosis!r}")
        row = []
        for field in fields[2:]:
            try:
                value = float(field)
            except ValueError:
                raise WdbcParseError(lineno, f"bad number {field!r}") from None
            if not math.isfinite(value):
                raise WdbcParseError(lineno, f"non-finite value {field!r}")
            row.append(value)
        ids.append(record_id)
        labels.append(label)
        rows.append(row)
    if not rows:
        raise WdbcParseError(0, "empty input")
    return Dataset(
        np.array(ids, dtype=np.int64),
        np.array(labels, dtype=np.int64),
        np.array(rows, dtype=np.float64),
        Provenance.ORIGINAL,
    )


def load_wdbc(path) -> Dataset:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    return parse_wdbc(text)


def serialize_wdbc(data: Dataset) -> str:
    """Render a dataset back to WDBC text.

    Features are written with repr(), the shortest decimal that parses
    back to the identical float64, so parse(serialize(d)) reproduces d
    bit for bit.
    """
    lines = []
    for i in range(len(data)):
        letter = "M" if data.labels[i] == 1 else "B"
        feats = ",".join(repr(float(v)) for v in data.features[i])
        lines.append(f"{int(data.ids[i])},{letter},{feats}")
    return "\n".join(lines) + "\n"


def write_wdbc(data: Dataset, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(serialize_wdbc(data))


def dataset_fingerprint(data: Dataset) -> str:
    """Content hash over labels and feature bits, ignoring ids."""
    h = hashlib.sha256()
    for i in range(len(data)):
        h.update(b"M" if data.labels[i] == 1 else b"B")
        h.update(data.features[i].tobytes())
    return h.hexdigest()


def assert_canonical(data: Dataset) -> None:
    """Raise CanonicalMismatchError unless ``data`` is the canonical WDBC set."""
    m, b = data.class_counts()
    if len(data) != CANONICAL_SIZE or m != CANONICAL_MALIGNANT or b != CANONICAL_BENIGN:
        raise CanonicalMismatchError(
            f"expected canonical WDBC (569 records, 212 M / 357 B); "
            f"got {len(data)} records, {m} M / {b} B"
        )
    fp = dataset_fingerprint(data)
    if fp != CANONICAL_FINGERPRINT:
        raise CanonicalMismatchError(
            f"content fingerprint {fp} does not match the canonical WDBC data"
        )


@dataclass(frozen=True)
class StandardizationParams:
    """Per-column z-score parameters fitted on training data only."""

    means: np.ndarray
    stds: np.ndarray

    def __post_init__(self):
        means = np.asarray(self.means, dtype=np.float64)
        stds = np.asarray(self.stds, dtype=np.float64)
        if means.shape != stds.shape or means.ndim != 1:
            raise ValueError("means and stds must be matching 1-D vectors")
        if np.any(stds <= 0):
            raise ValueError("standard deviations must be positive")
        object.__setattr__(self, "means", _frozen(means))
        object.__setattr__(self, "stds", _frozen(stds))


DEGENERATE_STD = 1e-12


def fit_standardizer(train: Dataset) -> StandardizationParams:
    """Column means and population standard deviations of the training fold.

    Columns with std below 1e-12 get std 1 so applying the transform
    leaves them centred but not blown up.
    """
    if len(train) == 0:
        raise ValueError("cannot fit a standardizer on an empty dataset")
    means = train.features.mean(axis=0)
    stds = train.features.std(axis=0)
    stds = np.where(stds < DEGENERATE_STD, 1.0, stds)
    return StandardizationParams(means, stds)


def standardize_matrix(params: StandardizationParams, features: np.ndarray) -> np.ndarray:
    features = np.asarray(features, dtype=np.float64)
    if features.shape[-1] != params.means.shape[0]:
        raise ValueError(
            f"feature dimension {features.shape[-1]} does not match "
            f"standardizer dimension {params.means.shape[0]}"
        )
    return (features - params.means) / params.stds


def apply_standardizer(params: StandardizationParams, data: Dataset) -> Dataset:
    """Transform every feature column; ids, labels, and order unchanged."""
    return Dataset(
        data.ids, data.labels, standardize_matrix(params, data.features), data.provenance
    )


def double_dataset(data: Dataset) -> Dataset:
    """The dataset followed by an exact copy of itself."""
    if len(data) == 0:
        raise ValueError("cannot double an empty dataset")
    return Dataset(
        np.concatenate([data.ids, data.ids]),
        np.concatenate([data.labels, data.labels]),
        np.concatenate([data.features, data.features]),
        Provenance.DOUBLED,
    )


def crossover_augment(data: Dataset, offspring_count: int, seed: int) -> Dataset:
    """Append offspring built by uniform crossover of same-class parents.

    Per offspring the generator draws, in order: the class (0 -> malignant,
    1 -> benign), two distinct parent positions within that class, then one
    parent choice per feature position (0 -> parent A). Offspring ids
    continue from the maximum existing id.
    """
    if offspring_count <= 0:
        raise ValueError("offspring_count must be positive")
    by_class = {
        1: np.flatnonzero(data.labels == 1),
        0: np.flatnonzero(data.labels == 0),
    }
    for label_value, members in by_class.items():
        if len(members) < 2:
            raise ValueError(
                f"crossover needs at least 2 samples of class "
                f"{Label(label_value).name.lower()}, found {len(members)}"
            )
    rng = SplitMix64(seed)
    d = data.n_features
    next_id = int(data.ids.max()) + 1
    new_ids, new_labels, new_rows = [], [], []
    for j in range(offspring_count):
        label_value = 1 if rng.randbelow(2) == 0 else 0
        members = by_class[label_value]
        a = rng.randbelow(len(members))
        b = rng.randbelow(len(members) - 1)
        if b >= a:
            b += 1
        pa = data.features[members[a]]
        pb = data.features[members[b]]
        child = np.empty(d, dtype=np.float64)
        for pos in range(d):
            child[pos] = pa[pos] if rng.randbelow(2) == 0 else pb[pos]
        new_ids.append(next_id + j)
        new_labels.append(label_value)
        new_rows.append(child)
    return Dataset(
        np.concatenate([data.ids, np.array(new_ids, dtype=np.int64)]),
        np.concatenate([data.labels, np.array(new_labels, dtype=np.int64)]),
        np.concatenate([data.features, np.stack(new_rows)]),
        Provenance.AUGMENTED,
    )


@dataclass(frozen=True)
class DuplicateGroup:
    """Indices sharing a bit-identical feature vector, with their labels."""

    indices: tuple[int, ...]
    labels: tuple[Label, ...]


def find_duplicates(data: Dataset) -> list[DuplicateGroup]:
    """Group indices whose feature rows are exactly equal, byte for byte.

    Ids and labels do not participate in matching; groups of one are
    dropped. Groups come back ordered by their first member.
    """
    seen: dict[bytes, list[int]] = {}
    for i in range(len(data)):
        seen.setdefault(data.features[i].tobytes(), []).append(i)
    groups = []
    for members in seen.values():
        if len(members) > 1:
            groups.append(
                DuplicateGroup(
                    tuple(members),
                    tuple(Label(int(data.labels[i])) for i in members),
                )
            )
    groups.sort(key=lambda g: g.indices[0])
    return groups
