"""Report assembly and emission: verified JSON plus plot-ready CSV traces.

Everything printed in a report is recomputable from the per-trial traces
it carries; ``verify_report`` asserts exactly that before anything is
written.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .classifiers import ClassifierKind, Hyperparams
from .protocol import Phase, RunSummary, TrialResult, summarize
from .splitting import SplitSpec

SCHEMA_VERSION = 1

SEED_DERIVATION = (
    "trial_seed = splitmix64_absorb(master_seed, classifier_code, "
    "round(1000*train_fraction), trial_index); "
    "split_seed = splitmix64_absorb(trial_seed, 1); "
    "model_seed = splitmix64_absorb(trial_seed, 2)"
)


class ReportVerificationError(RuntimeError):
    """A report's aggregates disagree with its own per-trial traces."""


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a protocol run's numbers."""

    data_path: str
    classifiers: tuple[ClassifierKind, ...]
    fractions: tuple[float, ...]
    rounds: int = 100
    phase: Phase = Phase.ORIGINAL
    master_seed: int = 42
    double_after_split: bool = False
    hyperparams: Hyperparams = field(default_factory=Hyperparams)

    def __post_init__(self):
        if self.rounds < 1:
            raise ValueError("rounds must be at least 1")
        if not self.classifiers or not self.fractions:
            raise ValueError("need at least one classifier and one fraction")

    def as_dict(self) -> dict:
        return {
            "data_path": self.data_path,
            "classifiers": [k.tag for k in self.classifiers],
            "fractions": list(self.fractions),
            "rounds": self.rounds,
            "phase": self.phase.value,
            "double_after_split": self.double_after_split,
            "master_seed": self.master_seed,
            "hyperparams": asdict(self.hyperparams),
        }


def percent_display(value: float) -> str:
    """Accuracy ratio as a percent string with 8 decimals."""
    return f"{100.0 * value:.8f}"


def trace_key(kind: ClassifierKind, fraction: float, phase: Phase) -> str:
    return f"{kind.slug}_{fraction:g}_{phase.value}"


def _summary_block(s: RunSummary) -> dict:
    contamination = [t.contamination_fraction for t in s.per_trial]
    return {
        "classifier": s.classifier.tag,
        "fraction": s.train_fraction,
        "phase": s.phase.value,
        "rounds": s.rounds,
        "min_accuracy": s.min_accuracy,
        "mean_accuracy": s.mean_accuracy,
        "max_accuracy": s.max_accuracy,
        "min_accuracy_pct": percent_display(s.min_accuracy),
        "mean_accuracy_pct": percent_display(s.mean_accuracy),
        "max_accuracy_pct": percent_display(s.max_accuracy),
        "perfect_count": s.perfect_count,
        "mean_contamination": math.fsum(contamination) / len(contamination),
    }


def _trial_row(t: TrialResult) -> dict:
    return {
        "trial_index": t.trial_index,
        "correct": t.correct,
        "test_size": t.test_size,
        "accuracy": t.accuracy,
        "contamination": t.contamination_fraction,
    }


def build_report(
    config,
    summaries: list[RunSummary],
    *,
    include_timestamp: bool = True,
) -> dict:
    config_echo = config.as_dict() if isinstance(config, RunConfig) else dict(config)
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "minacc", "version": __version__},
        "config": dict(config_echo, seed_derivation=SEED_DERIVATION),
        "summaries": [_summary_block(s) for s in summaries],
        "trials": {
            trace_key(s.classifier, s.train_fraction, s.phase): [
                _trial_row(t) for t in s.per_trial
            ]
            for s in summaries
        },
    }
    if include_timestamp:
        report["timestamp"] = datetime.now(timezone.utc).isoformat()
    return report


def verify_report(report: dict) -> None:
    """Recompute every aggregate from the trial traces; exact match required."""
    for block in report["summaries"]:
        kind = ClassifierKind.from_tag(block["classifier"])
        key = trace_key(kind, block["fraction"], Phase(block["phase"]))
        rows = report["trials"].get(key)
        if not rows:
            raise ReportVerificationError(f"no trial trace for summary {key}")
        accuracies = [r["correct"] / r["test_size"] for r in rows]
        recomputed = {
            "rounds": len(rows),
            "min_accuracy": min(accuracies),
            "mean_accuracy": math.fsum(accuracies) / len(accuracies),
            "max_accuracy": max(accuracies),
            "perfect_count": sum(1 for r in rows if r["correct"] == r["test_size"]),
            "mean_contamination": math.fsum(r["contamination"] for r in rows) / len(rows),
        }
        for name, expected in recomputed.items():
            if block[name] != expected:
                raise ReportVerificationError(
                    f"{key}: {name} printed as {block[name]!r} but traces give {expected!r}"
                )
        for name in ("min_accuracy", "mean_accuracy", "max_accuracy"):
            if block[f"{name}_pct"] != percent_display(recomputed[name]):
                raise ReportVerificationError(f"{key}: {name}_pct display mismatch")
        for row in rows:
            if row["accuracy"] != row["correct"] / row["test_size"]:
                raise ReportVerificationError(
                    f"{key}: trial {row['trial_index']} accuracy not correct/test_size"
                )


def write_report(report: dict, path: Path) -> None:
    verify_report(report)
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(report, f, indent=2)
        f.write("\n")


def read_report(path) -> dict:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def summaries_from_report(report: dict) -> list[RunSummary]:
    """Rebuild RunSummary objects from an emitted report's traces.

    Accuracies are re-derived from the correct/test_size integers, so the
    reconstruction is exact whenever the report verified.
    """
    out = []
    for block in report["summaries"]:
        kind = ClassifierKind.from_tag(block["classifier"])
        phase = Phase(block["phase"])
        fraction = block["fraction"]
        rows = report["trials"][trace_key(kind, fraction, phase)]
        trials = [
            TrialResult(
                classifier=kind,
                split_spec=SplitSpec(train_fraction=fraction, seed=0),
                phase=phase,
                trial_index=r["trial_index"],
                correct=r["correct"],
                test_size=r["test_size"],
                accuracy=r["correct"] / r["test_size"],
                contamination_fraction=r["contamination"],
            )
            for r in rows
        ]
        out.append(summarize(trials))
    return out


def emit_plot_data(summaries: list[RunSummary], out_dir) -> list[Path]:
    """One trace CSV per summary plus one aggregate CSV.

    Trace files are ``<classifier>_<fraction>_<phase>.csv`` with columns
    trial_index,accuracy; the aggregate is ``summary.csv``. All files use
    '.' decimals, LF endings, and a header row.
    """
    if not summaries:
        raise ValueError("nothing to emit")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for s in summaries:
        path = out_dir / f"{trace_key(s.classifier, s.train_fraction, s.phase)}.csv"
        with open(path, "w", encoding="utf-8", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["trial_index", "accuracy"])
            for t in s.per_trial:
                w.writerow([t.trial_index, repr(t.accuracy)])
        written.append(path)
    agg = out_dir / "summary.csv"
    with open(agg, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["classifier", "fraction", "phase", "min", "mean", "max", "perfect_count"])
        for s in summaries:
            w.writerow(
                [
                    s.classifier.tag,
                    repr(s.train_fraction),
                    s.phase.value,
                    repr(s.min_accuracy),
                    repr(s.mean_accuracy),
                    repr(s.max_accuracy),
                    s.perfect_count,
                ]
            )
    written.append(agg)
    return written

