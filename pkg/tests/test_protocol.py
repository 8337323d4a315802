import statistics

import numpy as np
import pytest

from minacc.classifiers import ClassifierKind, Hyperparams
from minacc.data import double_dataset
from minacc.protocol import (
    Phase,
    TrialResult,
    accuracy_floor_table,
    compare_methods,
    derive_trial_seed,
    run_protocol,
    run_trial,
    summarize,
)
from minacc.rng import derive_seed
from minacc.splitting import SplitSpec

from conftest import make_dataset

FAST = [ClassifierKind.NAIVE_BAYES, ClassifierKind.DECISION_TREE_ENTROPY]


def synthetic_trial(accuracy_num, test_size, index=0, kind=ClassifierKind.NAIVE_BAYES,
                    fraction=0.7, phase=Phase.ORIGINAL, contamination=0.0):
    return TrialResult(
        classifier=kind,
        split_spec=SplitSpec(fraction, seed=index),
        phase=phase,
        trial_index=index,
        correct=accuracy_num,
        test_size=test_size,
        accuracy=accuracy_num / test_size,
        contamination_fraction=contamination,
    )


class TestRunTrial:
    def test_quantized_denominator_70_30(self, wdbc):
        for kind in FAST:
            trial = run_trial(wdbc, kind, SplitSpec(0.7, seed=1), Hyperparams(seed=2))
            assert trial.test_size == 171
            assert trial.accuracy == trial.correct / 171
            assert trial.phase is Phase.ORIGINAL
            assert trial.contamination_fraction == 0.0

    def test_identical_twin_pair_knn_is_perfect(self):
        ds = make_dataset([[1.0, 2.0], [1.0, 2.0]], [1, 1])
        trial = run_trial(
            ds, ClassifierKind.K_NEAREST_NEIGHBOR, SplitSpec(0.5, seed=7), Hyperparams(knn_k=1)
        )
        assert trial.accuracy == 1.0
        assert trial.correct == trial.test_size == 1

    def test_bit_identical_reruns(self, wdbc):
        spec = SplitSpec(0.8, seed=321)
        hp = Hyperparams(seed=99)
        a = run_trial(wdbc, ClassifierKind.RANDOM_FOREST, spec, hp, trial_index=4)
        b = run_trial(wdbc, ClassifierKind.RANDOM_FOREST, spec, hp, trial_index=4)
        assert a == b

    def test_doubled_provenance_sets_phase(self, wdbc):
        doubled = double_dataset(wdbc.subset(range(60)))
        trial = run_trial(doubled, ClassifierKind.NAIVE_BAYES, SplitSpec(0.8, seed=5), Hyperparams())
        assert trial.phase is Phase.DOUBLED
        assert trial.contamination_fraction > 0.5

    def test_double_after_split_has_zero_contamination(self, wdbc):
        base = wdbc.subset(range(100))
        trial = run_trial(
            base, ClassifierKind.NAIVE_BAYES, SplitSpec(0.8, seed=5), Hyperparams(),
            double_train_after_split=True,
        )
        assert trial.phase is Phase.DOUBLED
        assert trial.contamination_fraction == 0.0


class TestSummarize:
    def test_two_trials(self):
        trials = [synthetic_trial(10, 10, 0), synthetic_trial(5, 10, 1)]
        s = summarize(trials)
        assert s.min_accuracy == 0.5
        assert s.mean_accuracy == 0.75
        assert s.max_accuracy == 1.0
        assert s.perfect_count == 1
        assert s.rounds == 2

    def test_single_trial_collapses(self):
        s = summarize([synthetic_trial(7, 9)])
        assert s.min_accuracy == s.mean_accuracy == s.max_accuracy == 7 / 9
        assert s.perfect_count == 0

    def test_hundred_synthetic_accuracies_match_spreadsheet_recomputation(self):
        rng = np.random.default_rng(55)
        counts = [int(rng.integers(30, 51)) for _ in range(100)]
        trials = [synthetic_trial(c, 50, i) for i, c in enumerate(counts)]
        s = summarize(trials)
        ratios = [c / 50 for c in counts]
        assert s.min_accuracy == min(ratios)
        assert s.max_accuracy == max(ratios)
        assert s.mean_accuracy == pytest.approx(statistics.fmean(ratios), abs=1e-12)
        assert s.perfect_count == sum(1 for c in counts if c == 50)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            summarize([])

    def test_rejects_heterogeneous(self):
        trials = [synthetic_trial(5, 10, 0), synthetic_trial(5, 10, 1, fraction=0.8)]
        with pytest.raises(ValueError, match="mix"):
            summarize(trials)
        trials = [synthetic_trial(5, 10, 0), synthetic_trial(5, 10, 1, kind=ClassifierKind.K_NEAREST_NEIGHBOR)]
        with pytest.raises(ValueError, match="mix"):
            summarize(trials)

    def test_invariants_hold(self):
        trials = [synthetic_trial(k, 20, i) for i, k in enumerate([14, 20, 17, 20, 11])]
        s = summarize(trials)
        assert s.min_accuracy <= s.mean_accuracy <= s.max_accuracy
        assert s.perfect_count == 2 <= s.rounds
        assert all(t.accuracy * t.test_size == pytest.approx(t.correct) for t in s.per_trial)


class TestRunProtocol:
    def test_arity_and_order(self, wdbc):
        base = wdbc.subset(range(80))
        summaries = run_protocol(base, FAST, [0.5, 0.7], 3, Phase.ORIGINAL, 42, max_workers=1)
        assert len(summaries) == 4
        assert [s.classifier for s in summaries] == [FAST[0], FAST[0], FAST[1], FAST[1]]
        assert [s.train_fraction for s in summaries] == [0.5, 0.7, 0.5, 0.7]
        assert all(s.rounds == 3 for s in summaries)
        assert all(
            [t.trial_index for t in s.per_trial] == [0, 1, 2] for s in summaries
        )

    def test_deterministic_rerun(self, wdbc):
        base = wdbc.subset(range(80))
        a = run_protocol(base, FAST, [0.7], 4, Phase.ORIGINAL, 7, max_workers=1)
        b = run_protocol(base, FAST, [0.7], 4, Phase.ORIGINAL, 7, max_workers=1)
        assert a == b

    def test_parallel_equals_sequential(self, wdbc):
        base = wdbc.subset(range(80))
        seq = run_protocol(base, FAST, [0.6, 0.8], 5, Phase.ORIGINAL, 11, max_workers=1)
        par = run_protocol(base, FAST, [0.6, 0.8], 5, Phase.ORIGINAL, 11, max_workers=4)
        assert seq == par

    def test_single_trial_replayable_in_isolation(self, wdbc):
        base = wdbc.subset(range(80))
        kind, fraction, master = ClassifierKind.DECISION_TREE_ENTROPY, 0.7, 13
        summaries = run_protocol(base, [kind], [fraction], 3, Phase.ORIGINAL, master, max_workers=2)
        target = summaries[0].per_trial[2]
        trial_seed = derive_trial_seed(master, kind, fraction, 2)
        replayed = run_trial(
            base,
            kind,
            SplitSpec(fraction, seed=derive_seed(trial_seed, 1)),
            Hyperparams(seed=derive_seed(trial_seed, 2)),
            trial_index=2,
        )
        assert replayed == target

    def test_doubled_phase_doubles_before_split(self, wdbc):
        base = wdbc.subset(range(100))
        summaries = run_protocol(base, [ClassifierKind.NAIVE_BAYES], [0.8], 3, Phase.DOUBLED, 3, max_workers=1)
        trial = summaries[0].per_trial[0]
        assert trial.test_size == 40  # 200 records, 80-20
        assert trial.phase is Phase.DOUBLED

    def test_double_after_split_mode(self, wdbc):
        base = wdbc.subset(range(100))
        summaries = run_protocol(
            base, [ClassifierKind.NAIVE_BAYES], [0.8], 3, Phase.DOUBLED, 3,
            double_after_split=True, max_workers=1,
        )
        trial = summaries[0].per_trial[0]
        assert trial.test_size == 20  # split happens on the original 100
        assert trial.contamination_fraction == 0.0
        with pytest.raises(ValueError, match="double_after_split"):
            run_protocol(base, FAST, [0.8], 1, Phase.ORIGINAL, 3, double_after_split=True)

    def test_rejects_bad_arguments(self, wdbc):
        with pytest.raises(ValueError):
            run_protocol(wdbc, FAST, [0.7], 0, Phase.ORIGINAL, 1)
        with pytest.raises(ValueError):
            run_protocol(wdbc, [], [0.7], 1, Phase.ORIGINAL, 1)
        with pytest.raises(ValueError):
            run_protocol(wdbc, FAST, [], 1, Phase.ORIGINAL, 1)


class TestSeedDerivation:
    def test_distinct_across_axes(self):
        pairs = set()
        for kind in (ClassifierKind.RANDOM_FOREST, ClassifierKind.NAIVE_BAYES):
            for fraction in (0.5, 0.7):
                for index in range(5):
                    pairs.add(derive_trial_seed(42, kind, fraction, index))
        assert len(pairs) == 20

    def test_master_seed_matters(self):
        a = derive_trial_seed(1, ClassifierKind.NAIVE_BAYES, 0.7, 0)
        b = derive_trial_seed(2, ClassifierKind.NAIVE_BAYES, 0.7, 0)
        assert a != b


class TestAccuracyFloorTable:
    def test_paper_rows(self):
        rows = accuracy_floor_table([(2, 1), (100, 1)])
        assert rows[0].accuracy_percent == 50.0
        assert rows[1].accuracy_percent == 99.0

    def test_repeating_decimal_row(self):
        row = accuracy_floor_table([(60, 1)])[0]
        assert row.accuracy_percent == pytest.approx(98.33333333333333, abs=1e-12)
        assert round(row.accuracy_percent, 2) == 98.33

    def test_zero_misclassifications_is_exactly_100(self):
        assert accuracy_floor_table([(7, 0)])[0].accuracy_percent == 100.0

    def test_strictly_increasing_in_n(self):
        rows = accuracy_floor_table([(n, 1) for n in range(2, 200)])
        values = [r.accuracy_percent for r in rows]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_rejects_bad_ranges(self):
        with pytest.raises(ValueError):
            accuracy_floor_table([(5, 6)])
        with pytest.raises(ValueError):
            accuracy_floor_table([(0, 0)])


class TestCompareMethods:
    def _summary(self, max_acc, min_acc, kind=ClassifierKind.NAIVE_BAYES):
        trials = [
            synthetic_trial(round(min_acc * 100), 100, 0, kind=kind),
            synthetic_trial(round(max_acc * 100), 100, 1, kind=kind),
        ]
        return summarize(trials)

    def test_higher_max_loses_to_higher_min(self):
        x = self._summary(0.99, 0.85)
        y = self._summary(0.97, 0.92)
        verdict = compare_methods(x, y)
        assert verdict.winner_by_max == "a"
        assert verdict.winner_by_min == "b"
        assert verdict.recommendation == "b"

    def test_identical_summaries_tie(self):
        x = self._summary(0.9, 0.8)
        verdict = compare_methods(x, self._summary(0.9, 0.8))
        assert verdict.winner_by_max == "tie"
        assert verdict.recommendation == "tie"

    def test_mid_range_trials_cannot_change_verdict(self):
        rng = np.random.default_rng(23)
        for _ in range(30):
            a_min, a_max = sorted(rng.integers(50, 101, size=2).tolist())
            b_min, b_max = sorted(rng.integers(50, 101, size=2).tolist())
            a = summarize([synthetic_trial(a_min, 100, 0), synthetic_trial(a_max, 100, 1)])
            b = summarize([synthetic_trial(b_min, 100, 0), synthetic_trial(b_max, 100, 1)])
            before = compare_methods(a, b)
            mid_a = int(rng.integers(a_min, a_max + 1))
            mid_b = int(rng.integers(b_min, b_max + 1))
            a2 = summarize(list(a.per_trial) + [synthetic_trial(mid_a, 100, 2)])
            b2 = summarize(list(b.per_trial) + [synthetic_trial(mid_b, 100, 2)])
            after = compare_methods(a2, b2)
            assert (before.winner_by_max, before.winner_by_min, before.recommendation) == (
                after.winner_by_max, after.winner_by_min, after.recommendation,
            )

    def test_order_of_trials_is_irrelevant(self):
        trials = [synthetic_trial(c, 100, i) for i, c in enumerate([90, 70, 85])]
        a = summarize(trials)
        b = summarize(list(reversed(trials)))
        verdict = compare_methods(a, b)
        assert verdict.winner_by_max == "tie"
        assert verdict.winner_by_min == "tie"

    def test_rejects_mismatched_runs(self):
        a = self._summary(0.9, 0.8)
        mismatched = summarize(
            [synthetic_trial(80, 100, 0, fraction=0.5), synthetic_trial(90, 100, 1, fraction=0.5)]
        )
        with pytest.raises(ValueError, match="matching"):
            compare_methods(a, mismatched)
