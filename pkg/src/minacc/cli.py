"""Command-line interface.

Subcommands: ``run`` (execute the repeated-trial protocol and write the
verified report plus CSV traces), ``floor-table`` (test-size/accuracy
arithmetic), ``leakage`` (duplicate-contamination statistics over many
seeds), ``augment`` (crossover offspring writer), ``double`` (exact
duplication writer). Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .classifiers import ClassifierKind, Hyperparams
from .data import (
    DataError,
    assert_canonical,
    crossover_augment,
    double_dataset,
    load_wdbc,
    write_wdbc,
)
from .protocol import (
    Phase,
    accuracy_floor_table,
    resolve_worker_count,
    run_protocol,
)
from .report import RunConfig, build_report, emit_plot_data, write_report
from .rng import derive_seed
from .splitting import SplitSpec, leakage_report, random_split

CANONICAL_FRACTIONS = (0.5, 0.6, 0.7, 0.8)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract reserves 2
    # for data errors, so route usage problems through UsageError instead.
    def error(self, message):
        raise UsageError(message)


def _parse_fractions(text: str) -> list[float]:
    out = []
    for token in text.split(","):
        try:
            value = float(token)
        except ValueError:
            raise UsageError(f"bad fraction {token!r}") from None
        if not 0.0 < value < 1.0:
            raise UsageError(f"fraction {value} must lie strictly between 0 and 1")
        out.append(value)
    if not out:
        raise UsageError("need at least one fraction")
    return out


def _parse_kinds(text: str) -> list[ClassifierKind]:
    kinds = []
    for token in text.split(","):
        try:
            kinds.append(ClassifierKind.from_tag(token.strip()))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return kinds


_HP_FIELDS = {f.name: f for f in dataclasses.fields(Hyperparams)}


def _parse_hp_overrides(pairs: list[str]) -> Hyperparams:
    overrides = {}
    for pair in pairs:
        name, sep, raw = pair.partition("=")
        if not sep:
            raise UsageError(f"--hp expects name=value, got {pair!r}")
        if name not in _HP_FIELDS:
            raise UsageError(
                f"unknown hyperparameter {name!r} (known: {', '.join(sorted(_HP_FIELDS))})"
            )
        default = getattr(Hyperparams(), name)
        try:
            if name == "tree_max_depth":
                overrides[name] = None if raw.lower() == "none" else int(raw)
            elif isinstance(default, bool):
                if raw.lower() not in ("true", "false"):
                    raise ValueError
                overrides[name] = raw.lower() == "true"
            elif isinstance(default, int):
                overrides[name] = int(raw)
            else:
                overrides[name] = float(raw)
        except ValueError:
            raise UsageError(f"bad value {raw!r} for hyperparameter {name}") from None
    try:
        return Hyperparams(**overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="minacc", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    run = sub.add_parser("run", help="execute the repeated-trial protocol")
    run.add_argument("--data", required=True, help="path to a WDBC-format file")
    run.add_argument("--classifiers", default=",".join(k.tag for k in ClassifierKind))
    run.add_argument("--fractions", default=",".join(str(f) for f in CANONICAL_FRACTIONS))
    run.add_argument("--rounds", type=int, default=100)
    run.add_argument("--phase", choices=("original", "doubled"), default="original")
    run.add_argument("--double-after-split", action="store_true",
                     help="diagnostic: duplicate the train fold only, after splitting")
    run.add_argument("--master-seed", type=int, default=42)
    run.add_argument("--out", default="minacc-report")
    run.add_argument("--format", choices=("json", "csv"), default="json")
    run.add_argument("--no-timestamp", action="store_true")
    run.add_argument("--expect-canonical", action="store_true",
                     help="fail unless the input is the canonical WDBC file")
    run.add_argument("--hp", action="append", default=[], metavar="NAME=VALUE")

    floor = sub.add_parser("floor-table", help="accuracy floor arithmetic")
    floor.add_argument("--n", required=True, help="comma-separated test sizes")
    floor.add_argument("--m", type=int, default=1, help="misclassification count")

    leak = sub.add_parser("leakage", help="contamination statistics over many seeds")
    leak.add_argument("--data", required=True)
    leak.add_argument("--fraction", type=float, default=0.8)
    leak.add_argument("--rounds", type=int, default=100)
    leak.add_argument("--master-seed", type=int, default=42)
    leak.add_argument("--double", action="store_true",
                      help="duplicate the dataset before splitting")

    aug = sub.add_parser("augment", help="append crossover offspring")
    aug.add_argument("--data", required=True)
    aug.add_argument("--count", type=int, required=True)
    aug.add_argument("--seed", type=int, default=42)
    aug.add_argument("--out", required=True)

    dbl = sub.add_parser("double", help="write the exactly duplicated dataset")
    dbl.add_argument("--data", required=True)
    dbl.add_argument("--out", required=True)

    return parser


def _cmd_run(args) -> int:
    kinds = _parse_kinds(args.classifiers)
    fractions = _parse_fractions(args.fractions)
    if args.rounds < 1:
        raise UsageError("--rounds must be at least 1")
    if args.double_after_split and args.phase != "doubled":
        raise UsageError("--double-after-split requires --phase doubled")
    hp = _parse_hp_overrides(args.hp)
    data = load_wdbc(args.data)
    if args.expect_canonical:
        assert_canonical(data)
    config = RunConfig(
        data_path=args.data,
        classifiers=tuple(kinds),
        fractions=tuple(fractions),
        rounds=args.rounds,
        phase=Phase(args.phase),
        master_seed=args.master_seed,
        double_after_split=args.double_after_split,
        hyperparams=hp,
    )
    workers = resolve_worker_count()
    summaries = run_protocol(
        data, kinds, fractions, config.rounds, config.phase, config.master_seed, hp,
        double_after_split=config.double_after_split, max_workers=workers,
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = emit_plot_data(summaries, out_dir)
    if args.format == "json":
        report = build_report(config, summaries, include_timestamp=not args.no_timestamp)
        report_path = out_dir / "report.json"
        write_report(report, report_path)
        written.append(report_path)
    print(f"wrote {len(written)} files to {out_dir}")
    return 0


def _cmd_floor_table(args) -> int:
    try:
        sizes = [int(tok) for tok in args.n.split(",")]
    except ValueError:
        raise UsageError(f"--n expects comma-separated integers, got {args.n!r}") from None
    try:
        rows = accuracy_floor_table([(n, args.m) for n in sizes])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print("input,misclassifications,accuracy_percent")
    for row in rows:
        print(f"{row.input_size},{row.misclassifications},{row.accuracy_percent!r}")
    return 0


def _cmd_leakage(args) -> int:
    if args.rounds < 1:
        raise UsageError("--rounds must be at least 1")
    if not 0.0 < args.fraction < 1.0:
        raise UsageError("--fraction must lie strictly between 0 and 1")
    data = load_wdbc(args.data)
    if args.double:
        data = double_dataset(data)
    fractions = []
    for i in range(args.rounds):
        seed = derive_seed(args.master_seed, round(args.fraction * 1000), i)
        split = random_split(len(data), SplitSpec(args.fraction, seed))
        fractions.append(leakage_report(data, split))
    values = [r.contamination_fraction for r in fractions]
    payload = {
        "rounds": args.rounds,
        "fraction": args.fraction,
        "doubled": bool(args.double),
        "dataset_size": len(data),
        "test_size": fractions[0].test_size,
        "duplicate_group_count": fractions[0].duplicate_group_count,
        "mean_contamination": sum(values) / len(values),
        "min_contamination": min(values),
        "max_contamination": max(values),
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_augment(args) -> int:
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    data = load_wdbc(args.data)
    try:
        augmented = crossover_augment(data, args.count, args.seed)
    except ValueError as exc:
        raise DataError(str(exc)) from None
    write_wdbc(augmented, args.out)
    print(f"wrote {len(augmented)} records to {args.out}")
    return 0


def _cmd_double(args) -> int:
    data = load_wdbc(args.data)
    write_wdbc(double_dataset(data), args.out)
    print(f"wrote {2 * len(data)} records to {args.out}")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "floor-table": _cmd_floor_table,
    "leakage": _cmd_leakage,
    "augment": _cmd_augment,
    "double": _cmd_double,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required (run, floor-table, leakage, augment, double)")
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"minacc: {exc}", file=sys.stderr)
        return 1
    except (DataError, OSError) as exc:
        print(f"minacc: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
