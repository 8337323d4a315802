"""minacc: minimum-accuracy benchmarking and duplication-leakage auditing.

From-scratch binary classifiers for the WDBC dataset, a deterministic
repeated-split evaluation protocol reporting minimum/mean/maximum
accuracy, and an audit of the exact-duplication exploit that inflates
test accuracy to 100%.
"""

__version__ = "0.1.0"

from .classifiers import (  # noqa: E402
    ClassifierKind,
    Hyperparams,
    TrainedModel,
    loss_gradient,
    predict,
    train,
    training_loss,
)
from .data import (  # noqa: E402
    Dataset,
    Label,
    Provenance,
    Sample,
    StandardizationParams,
    apply_standardizer,
    crossover_augment,
    dataset_fingerprint,
    double_dataset,
    find_duplicates,
    fit_standardizer,
    load_wdbc,
    parse_wdbc,
    serialize_wdbc,
)
from .protocol import (  # noqa: E402
    Phase,
    RunSummary,
    TrialResult,
    accuracy_floor_table,
    compare_methods,
    run_protocol,
    run_trial,
    summarize,
)
from .splitting import (  # noqa: E402
    LeakageReport,
    SplitResult,
    SplitSpec,
    leakage_report,
    random_split,
)

__all__ = [
    "__version__",
    "ClassifierKind",
    "Hyperparams",
    "TrainedModel",
    "Dataset",
    "Label",
    "Provenance",
    "Sample",
    "StandardizationParams",
    "Phase",
    "RunSummary",
    "TrialResult",
    "LeakageReport",
    "SplitResult",
    "SplitSpec",
    "apply_standardizer",
    "accuracy_floor_table",
    "compare_methods",
    "crossover_augment",
    "dataset_fingerprint",
    "double_dataset",
    "find_duplicates",
    "fit_standardizer",
    "leakage_report",
    "load_wdbc",
    "loss_gradient",
    "parse_wdbc",
    "predict",
    "random_split",
    "run_protocol",
    "run_trial",
    "serialize_wdbc",
    "summarize",
    "train",
    "training_loss",
]
