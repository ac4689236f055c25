"""fusionlab: deterministic decision-fusion engine.

Measures decision accuracy as tie-aware AUC from ordinal ratings or
continuous scores, fuses pairs of performers by response averaging, relates
fusion benefit to the baseline-accuracy gap, sweeps the gap threshold that
maximizes a human-machine system's accuracy, and finds the optimal human
pairing by exact maximum-weight matching. Includes a signal-detection
synthetic population generator and a CLI emitting CSV/SVG reports.
"""

from ._kernels import backend as kernel_backend
from .benefit import (
    BenefitCorrelation,
    BinLevel,
    Extreme,
    PerformanceBin,
    benefit_gap_correlation,
    bin_by_extreme,
    critical_fusion_difference,
)
from .data import (
    ItemLabel,
    MachineScores,
    Polarity,
    RatingDataset,
    RatingScale,
    load_dataset,
    load_machine_scores,
    normalize_polarity,
    save_dataset,
    save_machine_scores,
)
from .fusion import (
    DyadRecord,
    Performer,
    PerformerKind,
    all_pairs,
    fuse_pair,
    human_grand_mean,
    human_performer,
    machine_pairs,
    machine_performer,
    scale_machine,
)
from .matching import (
    BaselineReport,
    MatchingResult,
    build_weight_matrix,
    matching_dp,
    optimal_matching,
    random_baseline,
    random_matching,
)
from .roc import Auc, RocCurve, auc, observer_auc, roc_curve
from .stats import (
    StatMethod,
    TestResult,
    bonferroni,
    mann_whitney_u,
    pearson_r,
    u_counts,
    wilcoxon_signed_rank,
)
from .sweep import (
    FusionPolicy,
    PolicyComparison,
    PolicyKind,
    SweepResult,
    compare_policies,
    lambda_sweep,
    system_auc,
)
from .synth import GeneratorConfig, ObserverAbility, closed_form_auc, generate

__version__ = "0.1.0"

__all__ = [
    "Auc",
    "BaselineReport",
    "BenefitCorrelation",
    "BinLevel",
    "DyadRecord",
    "Extreme",
    "FusionPolicy",
    "GeneratorConfig",
    "ItemLabel",
    "MachineScores",
    "MatchingResult",
    "ObserverAbility",
    "PerformanceBin",
    "Performer",
    "PerformerKind",
    "PolicyComparison",
    "PolicyKind",
    "Polarity",
    "RatingDataset",
    "RatingScale",
    "RocCurve",
    "StatMethod",
    "SweepResult",
    "TestResult",
    "all_pairs",
    "auc",
    "benefit_gap_correlation",
    "bin_by_extreme",
    "bonferroni",
    "build_weight_matrix",
    "closed_form_auc",
    "compare_policies",
    "critical_fusion_difference",
    "fuse_pair",
    "generate",
    "human_grand_mean",
    "human_performer",
    "kernel_backend",
    "lambda_sweep",
    "load_dataset",
    "load_machine_scores",
    "machine_pairs",
    "machine_performer",
    "mann_whitney_u",
    "matching_dp",
    "normalize_polarity",
    "observer_auc",
    "optimal_matching",
    "pearson_r",
    "random_baseline",
    "random_matching",
    "roc_curve",
    "save_dataset",
    "save_machine_scores",
    "scale_machine",
    "system_auc",
    "u_counts",
    "wilcoxon_signed_rank",
]
