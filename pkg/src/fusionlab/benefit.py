"""Fusion-benefit analytics.

Quantifies how the benefit of fusing two performers relates to the gap in
their baseline accuracies: the pooled correlation, the same correlation
within performance bands (anchored on each dyad's worst or best performer),
and the largest machine advantage at which fusing a weaker human still
maximizes system accuracy.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

from .errors import (
    ConstantInputError,
    EmptyDyadsError,
    NoMachineAdvantageWarning,
    TooFewDyadsError,
)
from .fusion import DyadRecord
from .stats import pearson_r
from .sweep import lambda_sweep


@dataclass(frozen=True)
class BenefitCorrelation:
    """Pearson correlation between |accuracy gap| and fusion benefit."""

    r: float
    n: int
    ci_low: float
    ci_high: float
    p_value: float


class BinLevel(enum.Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


class Extreme(enum.Enum):
    WORST_PERFORMER = "worst"
    BEST_PERFORMER = "best"


@dataclass(frozen=True)
class PerformanceBin:
    level: BinLevel
    range_low: float
    range_high: float
    dyads: tuple[DyadRecord, ...]
    correlation: BenefitCorrelation | None


def benefit_gap_correlation(dyads: list[DyadRecord]) -> BenefitCorrelation:
    """Correlate each dyad's baseline-accuracy gap with its fusion benefit."""
    if len(dyads) < 3:
        raise TooFewDyadsError(f"need at least 3 dyads, got {len(dyads)}")
    deltas = [d.delta for d in dyads]
    benefits = [d.benefit for d in dyads]
    result = pearson_r(deltas, benefits)
    return BenefitCorrelation(
        r=result.statistic,
        n=result.n,
        ci_low=result.ci_low,
        ci_high=result.ci_high,
        p_value=result.p_value,
    )


def _anchor(dyad: DyadRecord, extreme: Extreme) -> float:
    if extreme is Extreme.WORST_PERFORMER:
        return min(dyad.auc_a, dyad.auc_b)
    return max(dyad.auc_a, dyad.auc_b)


def bin_by_extreme(dyads: list[DyadRecord], extreme: Extreme) -> list[PerformanceBin]:
    """Split dyads into three equal-width bands of worst (best) performer AUC.

    The occupied anchor range [lo, hi] is cut into three equal widths; the
    lowest band is closed at lo, the others are left-open/right-closed. Bands
    with fewer than 3 dyads (or constant inputs) carry a null correlation
    rather than failing, so batch reports never abort on skewed data. If all
    anchors coincide, everything lands in the low band and the other two are
    empty with degenerate ranges.
    """
    if len(dyads) < 9:
        raise TooFewDyadsError(f"binning needs at least 9 dyads, got {len(dyads)}")
    anchors = [_anchor(d, extreme) for d in dyads]
    lo, hi = min(anchors), max(anchors)
    width = (hi - lo) / 3.0
    edges = [lo + width, lo + 2.0 * width]

    def level_of(anchor: float) -> int:
        if hi == lo or anchor <= edges[0]:
            return 0
        if anchor <= edges[1]:
            return 1
        return 2

    grouped: list[list[DyadRecord]] = [[], [], []]
    for dyad, anchor in zip(dyads, anchors):
        grouped[level_of(anchor)].append(dyad)

    ranges = [(lo, edges[0]), (edges[0], edges[1]), (edges[1], hi)]
    bins = []
    for level, members, (range_low, range_high) in zip(BinLevel, grouped, ranges):
        correlation = None
        if len(members) >= 3:
            try:
                correlation = benefit_gap_correlation(members)
            except ConstantInputError:
                correlation = None
        bins.append(
            PerformanceBin(
                level=level,
                range_low=range_low,
                range_high=range_high,
                dyads=tuple(members),
                correlation=correlation,
            )
        )
    return bins


def critical_fusion_difference(dyads: list[DyadRecord], machine_auc: float) -> float:
    """Largest machine advantage at which fusing still maximizes system AUC.

    ``dyads`` must be machine-pair records (human as performer_a). The sweep
    is restricted to the dyads where the machine outperforms the human; the
    returned value is the sweep-optimal threshold on that subset. When no
    human is weaker than the machine the threshold is 0 and a
    NoMachineAdvantageWarning is emitted (flag, not crash).
    """
    if not dyads:
        raise EmptyDyadsError("no dyads")
    advantage = [d for d in dyads if d.auc_a < machine_auc]
    if not advantage:
        warnings.warn(
            "every human is at least as accurate as the machine",
            NoMachineAdvantageWarning,
            stacklevel=2,
        )
        return 0.0
    return lambda_sweep(advantage, machine_auc).lambda_star
