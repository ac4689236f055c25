"""System-wide fusion policies, the threshold sweep, and policy comparison.

A "system" is one machine partnered with a pool of humans (one dyad record
per human, the human as performer_a). A policy assigns each human a
contributing accuracy; the system accuracy is the unweighted mean of the
contributions. The threshold policy fuses a human with the machine only when
the pair's baseline accuracy gap is at most the threshold, and accepts the
machine's decision otherwise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from ._util import exact_mean
from .errors import (
    AllZeroDifferencesError,
    EmptyDyadsError,
    InvalidConfigError,
    LengthMismatchError,
)
from .fusion import DyadRecord
from .stats import (
    StatMethod,
    TestResult,
    bonferroni,
    mann_whitney_u,
    wilcoxon_signed_rank,
)


class PolicyKind(enum.Enum):
    MACHINE_ALONE = "machine-alone"
    GENERIC_FUSION = "generic-fusion"
    INTELLIGENT_FUSION = "intelligent-fusion"
    HUMANS_ALONE = "humans-alone"


@dataclass(frozen=True)
class FusionPolicy:
    kind: PolicyKind
    threshold: float | None = None

    def __post_init__(self):
        if self.kind is PolicyKind.INTELLIGENT_FUSION:
            if self.threshold is None or self.threshold < 0:
                raise InvalidConfigError("intelligent fusion needs a threshold >= 0")
        elif self.threshold is not None:
            raise InvalidConfigError(f"{self.kind.value} takes no threshold")

    @classmethod
    def machine_alone(cls) -> "FusionPolicy":
        return cls(PolicyKind.MACHINE_ALONE)

    @classmethod
    def generic_fusion(cls) -> "FusionPolicy":
        return cls(PolicyKind.GENERIC_FUSION)

    @classmethod
    def humans_alone(cls) -> "FusionPolicy":
        return cls(PolicyKind.HUMANS_ALONE)

    @classmethod
    def intelligent(cls, threshold: float) -> "FusionPolicy":
        return cls(PolicyKind.INTELLIGENT_FUSION, threshold=threshold)


@dataclass(frozen=True)
class SweepResult:
    lambdas: tuple[float, ...]
    system_aucs: tuple[float, ...]
    lambda_star: float
    auc_at_star: float


def _contributions(
    dyads: list[DyadRecord], policy: FusionPolicy, machine_auc: float
) -> list[float]:
    if policy.kind is PolicyKind.MACHINE_ALONE:
        return [machine_auc for _ in dyads]
    if policy.kind is PolicyKind.GENERIC_FUSION:
        return [d.auc_fused for d in dyads]
    if policy.kind is PolicyKind.HUMANS_ALONE:
        return [d.auc_a for d in dyads]
    lam = policy.threshold
    return [d.auc_fused if d.delta <= lam else machine_auc for d in dyads]


def system_auc(dyads: list[DyadRecord], policy: FusionPolicy, machine_auc: float) -> float:
    """Unweighted mean of per-human contributing AUCs under a policy.

    ``dyads`` must be machine-pair records (human as performer_a, one per
    human). The mean short-circuits constant contribution lists, so the
    no-fusion and fuse-everyone endpoints reproduce the machine baseline and
    the generic-fusion value bitwise.
    """
    if not dyads:
        raise EmptyDyadsError("no dyads")
    return exact_mean(_contributions(dyads, policy, machine_auc))


def lambda_sweep(dyads: list[DyadRecord], machine_auc: float) -> SweepResult:
    """Evaluate the threshold policy on the lossless candidate grid.

    The system accuracy is a step function of the threshold, so the grid
    {0} | {distinct gaps} | {just above the largest gap} is exhaustive.
    Ties resolve to the smallest threshold (fuse fewer people when equal).
    """
    if not dyads:
        raise EmptyDyadsError("no dyads")
    deltas = sorted({d.delta for d in dyads})
    grid = sorted({0.0, *deltas, math.nextafter(deltas[-1], math.inf)})
    aucs = [
        system_auc(dyads, FusionPolicy.intelligent(lam), machine_auc) for lam in grid
    ]
    best_index = 0
    for i, value in enumerate(aucs):
        if value > aucs[best_index]:
            best_index = i
    result = SweepResult(
        lambdas=tuple(grid),
        system_aucs=tuple(aucs),
        lambda_star=grid[best_index],
        auc_at_star=aucs[best_index],
    )
    # Optimality is structural; assert it rather than assume it.
    generic = system_auc(dyads, FusionPolicy.generic_fusion(), machine_auc)
    assert result.auc_at_star >= generic
    if deltas[0] > 0.0:
        machine_alone = system_auc(dyads, FusionPolicy.machine_alone(), machine_auc)
        assert result.auc_at_star >= machine_alone
    return result


@dataclass(frozen=True)
class PolicyComparison:
    """Distributions, medians, and paired/unpaired tests across policies."""

    lambda_star: float
    distributions: dict[str, tuple[float, ...]]
    medians: dict[str, float]
    tests: dict[str, TestResult]


def _paired_or_identical(x: tuple[float, ...], y: tuple[float, ...]) -> TestResult:
    try:
        return wilcoxon_signed_rank(list(x), list(y))
    except AllZeroDifferencesError:
        # Identical samples: no difference by construction.
        return TestResult(
            statistic=0.0, p_value=1.0, n=0, method=StatMethod.WILCOXON_SIGNED_RANK
        )


def compare_policies(
    dyads: list[DyadRecord],
    machine_auc: float,
    individual_aucs: list[float],
    matching_aucs: list[float] | None = None,
) -> PolicyComparison:
    """Compare per-human contributions across fusion policies.

    Paired Wilcoxon signed-rank tests (Bonferroni-corrected over the three
    policy comparisons) for intelligent vs generic vs individual; unpaired
    Mann-Whitney U against an optional optimally-paired dyad distribution.
    """
    if not dyads:
        raise EmptyDyadsError("no dyads")
    if len(individual_aucs) != len(dyads):
        raise LengthMismatchError(
            f"{len(individual_aucs)} individual AUCs for {len(dyads)} dyads"
        )
    lambda_star = lambda_sweep(dyads, machine_auc).lambda_star
    individual = tuple(individual_aucs)
    generic = tuple(d.auc_fused for d in dyads)
    intelligent = tuple(
        d.auc_fused if d.delta <= lambda_star else machine_auc for d in dyads
    )
    distributions = {
        "individual": individual,
        "generic": generic,
        "intelligent": intelligent,
    }
    comparisons = [
        ("intelligent_vs_generic", intelligent, generic),
        ("intelligent_vs_individual", intelligent, individual),
        ("generic_vs_individual", generic, individual),
    ]
    results = [_paired_or_identical(a, b) for _, a, b in comparisons]
    corrected = bonferroni([res.p_value for res in results])
    tests = {
        name: TestResult(
            statistic=res.statistic,
            p_value=res.p_value,
            n=res.n,
            method=res.method,
            corrected_p=corr,
        )
        for (name, _, _), res, corr in zip(comparisons, results, corrected)
    }
    if matching_aucs is not None:
        matching = tuple(matching_aucs)
        distributions["matching"] = matching
        tests["matching_vs_individual"] = mann_whitney_u(list(matching), list(individual))
        tests["matching_vs_intelligent"] = mann_whitney_u(list(matching), list(intelligent))
    medians = {name: _median(values) for name, values in distributions.items()}
    return PolicyComparison(
        lambda_star=lambda_star,
        distributions=distributions,
        medians=medians,
        tests=tests,
    )


def _median(values: tuple[float, ...]) -> float:
    ordered = sorted(values)
    n = len(ordered)
    mid = n // 2
    if n % 2:
        return ordered[mid]
    return (ordered[mid - 1] + ordered[mid]) * 0.5
