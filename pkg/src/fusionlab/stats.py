"""Nonparametric tests with fixed, documented conventions.

Conventions (pinned for reproducibility):

* Wilcoxon signed-rank: zero differences dropped, midranks on |d|,
  W = min(W+, W-); exact enumeration of the conditional null for n <= 25,
  tie-corrected normal approximation (no continuity correction) above.
* Mann-Whitney: U = #(x > y) + 0.5 #(x = y) minimized over orientation;
  exact enumeration for nx * ny <= 400, tie-corrected normal otherwise.
* Pearson: two-sided p from the t distribution with n - 2 df; 95% CI by the
  Fisher transform with standard error 1 / sqrt(n - 3).
* All p-values are two-sided. Exact p = min(1, 2 P(T <= t_obs)), using the
  symmetry of both null distributions.

Exact-null tail probabilities are enumerated by dynamic programming over
doubled midranks; the tallies are held in float64 (subset counts can exceed
2**53), so "exact" p-values carry <= 1e-12 relative rounding, never sampling
error. scipy supplies only the normal/t distribution functions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm as _norm
from scipy.stats import t as _t_dist

from .errors import (
    AllZeroDifferencesError,
    ConstantInputError,
    EmptyClassError,
    LengthMismatchError,
    NonFiniteError,
    OutOfRangeError,
)


class StatMethod(enum.Enum):
    WILCOXON_SIGNED_RANK = "wilcoxon-signed-rank"
    MANN_WHITNEY_U = "mann-whitney-u"
    PEARSON_R = "pearson-r"


@dataclass(frozen=True)
class TestResult:
    statistic: float
    p_value: float
    n: int
    method: StatMethod
    corrected_p: float | None = None
    ci_low: float | None = None
    ci_high: float | None = None


def _as_finite_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise LengthMismatchError(f"{name} must be one-dimensional")
    if not np.isfinite(arr).all():
        raise NonFiniteError(f"non-finite value in {name}")
    return arr


def _midranks(values: np.ndarray) -> np.ndarray:
    """1-based midranks (ties averaged); exact dyadic rationals."""
    _, inverse, counts = np.unique(values, return_inverse=True, return_counts=True)
    cumulative = np.cumsum(counts)
    midrank = cumulative - (counts - 1) / 2.0
    return midrank[inverse]


def pearson_r(x, y) -> TestResult:
    """Pearson correlation with two-sided p and a Fisher-transform 95% CI."""
    xa = _as_finite_array(x, "x")
    ya = _as_finite_array(y, "y")
    if xa.size != ya.size:
        raise LengthMismatchError(f"length mismatch: {xa.size} vs {ya.size}")
    n = xa.size
    if n < 3:
        raise LengthMismatchError("pearson_r requires at least 3 pairs")
    xm = xa - xa.mean()
    ym = ya - ya.mean()
    sxx = float(xm @ xm)
    syy = float(ym @ ym)
    if sxx == 0.0 or syy == 0.0:
        raise ConstantInputError("pearson_r requires non-constant inputs")
    r = float(xm @ ym) / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))

    if abs(r) == 1.0:
        p = 0.0
    else:
        t = r * math.sqrt((n - 2) / (1.0 - r * r))
        p = 2.0 * float(_t_dist.sf(abs(t), n - 2))

    if abs(r) == 1.0:
        ci_low = ci_high = r
    elif n == 3:
        ci_low, ci_high = -1.0, 1.0  # Fisher se undefined at n = 3
    else:
        z = math.atanh(r)
        half_width = float(_norm.ppf(0.975)) / math.sqrt(n - 3)
        ci_low = math.tanh(z - half_width)
        ci_high = math.tanh(z + half_width)
    return TestResult(
        statistic=r, p_value=min(1.0, p), n=n, method=StatMethod.PEARSON_R,
        ci_low=ci_low, ci_high=ci_high,
    )


def _signed_rank_tail(doubled_ranks: list[int], doubled_w: int) -> float:
    """P(W+ <= w) under random signs, by convolution over doubled ranks."""
    total = sum(doubled_ranks)
    counts = np.zeros(total + 1, dtype=np.float64)
    counts[0] = 1.0
    for dr in doubled_ranks:
        counts[dr:] += counts[: counts.size - dr].copy()
    tail = float(counts[: doubled_w + 1].sum())
    return tail / float(2 ** len(doubled_ranks))


def wilcoxon_signed_rank(x, y) -> TestResult:
    """Paired signed-rank test; W = min(W+, W-)."""
    xa = _as_finite_array(x, "x")
    ya = _as_finite_array(y, "y")
    if xa.size != ya.size:
        raise LengthMismatchError(f"length mismatch: {xa.size} vs {ya.size}")
    diffs = xa - ya
    diffs = diffs[diffs != 0.0]
    n = diffs.size
    if n == 0:
        raise AllZeroDifferencesError("all paired differences are zero")
    ranks = _midranks(np.abs(diffs))
    w_plus = float(ranks[diffs > 0].sum())
    w_minus = float(ranks[diffs < 0].sum())
    w = min(w_plus, w_minus)

    if n <= 25:
        doubled = [int(round(2.0 * r)) for r in ranks]
        p = min(1.0, 2.0 * _signed_rank_tail(doubled, int(round(2.0 * w))))
    else:
        mean = n * (n + 1) / 4.0
        _, tie_counts = np.unique(np.abs(diffs), return_counts=True)
        tie_term = float(((tie_counts**3) - tie_counts).sum()) / 48.0
        var = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term
        if var <= 0.0:
            p = 1.0
        else:
            z = (w - mean) / math.sqrt(var)
            p = min(1.0, 2.0 * float(_norm.cdf(z)))
    return TestResult(statistic=w, p_value=p, n=n, method=StatMethod.WILCOXON_SIGNED_RANK)


def u_counts(x, y) -> tuple[float, float]:
    """Tie-aware U statistics in both orientations; their sum is nx * ny."""
    xa = _as_finite_array(x, "x")
    ya = _as_finite_array(y, "y")
    if xa.size == 0 or ya.size == 0:
        raise EmptyClassError("u_counts requires non-empty samples")
    nx, ny = xa.size, ya.size
    ranks = _midranks(np.concatenate([xa, ya]))
    rank_sum_x = float(ranks[:nx].sum())
    u_xy = rank_sum_x - nx * (nx + 1) / 2.0
    return u_xy, nx * ny - u_xy


def _rank_subset_counts(doubled_ranks: np.ndarray, m: int) -> np.ndarray:
    """Null counts of the doubled rank-sum of a uniform m-subset."""
    total = int(doubled_ranks.sum())
    f = np.zeros((m + 1, total + 1), dtype=np.float64)
    f[0, 0] = 1.0
    for dr in doubled_ranks:
        dr = int(dr)
        for k in range(m, 0, -1):  # descending: row k-1 not yet updated
            f[k, dr:] += f[k - 1, : total + 1 - dr]
    return f[m]


def mann_whitney_u(x, y) -> TestResult:
    """Unpaired rank test; U minimized over orientation."""
    u_xy, u_yx = u_counts(x, y)
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    nx, ny = xa.size, ya.size
    u = min(u_xy, u_yx)
    n = nx + ny

    if nx * ny <= 400:
        pooled = np.concatenate([xa, ya])
        doubled = np.rint(2.0 * _midranks(pooled)).astype(np.int64)
        m = min(nx, ny)
        # U of the tracked (smaller) class; its null distribution is symmetric
        # about nx*ny/2, so the lower tail at u covers both orientations.
        doubled_max = int(round(2.0 * u)) + m * (m + 1)
        p = min(1.0, 2.0 * _rank_subset_tail(doubled, m, doubled_max))
    else:
        mean = nx * ny / 2.0
        _, tie_counts = np.unique(np.concatenate([xa, ya]), return_counts=True)
        tie_term = float(((tie_counts**3) - tie_counts).sum()) / (n * (n - 1))
        var = (nx * ny / 12.0) * ((n + 1) - tie_term)
        if var <= 0.0:
            p = 1.0
        else:
            z = (u - mean) / math.sqrt(var)
            p = min(1.0, 2.0 * float(_norm.cdf(z)))
    return TestResult(statistic=u, p_value=p, n=n, method=StatMethod.MANN_WHITNEY_U)


def bonferroni(p_values) -> list[float]:
    """Multiply each p by the family size and clamp to 1."""
    ps = list(p_values)
    if not ps:
        raise OutOfRangeError("no p-values to correct")
    for p in ps:
        if not (0.0 <= p <= 1.0):
            raise OutOfRangeError(f"p-value {p!r} outside [0, 1]")
    m = len(ps)
    return [min(1.0, p * m) for p in ps]


def format_p(p: float) -> str:
    """Human rendering; vanishing p prints as a bound, never 0."""
    if p < 1e-15:
        return "< 1e-15"
    return format(p, ".6g")
