"""Tie-aware ROC curves and AUC.

AUC follows the midrank convention: the probability that a random
same-identity score beats a random different-identity score, with ties
credited 0.5. Computed by sort-and-rank in O(n log n); equals the trapezoidal
area of the tie-aware ROC curve and the normalized Mann-Whitney statistic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .data import RatingDataset
from .errors import EmptyClassError, NonFiniteError


@dataclass(frozen=True)
class Auc:
    value: float
    n_same: int
    n_different: int


@dataclass(frozen=True)
class RocCurve:
    """Descending-threshold sweep; ties grouped into diagonal segments."""

    points: tuple[tuple[float, float], ...]
    thresholds: tuple[float, ...]

    def area(self) -> float:
        """Trapezoidal area under the curve."""
        total = 0.0
        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            total += (x1 - x0) * (y0 + y1) * 0.5
        return total


def _checked(scores, name: str) -> np.ndarray:
    arr = np.ascontiguousarray(scores, dtype=np.float64)
    if arr.size == 0:
        raise EmptyClassError(f"no {name} scores")
    if not np.isfinite(arr).all():
        raise NonFiniteError(f"non-finite {name} score")
    return arr


def auc(scores_same, scores_different) -> Auc:
    """Tie-aware AUC of two score samples."""
    same = _checked(scores_same, "same-identity")
    different = _checked(scores_different, "different-identity")
    value = _kernels.auc_scores(same, different)
    return Auc(value=value, n_same=same.size, n_different=different.size)


def roc_curve(scores_same, scores_different) -> RocCurve:
    """One point per distinct score, swept from the highest threshold down."""
    same = np.sort(_checked(scores_same, "same-identity"))
    different = np.sort(_checked(scores_different, "different-identity"))
    ns, nd = same.size, different.size
    thresholds = np.unique(np.concatenate([same, different]))[::-1]
    # Predict "same" when score >= threshold.
    tp = ns - np.searchsorted(same, thresholds, side="left")
    fp = nd - np.searchsorted(different, thresholds, side="left")
    points = [(0.0, 0.0)]
    points.extend((float(fp_k) / nd, float(tp_k) / ns) for fp_k, tp_k in zip(fp, tp))
    return RocCurve(points=tuple(points), thresholds=tuple(float(t) for t in thresholds))


def observer_auc(dataset: RatingDataset, observer_id: str) -> Auc:
    """AUC of one observer's row, split by the item labels."""
    row = dataset.responses_for(observer_id)
    mask = dataset.same_mask
    return auc(row[mask], row[~mask])
