"""Optimal dyad selection by exact maximum-weight matching, plus baselines.

The pool of observers forms a complete graph whose edge weights are the fused
AUCs of the corresponding pairs. The exact optimum comes from the blossom
method (networkx); an independent subset-DP route is provided for up to 20
vertices and doubles as the oracle in tests. Random near-perfect matchings
give the reference distribution the optimum is measured against.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from collections.abc import Sequence

import networkx as nx
import numpy as np

from . import _kernels
from ._util import exact_mean
from .data import RatingDataset
from .errors import (
    AsymmetricWeightsError,
    InvalidWeightError,
    TooFewObserversError,
    TooFewReplicationsError,
)
from .fusion import all_pairs
from .roc import observer_auc


@dataclass(frozen=True)
class MatchingResult:
    """Vertex-disjoint pairs with their total weight and mean pair weight.

    ``system_auc`` is the mean fused AUC over the matched pairs; the odd-one-
    out (if any) is excluded unless ``include_unmatched`` added its solo AUC
    from the weight matrix diagonal.
    """

    pairs: tuple[tuple[str, str], ...]
    unmatched: str | None
    total_weight: float
    system_auc: float


def _checked_weights(weights) -> np.ndarray:
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise InvalidWeightError(f"weights must be square, got shape {w.shape}")
    n = w.shape[0]
    if n < 2:
        raise TooFewObserversError("matching needs at least 2 observers")
    if not np.isfinite(w).all():
        raise InvalidWeightError("weights must be finite")
    off_diag = w[~np.eye(n, dtype=bool)]
    if off_diag.size and (off_diag.min() < 0.0 or off_diag.max() > 1.0):
        raise InvalidWeightError("weights must lie in [0, 1]")
    if not (w == w.T).all():
        raise AsymmetricWeightsError("weight matrix is not symmetric")
    return w


def _ids_for(n: int, ids: Sequence[str] | None) -> list[str]:
    if ids is None:
        return [str(i) for i in range(n)]
    ids = list(ids)
    if len(ids) != n:
        raise InvalidWeightError(f"{len(ids)} ids for {n} vertices")
    return ids


def _build_result(
    index_pairs: list[tuple[int, int]],
    w: np.ndarray,
    ids: list[str],
    include_unmatched: bool,
) -> MatchingResult:
    n = w.shape[0]
    index_pairs = sorted(tuple(sorted(p)) for p in index_pairs)
    matched = {v for pair in index_pairs for v in pair}
    leftover = [i for i in range(n) if i not in matched]
    unmatched = ids[leftover[0]] if leftover else None
    pair_weights = [float(w[i, j]) for i, j in index_pairs]
    total_weight = math.fsum(pair_weights)
    contributions = list(pair_weights)
    if include_unmatched and leftover:
        contributions.append(float(w[leftover[0], leftover[0]]))
    return MatchingResult(
        pairs=tuple((ids[i], ids[j]) for i, j in index_pairs),
        unmatched=unmatched,
        total_weight=total_weight,
        system_auc=exact_mean(contributions),
    )


def optimal_matching(
    weights, ids: Sequence[str] | None = None, include_unmatched: bool = False
) -> MatchingResult:
    """Exact maximum-weight matching of the complete graph (blossom method).

    With non-negative weights the optimum can always be extended to maximum
    cardinality at no cost, so at most one vertex stays unmatched.
    """
    w = _checked_weights(weights)
    n = w.shape[0]
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    for i in range(n):
        for j in range(i + 1, n):
            graph.add_edge(i, j, weight=w[i, j])
    mate = nx.max_weight_matching(graph, maxcardinality=True)
    return _build_result([tuple(sorted(e)) for e in mate], w, _ids_for(n, ids), include_unmatched)


def matching_dp(
    weights, ids: Sequence[str] | None = None, include_unmatched: bool = False
) -> MatchingResult:
    """Independent exact route: subset dynamic program (up to 20 vertices)."""
    w = _checked_weights(weights)
    if w.shape[0] > _kernels.MAX_DP_VERTICES:
        raise InvalidWeightError(
            f"subset DP supports at most {_kernels.MAX_DP_VERTICES} vertices"
        )
    pairs = _kernels.matching_dp_pairs(w)
    return _build_result(pairs, w, _ids_for(w.shape[0], ids), include_unmatched)


def random_matching(
    observer_ids: Sequence[str],
    seed,
    weights=None,
    include_unmatched: bool = False,
) -> MatchingResult:
    """Uniformly random near-perfect matching via a seeded shuffle.

    Weight statistics are filled when a weight matrix (aligned to
    ``observer_ids``) is supplied; otherwise they are NaN.
    """
    ids = list(observer_ids)
    n = len(ids)
    if n < 2:
        raise TooFewObserversError("matching needs at least 2 observers")
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    index_pairs = [(int(order[2 * k]), int(order[2 * k + 1])) for k in range(n // 2)]
    if weights is None:
        index_pairs = sorted(tuple(sorted(p)) for p in index_pairs)
        matched = {v for pair in index_pairs for v in pair}
        leftover = [i for i in range(n) if i not in matched]
        return MatchingResult(
            pairs=tuple((ids[i], ids[j]) for i, j in index_pairs),
            unmatched=ids[leftover[0]] if leftover else None,
            total_weight=float("nan"),
            system_auc=float("nan"),
        )
    return _build_result(index_pairs, _checked_weights(weights), ids, include_unmatched)


@dataclass(frozen=True)
class BaselineReport:
    """Random-pairing reference distribution and the optimum's distance from it."""

    replications: int
    mean: float
    sd: float
    z: float | None  # None when the random distribution is degenerate (sd = 0)
    optimal_system_auc: float
    system_aucs: tuple[float, ...]


def random_baseline(
    weights,
    replications: int,
    seed,
    ids: Sequence[str] | None = None,
) -> BaselineReport:
    """Mean/sd of random-system AUCs and the optimum's z-distance.

    Replication k draws its own stream from (seed, k), so results do not
    depend on evaluation order. The sd is the sample (n - 1) deviation.
    """
    if replications < 2:
        raise TooFewReplicationsError("need at least 2 replications")
    w = _checked_weights(weights)
    id_list = _ids_for(w.shape[0], ids)
    optimal = optimal_matching(w, id_list)
    aucs = [
        random_matching(id_list, (seed, k), w).system_auc for k in range(replications)
    ]
    mean = exact_mean(aucs)
    sd = statistics.stdev(aucs)
    z = None if sd == 0.0 else (optimal.system_auc - mean) / sd
    return BaselineReport(
        replications=replications,
        mean=mean,
        sd=sd,
        z=z,
        optimal_system_auc=optimal.system_auc,
        system_aucs=tuple(aucs),
    )


def build_weight_matrix(dataset: RatingDataset) -> tuple[np.ndarray, list[str]]:
    """Fused-AUC weight matrix over all observer pairs.

    The diagonal holds each observer's solo AUC (fusing a performer with
    itself reproduces its own responses), which is what the unmatched
    observer contributes under ``include_unmatched``.
    """
    ids = list(dataset.observer_ids)
    n = len(ids)
    index = {oid: k for k, oid in enumerate(ids)}
    w = np.zeros((n, n), dtype=np.float64)
    for record in all_pairs(dataset):
        i, j = index[record.performer_a], index[record.performer_b]
        w[i, j] = w[j, i] = record.auc_fused
    for oid in ids:
        k = index[oid]
        w[k, k] = observer_auc(dataset, oid).value
    return w, ids
