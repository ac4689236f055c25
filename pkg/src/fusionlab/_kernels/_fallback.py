"""Pure-NumPy twins of the compiled kernels.

Selected automatically when the extension is absent (or FUSIONLAB_PURE=1).
Results are bit-identical to the compiled versions: rank sums and pair counts
are dyadic rationals far below 2**52, so every partial sum is exact and the
single final division is the only rounding step in either implementation.
"""

import numpy as np

MAX_DP_VERTICES = 20


def _auc_value(u: float, n_same: int, n_different: int) -> float:
    # Complement-canonical: derive the value from the smaller tail so that
    # auc(s, d) + auc(d, s) == 1.0 holds exactly in IEEE double.
    total = float(n_same) * float(n_different)
    u_op = total - u
    if u <= u_op:
        return u / total
    return 1.0 - u_op / total


def auc_scores(same: np.ndarray, different: np.ndarray) -> float:
    """Tie-aware rank-sum AUC of two score samples (midrank convention)."""
    same = np.ascontiguousarray(same, dtype=np.float64)
    different = np.ascontiguousarray(different, dtype=np.float64)
    ns = same.size
    nd = different.size
    pooled = np.concatenate([same, different])
    _, inverse, counts = np.unique(pooled, return_inverse=True, return_counts=True)
    # 1-based midrank of each distinct value's run.
    cumulative = np.cumsum(counts)
    midrank = cumulative - (counts - 1) / 2.0
    rank_sum = float(midrank[inverse[:ns]].sum())
    u = rank_sum - ns * (ns + 1) / 2.0
    return _auc_value(u, ns, nd)


def pair_fused_aucs(responses: np.ndarray, same_mask: np.ndarray) -> np.ndarray:
    """AUC of the per-item mean of every observer pair.

    Returns the condensed upper triangle in row-major order:
    (0,1), (0,2), ..., (0,n-1), (1,2), ...
    """
    matrix = np.ascontiguousarray(responses, dtype=np.float64)
    mask = np.asarray(same_mask, dtype=bool)
    n = matrix.shape[0]
    out = np.empty(n * (n - 1) // 2, dtype=np.float64)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            fused = (matrix[i] + matrix[j]) * 0.5
            out[k] = auc_scores(fused[mask], fused[~mask])
            k += 1
    return out


def matching_dp_pairs(weights: np.ndarray) -> list[tuple[int, int]]:
    """Exact maximum-weight matching over all (possibly partial) matchings.

    Subset dynamic program; usable up to MAX_DP_VERTICES vertices. Returns the
    matched index pairs (i < j); weight totals are recomputed by the caller.
    """
    w = np.ascontiguousarray(weights, dtype=np.float64)
    n = w.shape[0]
    if n > MAX_DP_VERTICES:
        raise ValueError(f"subset DP supports at most {MAX_DP_VERTICES} vertices, got {n}")
    size = 1 << n
    dp = np.zeros(size, dtype=np.float64)
    choice = np.full(size, -1, dtype=np.int8)
    for mask in range(1, size):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        best = dp[rest]
        pick = -1
        jm = rest
        while jm:
            jlow = jm & -jm
            j = jlow.bit_length() - 1
            jm ^= jlow
            value = dp[rest ^ jlow] + w[i, j]
            if value > best:
                best = value
                pick = j
        dp[mask] = best
        choice[mask] = pick
    pairs = []
    mask = size - 1
    while mask:
        low = mask & -mask
        i = low.bit_length() - 1
        j = int(choice[mask])
        if j < 0:
            mask ^= low
            continue
        pairs.append((i, j))
        mask ^= low | (1 << j)
    return pairs
