# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: rank-sum AUC, batched pair fusion, subset-DP matching.

Bit-identical to fusionlab._kernels._fallback; see its docstring for why the
two implementations agree exactly despite different summation structure.
"""

from libc.stdlib cimport free, malloc, qsort

import numpy as np


cdef struct ScoredItem:
    double value
    unsigned char same


cdef int _compare_scored(const void* a, const void* b) noexcept nogil:
    cdef double av = (<const ScoredItem*> a).value
    cdef double bv = (<const ScoredItem*> b).value
    if av < bv:
        return -1
    if av > bv:
        return 1
    return 0


cdef double _auc_items(ScoredItem* items, Py_ssize_t n, Py_ssize_t ns, Py_ssize_t nd) noexcept nogil:
    cdef Py_ssize_t i = 0, j, k
    cdef double rank_sum = 0.0, midrank, run_same, u, total, u_op
    qsort(items, n, sizeof(ScoredItem), _compare_scored)
    while i < n:
        j = i
        while j < n and items[j].value == items[i].value:
            j += 1
        midrank = (<double> (i + 1 + j)) * 0.5
        run_same = 0.0
        for k in range(i, j):
            run_same += items[k].same
        rank_sum += midrank * run_same
        i = j
    u = rank_sum - (<double> ns) * (<double> (ns + 1)) * 0.5
    total = (<double> ns) * (<double> nd)
    u_op = total - u
    if u <= u_op:
        return u / total
    return 1.0 - u_op / total


def auc_scores(same, different):
    """Tie-aware rank-sum AUC of two score samples (midrank convention)."""
    cdef const double[::1] s = np.ascontiguousarray(same, dtype=np.float64)
    cdef const double[::1] d = np.ascontiguousarray(different, dtype=np.float64)
    cdef Py_ssize_t ns = s.shape[0], nd = d.shape[0], n = ns + nd, k
    cdef ScoredItem* items = <ScoredItem*> malloc(n * sizeof(ScoredItem))
    if items == NULL:
        raise MemoryError()
    cdef double result
    try:
        for k in range(ns):
            items[k].value = s[k]
            items[k].same = 1
        for k in range(nd):
            items[ns + k].value = d[k]
            items[ns + k].same = 0
        result = _auc_items(items, n, ns, nd)
    finally:
        free(items)
    return result


def pair_fused_aucs(responses, same_mask):
    """AUC of the per-item mean of every observer pair (condensed order)."""
    cdef const double[:, ::1] matrix = np.ascontiguousarray(responses, dtype=np.float64)
    cdef const unsigned char[::1] mask = np.ascontiguousarray(same_mask, dtype=np.uint8)
    cdef Py_ssize_t n_obs = matrix.shape[0], n_items = matrix.shape[1]
    cdef Py_ssize_t ns = 0, k, i, j, pos
    for k in range(n_items):
        if mask[k]:
            ns += 1
    cdef Py_ssize_t nd = n_items - ns
    out_arr = np.empty(n_obs * (n_obs - 1) // 2, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef ScoredItem* items = <ScoredItem*> malloc(n_items * sizeof(ScoredItem))
    if items == NULL:
        raise MemoryError()
    cdef Py_ssize_t si, di
    try:
        pos = 0
        for i in range(n_obs):
            for j in range(i + 1, n_obs):
                si = 0
                di = ns
                for k in range(n_items):
                    if mask[k]:
                        items[si].value = (matrix[i, k] + matrix[j, k]) * 0.5
                        items[si].same = 1
                        si += 1
                    else:
                        items[di].value = (matrix[i, k] + matrix[j, k]) * 0.5
                        items[di].same = 0
                        di += 1
                out[pos] = _auc_items(items, n_items, ns, nd)
                pos += 1
    finally:
        free(items)
    return out_arr


MAX_DP_VERTICES = 20


def matching_dp_pairs(weights):
    """Exact maximum-weight matching by subset DP; returns matched index pairs."""
    cdef const double[:, ::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n = w.shape[0]
    if n > MAX_DP_VERTICES:
        raise ValueError(f"subset DP supports at most {MAX_DP_VERTICES} vertices, got {n}")
    cdef size_t size = (<size_t> 1) << n
    cdef double* dp = <double*> malloc(size * sizeof(double))
    cdef signed char* choice = <signed char*> malloc(size * sizeof(signed char))
    if dp == NULL or choice == NULL:
        free(dp)
        free(choice)
        raise MemoryError()
    cdef size_t mask, rest, jm, low, jlow
    cdef int i, j, pick
    cdef double best, value
    pairs = []
    try:
        dp[0] = 0.0
        choice[0] = -1
        for mask in range(1, size):
            low = mask & (~mask + 1)
            i = _bit_index(low)
            rest = mask ^ low
            best = dp[rest]
            pick = -1
            jm = rest
            while jm:
                jlow = jm & (~jm + 1)
                j = _bit_index(jlow)
                jm ^= jlow
                value = dp[rest ^ jlow] + w[i, j]
                if value > best:
                    best = value
                    pick = j
            dp[mask] = best
            choice[mask] = <signed char> pick
        mask = size - 1
        while mask:
            low = mask & (~mask + 1)
            i = _bit_index(low)
            pick = choice[mask]
            if pick < 0:
                mask ^= low
                continue
            pairs.append((i, pick))
            mask ^= low | ((<size_t> 1) << pick)
    finally:
        free(dp)
        free(choice)
    return pairs


cdef inline int _bit_index(size_t low) noexcept nogil:
    cdef int idx = 0
    while low > 1:
        low >>= 1
        idx += 1
    return idx
