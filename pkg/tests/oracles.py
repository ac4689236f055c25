"""Independent brute-force oracles used to pin expected values.

Everything here is deliberately naive: pair loops, full enumerations, and
plain recursion, sharing no code path with the implementations under test.
"""

import itertools
import math


def pairwise_auc(same, different):
    """O(n*m) pair-counting AUC with half credit for ties."""
    wins = 0.0
    for s in same:
        for d in different:
            if s > d:
                wins += 1.0
            elif s == d:
                wins += 0.5
    return wins / (len(same) * len(different))


def trapezoid_area(points):
    total = 0.0
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        total += (x1 - x0) * (y0 + y1) * 0.5
    return total


def best_matching_weight(weights):
    """Maximum total weight over all matchings, by plain recursion."""
    n = len(weights)

    def solve(available):
        if not available:
            return 0.0
        first, *rest = available
        best = solve(rest)  # leave first unmatched
        for k, other in enumerate(rest):
            remaining = rest[:k] + rest[k + 1 :]
            best = max(best, weights[first][other] + solve(remaining))
        return best

    return solve(list(range(n)))


def signed_rank_p(differences):
    """Exact two-sided p for W = min(W+, W-) by enumerating all sign flips."""
    diffs = [d for d in differences if d != 0.0]
    n = len(diffs)
    magnitudes = sorted(abs(d) for d in diffs)
    ranks = {}
    i = 0
    while i < n:
        j = i
        while j < n and magnitudes[j] == magnitudes[i]:
            j += 1
        midrank = (i + 1 + j) / 2.0
        ranks[magnitudes[i]] = midrank
        i = j
    rank_list = [ranks[abs(d)] for d in diffs]
    w_plus = sum(r for d, r in zip(diffs, rank_list) if d > 0)
    w_minus = sum(r for d, r in zip(diffs, rank_list) if d < 0)
    w = min(w_plus, w_minus)
    at_most = 0
    for signs in itertools.product((1, -1), repeat=n):
        stat = sum(r for s, r in zip(signs, rank_list) if s > 0)
        if stat <= w:
            at_most += 1
    return min(1.0, 2.0 * at_most / 2**n), w


def mann_whitney_p(x, y):
    """Exact two-sided p for U = min orientation by enumerating subsets."""

    def u_of(xs, ys):
        total = 0.0
        for a in xs:
            for b in ys:
                if a > b:
                    total += 1.0
                elif a == b:
                    total += 0.5
        return total

    u_obs = min(u_of(x, y), u_of(y, x))
    pooled = list(x) + list(y)
    nx = len(x)
    indices = range(len(pooled))
    at_most = 0
    count = 0
    for subset in itertools.combinations(indices, nx):
        chosen = [pooled[i] for i in subset]
        others = [pooled[i] for i in indices if i not in subset]
        count += 1
        if u_of(chosen, others) <= u_obs:
            at_most += 1
    return min(1.0, 2.0 * at_most / count), u_obs


def fisher_ci(r, n, crit=1.959963984540054):
    z = math.atanh(r)
    half = crit / math.sqrt(n - 3)
    return math.tanh(z - half), math.tanh(z + half)
