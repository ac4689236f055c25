import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fusionlab.errors import (
    AllZeroDifferencesError,
    ConstantInputError,
    EmptyClassError,
    LengthMismatchError,
    OutOfRangeError,
)
from fusionlab.roc import auc
from fusionlab.stats import (
    StatMethod,
    bonferroni,
    mann_whitney_u,
    pearson_r,
    u_counts,
    wilcoxon_signed_rank,
)

score_lists = st.lists(st.integers(0, 6), min_size=1, max_size=12)


class TestPearson:
    def test_perfect_linear(self):
        assert pearson_r([1, 2, 3], [2, 4, 6]).statistic == 1.0

    def test_perfect_inverse(self):
        assert pearson_r([1, 2, 3], [3, 2, 1]).statistic == -1.0

    def test_fisher_ci_oracle(self):
        # CI for r exactly 0.5 over 103 pairs, pinned by the independent
        # Fisher-transform oracle; the data are built to correlate at 0.5.
        lo, hi = oracles.fisher_ci(0.5, 103)
        x = np.arange(103.0)
        rng = np.random.default_rng(11)
        # construct y with exact r=0.5 via Gram-Schmidt
        noise = rng.normal(size=103)
        noise -= noise.mean()
        x_c = x - x.mean()
        noise -= (noise @ x_c) / (x_c @ x_c) * x_c
        y = x_c / np.linalg.norm(x_c) * 0.5 + noise / np.linalg.norm(noise) * math.sqrt(0.75)
        result = pearson_r(x, y)
        assert result.statistic == pytest.approx(0.5, abs=1e-12)
        assert result.ci_low == pytest.approx(lo, abs=1e-9)
        assert result.ci_high == pytest.approx(hi, abs=1e-9)
        assert result.ci_low == pytest.approx(0.339307, abs=1e-5)
        assert result.ci_high == pytest.approx(0.632337, abs=1e-5)

    def test_ci_brackets_r(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            x = rng.normal(size=30)
            y = rng.normal(size=30) + 0.3 * x
            res = pearson_r(x, y)
            assert res.ci_low <= res.statistic <= res.ci_high

    def test_constant_input(self):
        with pytest.raises(ConstantInputError):
            pearson_r([1, 1, 1], [1, 2, 3])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            pearson_r([1, 2, 3], [1, 2])

    @given(
        st.lists(st.integers(-5, 5), min_size=4, max_size=20),
        st.sampled_from([0.5, 2.0]),
        st.integers(-3, 3),
    )
    @settings(max_examples=60, deadline=None)
    def test_affine_invariance(self, xs, slope, intercept):
        ys = [((i * 7) % 5) - 2 for i in range(len(xs))]
        if len(set(xs)) < 2 or len(set(ys)) < 2:
            return
        base = pearson_r(xs, ys).statistic
        mapped = pearson_r([slope * v + intercept for v in xs], ys).statistic
        assert mapped == pytest.approx(base, abs=1e-12)


class TestWilcoxon:
    def test_one_sided_dominance_gives_zero(self):
        res = wilcoxon_signed_rank([1, 2, 3], [2, 4, 6])
        assert res.statistic == 0.0

    def test_hand_ranked_example(self):
        res = wilcoxon_signed_rank([1, -2, 3], [0, 0, 0])
        assert res.statistic == 2.0  # ranks 1,2,3; W+ = 4, W- = 2
        assert res.method is StatMethod.WILCOXON_SIGNED_RANK

    def test_all_zero_differences(self):
        with pytest.raises(AllZeroDifferencesError):
            wilcoxon_signed_rank([1.0, 2.0], [1.0, 2.0])

    def test_exact_p_matches_enumeration(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            n = int(rng.integers(2, 10))
            x = rng.integers(0, 5, n).astype(float)
            y = rng.integers(0, 5, n).astype(float)
            diffs = x - y
            if not np.any(diffs):
                continue
            expected_p, expected_w = oracles.signed_rank_p(diffs)
            res = wilcoxon_signed_rank(x, y)
            assert res.statistic == expected_w
            assert res.p_value == pytest.approx(expected_p, abs=1e-12)

    def test_shift_invariance(self):
        x = [3.0, 5.0, 2.0, 8.0, 1.0]
        y = [1.0, 6.0, 2.5, 4.0, 0.5]
        base = wilcoxon_signed_rank(x, y)
        shifted = wilcoxon_signed_rank([v + 10 for v in x], [v + 10 for v in y])
        assert shifted.statistic == base.statistic
        assert shifted.p_value == base.p_value

    def test_normal_approximation_regime(self):
        rng = np.random.default_rng(9)
        x = rng.normal(0.4, 1.0, 40)
        y = rng.normal(0.0, 1.0, 40)
        res = wilcoxon_signed_rank(x, y)
        assert res.n == 40
        assert 0.0 < res.p_value <= 1.0


class TestMannWhitney:
    def test_zero_wins(self):
        assert mann_whitney_u([1, 2], [3]).statistic == 0.0

    def test_same_multiset_gives_half(self):
        res = mann_whitney_u([1, 2, 3], [3, 1, 2])
        assert res.statistic == 4.5  # nx*ny/2

    def test_singleton_tie(self):
        assert mann_whitney_u([5], [5]).statistic == 0.5

    def test_empty_class(self):
        with pytest.raises(EmptyClassError):
            mann_whitney_u([], [1])

    def test_exact_p_matches_enumeration(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            nx = int(rng.integers(1, 6))
            ny = int(rng.integers(1, 6))
            x = rng.integers(0, 4, nx).astype(float)
            y = rng.integers(0, 4, ny).astype(float)
            expected_p, expected_u = oracles.mann_whitney_p(x, y)
            res = mann_whitney_u(x, y)
            assert res.statistic == expected_u
            assert res.p_value == pytest.approx(expected_p, abs=1e-12)

    def test_normal_approximation_regime(self):
        rng = np.random.default_rng(17)
        x = rng.normal(0.0, 1.0, 25)
        y = rng.normal(0.8, 1.0, 25)
        res = mann_whitney_u(x, y)  # nx*ny = 625 > 400
        assert 0.0 < res.p_value < 0.05

    @given(score_lists, score_lists)
    @settings(max_examples=100, deadline=None)
    def test_orientation_counts_sum(self, x, y):
        u_xy, u_yx = u_counts(x, y)
        assert u_xy + u_yx == len(x) * len(y)

    @given(score_lists, score_lists)
    @settings(max_examples=100, deadline=None)
    def test_auc_identity(self, x, y):
        u_xy, _ = u_counts(x, y)
        assert abs(auc(x, y).value - u_xy / (len(x) * len(y))) <= 1e-12


class TestBonferroni:
    def test_single(self):
        assert bonferroni([0.01]) == [0.01]

    def test_triple_with_clamp(self):
        assert bonferroni([0.01, 0.02, 0.5]) == [0.03, 0.06, 1.0]

    def test_double(self):
        assert bonferroni([0.4, 0.4]) == [0.8, 0.8]

    def test_out_of_range(self):
        with pytest.raises(OutOfRangeError):
            bonferroni([1.2])
        with pytest.raises(OutOfRangeError):
            bonferroni([])
