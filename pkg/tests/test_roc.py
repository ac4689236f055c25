import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import make_dataset
from fusionlab.errors import EmptyClassError, NonFiniteError
from fusionlab.roc import auc, observer_auc, roc_curve

score_lists = st.lists(st.integers(0, 6), min_size=1, max_size=30)


class TestAucExamples:
    def test_perfect_separation(self):
        assert auc([2, 3], [0, 1]).value == 1.0

    def test_all_ties(self):
        assert auc([1, 1], [1, 1]).value == 0.5

    def test_mixed_with_tie(self):
        # pair counting: (3>1) + (3>2) + (2>1) + 0.5*(2=2) = 3.5 of 4
        assert auc([3, 2], [1, 2]).value == 0.875
        assert oracles.pairwise_auc([3, 2], [1, 2]) == 0.875

    def test_counts_recorded(self):
        result = auc([1, 2, 3], [0, 0])
        assert (result.n_same, result.n_different) == (3, 2)

    def test_empty_class(self):
        with pytest.raises(EmptyClassError):
            auc([], [1])
        with pytest.raises(EmptyClassError):
            auc([1], [])

    def test_non_finite(self):
        with pytest.raises(NonFiniteError):
            auc([float("nan")], [1])


class TestRocCurveExamples:
    def test_single_separating_threshold(self):
        assert roc_curve([2], [1]).points == ((0.0, 0.0), (0.0, 1.0), (1.0, 1.0))

    def test_all_ties_chance_diagonal(self):
        assert roc_curve([1], [1]).points == ((0.0, 0.0), (1.0, 1.0))

    def test_area_matches_pairwise(self):
        assert roc_curve([3, 2], [1, 2]).area() == pytest.approx(0.875, abs=1e-12)

    def test_curve_shape_invariants(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            same = rng.integers(0, 7, rng.integers(1, 20))
            diff = rng.integers(0, 7, rng.integers(1, 20))
            curve = roc_curve(same, diff)
            assert curve.points[0] == (0.0, 0.0)
            assert curve.points[-1] == (1.0, 1.0)
            xs = [p[0] for p in curve.points]
            ys = [p[1] for p in curve.points]
            assert xs == sorted(xs)
            assert ys == sorted(ys)
            assert list(curve.thresholds) == sorted(curve.thresholds, reverse=True)


class TestObserverAuc:
    def test_label_indicator_observer(self):
        ds = make_dataset([[1.0, 1.0, 0.0, 0.0]], "ssdd")
        assert observer_auc(ds, "obs0").value == 1.0

    def test_constant_observer(self):
        ds = make_dataset([[0.5, 0.5, 0.5, 0.5]], "ssdd")
        assert observer_auc(ds, "obs0").value == 0.5

    def test_anticorrelated_observer(self):
        ds = make_dataset([[0.0, 0.0, 1.0, 1.0]], "ssdd")
        assert observer_auc(ds, "obs0").value == 0.0


class TestAucProperties:
    @given(score_lists, score_lists)
    @settings(max_examples=150, deadline=None)
    def test_matches_pairwise_oracle(self, same, diff):
        assert abs(auc(same, diff).value - oracles.pairwise_auc(same, diff)) <= 1e-12

    @given(score_lists, score_lists)
    @settings(max_examples=150, deadline=None)
    def test_complement_symmetry_exact(self, same, diff):
        assert auc(same, diff).value + auc(diff, same).value == 1.0

    @given(score_lists, score_lists)
    @settings(max_examples=100, deadline=None)
    def test_trapezoid_equivalence(self, same, diff):
        area = oracles.trapezoid_area(roc_curve(same, diff).points)
        assert abs(auc(same, diff).value - area) <= 1e-12

    @given(score_lists, score_lists)
    @settings(max_examples=100, deadline=None)
    def test_monotone_transform_invariance(self, same, diff):
        base = auc(same, diff).value
        for transform in (lambda v: v**3, lambda v: 2.0 * v + 1.0):
            mapped = auc([transform(v) for v in same], [transform(v) for v in diff]).value
            assert mapped == base

    @given(
        score_lists, score_lists,
        st.sampled_from([0.5, 2.0, 3.0]), st.integers(-4, 4),
    )
    @settings(max_examples=100, deadline=None)
    def test_positive_affine_invariance(self, same, diff, slope, intercept):
        base = auc(same, diff).value
        mapped = auc(
            [slope * v + intercept for v in same],
            [slope * v + intercept for v in diff],
        ).value
        assert mapped == base
