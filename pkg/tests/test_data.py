import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_dataset, write_items_csv, write_ratings_csv
from fusionlab.data import (
    ItemLabel,
    Polarity,
    RatingScale,
    load_dataset,
    load_machine_scores,
    normalize_polarity,
    save_dataset,
)
from fusionlab.errors import (
    DegenerateLabelsError,
    DuplicateIdError,
    InvalidConfigError,
    MissingCellError,
    OutOfScaleError,
    UnknownItemError,
    UnknownLabelError,
    UnknownObserverError,
)

SCALE_15 = RatingScale(1, 5)
SCALE_15_INV = RatingScale(1, 5, Polarity.HIGHER_MEANS_DIFFERENT)


class TestRatingScale:
    def test_min_max_order_enforced(self):
        with pytest.raises(InvalidConfigError):
            RatingScale(5, 1)

    def test_reflection(self):
        assert SCALE_15_INV.reflect(1) == 5
        assert SCALE_15_INV.reflect(5) == 1


class TestNormalizePolarity:
    def test_identity_for_same_polarity(self):
        assert normalize_polarity(3, SCALE_15) == 3

    def test_endpoint_reflection(self):
        assert normalize_polarity(1, SCALE_15_INV) == 5

    def test_signed_scale_reflection(self):
        scale = RatingScale(-3, 3, Polarity.HIGHER_MEANS_DIFFERENT)
        assert normalize_polarity(2, scale) == -2  # min + max - value

    def test_out_of_scale(self):
        with pytest.raises(OutOfScaleError):
            normalize_polarity(6, SCALE_15)

    @given(st.integers(2, 10), st.integers(0, 40))
    def test_involution_on_grid(self, width, quarter_steps):
        scale = RatingScale(0, width, Polarity.HIGHER_MEANS_DIFFERENT)
        value = min(width, quarter_steps * 0.25)
        once = scale.reflect(value)
        assert scale.reflect(once) == value

    @given(st.lists(st.integers(0, 40), min_size=2, max_size=2, unique=True))
    def test_reflection_reverses_rank(self, quarter_steps):
        scale = RatingScale(0, 10, Polarity.HIGHER_MEANS_DIFFERENT)
        a, b = sorted(q * 0.25 for q in quarter_steps)
        assert normalize_polarity(a, scale) > normalize_polarity(b, scale)


def _write_pair(tmp_path, ratings_rows, items_rows):
    ratings = tmp_path / "ratings.csv"
    items = tmp_path / "items.csv"
    write_ratings_csv(ratings, ratings_rows)
    write_items_csv(items, items_rows)
    return ratings, items


class TestLoadDataset:
    def test_well_formed_round_trips(self, tmp_path):
        ratings, items = _write_pair(
            tmp_path,
            [
                ("A", "i1", 5), ("A", "i2", 4), ("A", "i3", 2), ("A", "i4", 1),
                ("B", "i1", 4), ("B", "i2", 3), ("B", "i3", 1), ("B", "i4", 2),
            ],
            [("i1", "same"), ("i2", "same"), ("i3", "different"), ("i4", "different")],
        )
        ds = load_dataset(ratings, items, SCALE_15)
        assert ds.responses.shape == (2, 4)
        assert ds.observer_ids == ("A", "B")
        assert ds.labels[0] is ItemLabel.SAME

    def test_efct_shaped_file(self, tmp_path):
        # 84 items, 42/42 split, 5-point scale with inverted direction.
        items_rows = [(f"i{j}", "same" if j < 42 else "different") for j in range(84)]
        ratings_rows = [("A", f"i{j}", 1 + (j * 3) % 5) for j in range(84)]
        ratings, items = _write_pair(tmp_path, ratings_rows, items_rows)
        ds = load_dataset(ratings, items, SCALE_15_INV)
        assert ds.n_items == 84
        assert sum(1 for lab in ds.labels if lab is ItemLabel.SAME) == 42
        # raw 1 ("sure same" on the inverted scale) normalizes to the top.
        raw_first = ratings_rows[0][2]
        assert ds.responses[0, 0] == 6 - raw_first

    def test_missing_cell(self, tmp_path):
        ratings, items = _write_pair(
            tmp_path,
            [("A", "i1", 3), ("A", "i2", 2), ("B", "i1", 4)],
            [("i1", "same"), ("i2", "different")],
        )
        with pytest.raises(MissingCellError):
            load_dataset(ratings, items, SCALE_15)

    def test_duplicate_cell(self, tmp_path):
        ratings, items = _write_pair(
            tmp_path,
            [("A", "i1", 3), ("A", "i1", 4), ("A", "i2", 2)],
            [("i1", "same"), ("i2", "different")],
        )
        with pytest.raises(DuplicateIdError):
            load_dataset(ratings, items, SCALE_15)

    def test_duplicate_item(self, tmp_path):
        ratings, items = _write_pair(
            tmp_path,
            [("A", "i1", 3)],
            [("i1", "same"), ("i1", "different")],
        )
        with pytest.raises(DuplicateIdError):
            load_dataset(ratings, items, SCALE_15)

    def test_unknown_label(self, tmp_path):
        ratings, items = _write_pair(
            tmp_path, [("A", "i1", 3)], [("i1", "Same"), ("i2", "different")]
        )
        with pytest.raises(UnknownLabelError):
            load_dataset(ratings, items, SCALE_15)

    def test_unknown_item_in_ratings(self, tmp_path):
        ratings, items = _write_pair(
            tmp_path,
            [("A", "i1", 3), ("A", "iX", 2)],
            [("i1", "same"), ("i2", "different")],
        )
        with pytest.raises(UnknownItemError):
            load_dataset(ratings, items, SCALE_15)

    def test_degenerate_labels(self, tmp_path):
        ratings, items = _write_pair(
            tmp_path,
            [("A", "i1", 3), ("A", "i2", 2)],
            [("i1", "same"), ("i2", "same")],
        )
        with pytest.raises(DegenerateLabelsError):
            load_dataset(ratings, items, SCALE_15)

    def test_out_of_scale(self, tmp_path):
        ratings, items = _write_pair(
            tmp_path,
            [("A", "i1", 9), ("A", "i2", 2)],
            [("i1", "same"), ("i2", "different")],
        )
        with pytest.raises(OutOfScaleError):
            load_dataset(ratings, items, SCALE_15)


class TestSaveLoadIdentity:
    @pytest.mark.parametrize("scale", [SCALE_15, SCALE_15_INV])
    def test_round_trip(self, tmp_path, scale):
        items_rows = [(f"i{j}", "same" if j % 2 else "different") for j in range(6)]
        ratings_rows = [
            (o, f"i{j}", 1 + (hash_free := (3 * j + k)) % 5)
            for k, o in enumerate("ABC")
            for j in range(6)
        ]
        ratings, items = _write_pair(tmp_path, ratings_rows, items_rows)
        ds = load_dataset(ratings, items, scale)
        out_r, out_i = tmp_path / "out_r.csv", tmp_path / "out_i.csv"
        save_dataset(ds, out_r, out_i)
        again = load_dataset(out_r, out_i, scale)
        assert again.observer_ids == ds.observer_ids
        assert again.item_ids == ds.item_ids
        assert again.labels == ds.labels
        assert np.array_equal(again.responses, ds.responses)
        # a second save must be byte-stable
        out_r2, out_i2 = tmp_path / "out_r2.csv", tmp_path / "out_i2.csv"
        save_dataset(again, out_r2, out_i2)
        assert out_r2.read_bytes() == out_r.read_bytes()
        assert out_i2.read_bytes() == out_i.read_bytes()


class TestDatasetAccess:
    def test_unknown_observer(self, tiny_dataset):
        with pytest.raises(UnknownObserverError):
            tiny_dataset.observer_index("nobody")

    def test_responses_read_only(self, tiny_dataset):
        with pytest.raises(ValueError):
            tiny_dataset.responses[0, 0] = 9.9


class TestMachineScores:
    def test_load_and_align(self, tmp_path, tiny_dataset):
        path = tmp_path / "machine.csv"
        path.write_text(
            "item_id,score\nitem3,0.1\nitem2,0.4\nitem1,0.6\nitem0,0.9\n",
            encoding="utf-8",
        )
        scores = load_machine_scores(path)
        assert scores.machine_id == "machine"
        aligned = scores.aligned_to(tiny_dataset)
        assert aligned.tolist() == [0.9, 0.6, 0.4, 0.1]

    def test_mismatched_items(self, tmp_path, tiny_dataset):
        from fusionlab.errors import ItemMismatchError

        path = tmp_path / "machine.csv"
        path.write_text("item_id,score\nitemX,0.1\nitem1,0.2\n", encoding="utf-8")
        with pytest.raises(ItemMismatchError):
            load_machine_scores(path).aligned_to(tiny_dataset)
