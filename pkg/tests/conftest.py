import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fusionlab.data import ItemLabel, Polarity, RatingDataset, RatingScale


def make_dataset(
    responses,
    labels,
    observer_ids=None,
    scale=None,
):
    """Dataset from a plain matrix and a label string like 'ssdd'."""
    matrix = np.asarray(responses, dtype=np.float64)
    n_obs, n_items = matrix.shape
    if observer_ids is None:
        observer_ids = tuple(f"obs{i}" for i in range(n_obs))
    if scale is None:
        lo = min(0.0, float(matrix.min()))
        hi = max(1.0, float(matrix.max()))
        scale = RatingScale(lo, hi, Polarity.HIGHER_MEANS_SAME)
    label_map = {"s": ItemLabel.SAME, "d": ItemLabel.DIFFERENT}
    return RatingDataset(
        observer_ids=tuple(observer_ids),
        item_ids=tuple(f"item{j}" for j in range(n_items)),
        labels=tuple(label_map[c] for c in labels),
        responses=matrix,
        scale=scale,
    )


@pytest.fixture
def tiny_dataset():
    return make_dataset([[1.0, 0.8, 0.2, 0.1], [0.9, 0.6, 0.4, 0.3]], "ssdd")


def write_ratings_csv(path, rows):
    lines = ["observer_id,item_id,response"]
    lines += [f"{o},{i},{r}" for o, i, r in rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_items_csv(path, rows):
    lines = ["item_id,label"]
    lines += [f"{i},{lab}" for i, lab in rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
