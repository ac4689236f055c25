"""Rating datasets: domain types, CSV I/O, validation, polarity handling.

A dataset is a complete observers-by-items matrix of numeric ratings plus a
same/different ground-truth label per item. Rating scales may run in either
direction; everything downstream assumes "higher means more confident the
identities are the same", so datasets are polarity-normalized exactly once at
load (reflection value -> min + max - value) and written back in their raw
convention on save, making load -> save -> load an identity.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._util import fmt_shortest
from .errors import (
    DegenerateLabelsError,
    DuplicateIdError,
    InvalidConfigError,
    MalformedFileError,
    MissingCellError,
    NonFiniteError,
    OutOfScaleError,
    UnknownItemError,
    UnknownLabelError,
    UnknownObserverError,
)


class ItemLabel(enum.Enum):
    """Ground truth for one item: the two images show the same person or not."""

    SAME = "same"
    DIFFERENT = "different"

    @classmethod
    def from_text(cls, text: str) -> "ItemLabel":
        for member in cls:
            if member.value == text:
                return member
        raise UnknownLabelError(f"label must be 'same' or 'different', got {text!r}")


class Polarity(enum.Enum):
    HIGHER_MEANS_SAME = "higher-means-same"
    HIGHER_MEANS_DIFFERENT = "higher-means-different"


@dataclass(frozen=True)
class RatingScale:
    """Bounds and direction of a rating scale."""

    min: float
    max: float
    polarity: Polarity = Polarity.HIGHER_MEANS_SAME

    def __post_init__(self):
        if not (math.isfinite(self.min) and math.isfinite(self.max)):
            raise InvalidConfigError("scale bounds must be finite")
        if not self.min < self.max:
            raise InvalidConfigError(f"scale requires min < max, got [{self.min}, {self.max}]")

    def reflect(self, value: float) -> float:
        return self.min + self.max - value


def normalize_polarity(value: float, scale: RatingScale) -> float:
    """Map a raw rating to the internal higher-means-same convention.

    Identity for a higher-means-same scale; reflection min + max - value
    otherwise (an involution on the scale's grid).
    """
    if not (scale.min <= value <= scale.max):
        raise OutOfScaleError(f"rating {value!r} outside scale [{scale.min}, {scale.max}]")
    if scale.polarity is Polarity.HIGHER_MEANS_SAME:
        return value
    return scale.reflect(value)


@dataclass(frozen=True, eq=False)
class RatingDataset:
    """Complete, polarity-normalized observers-by-items rating matrix."""

    observer_ids: tuple[str, ...]
    item_ids: tuple[str, ...]
    labels: tuple[ItemLabel, ...]
    responses: np.ndarray  # shape (n_observers, n_items), float64, read-only
    scale: RatingScale
    _observer_index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        responses = np.ascontiguousarray(self.responses, dtype=np.float64)
        if len(set(self.observer_ids)) != len(self.observer_ids):
            raise DuplicateIdError("duplicate observer id")
        if len(set(self.item_ids)) != len(self.item_ids):
            raise DuplicateIdError("duplicate item id")
        if len(self.labels) != len(self.item_ids):
            raise InvalidConfigError("one label per item required")
        if responses.shape != (len(self.observer_ids), len(self.item_ids)):
            raise InvalidConfigError(
                f"responses shape {responses.shape} does not match "
                f"({len(self.observer_ids)}, {len(self.item_ids)})"
            )
        if not np.isfinite(responses).all():
            raise NonFiniteError("responses must be finite")
        if responses.size and (
            responses.min() < self.scale.min or responses.max() > self.scale.max
        ):
            raise OutOfScaleError("response outside declared scale bounds")
        n_same = sum(1 for lab in self.labels if lab is ItemLabel.SAME)
        if n_same == 0 or n_same == len(self.labels):
            raise DegenerateLabelsError(
                "dataset needs at least one same-identity and one different-identity item"
            )
        responses.flags.writeable = False
        object.__setattr__(self, "responses", responses)
        object.__setattr__(
            self, "_observer_index", {oid: i for i, oid in enumerate(self.observer_ids)}
        )

    @property
    def n_observers(self) -> int:
        return len(self.observer_ids)

    @property
    def n_items(self) -> int:
        return len(self.item_ids)

    @property
    def same_mask(self) -> np.ndarray:
        mask = np.array([lab is ItemLabel.SAME for lab in self.labels], dtype=bool)
        mask.flags.writeable = False
        return mask

    def observer_index(self, observer_id: str) -> int:
        try:
            return self._observer_index[observer_id]
        except KeyError:
            raise UnknownObserverError(f"unknown observer {observer_id!r}") from None

    def responses_for(self, observer_id: str) -> np.ndarray:
        return self.responses[self.observer_index(observer_id)]


@dataclass(frozen=True, eq=False)
class MachineScores:
    """Continuous similarity scores of one machine over a set of items."""

    machine_id: str
    item_ids: tuple[str, ...]
    scores: np.ndarray

    def __post_init__(self):
        scores = np.ascontiguousarray(self.scores, dtype=np.float64)
        if len(set(self.item_ids)) != len(self.item_ids):
            raise DuplicateIdError("duplicate item id in machine scores")
        if scores.shape != (len(self.item_ids),):
            raise InvalidConfigError("one score per item required")
        if not np.isfinite(scores).all():
            raise NonFiniteError("machine scores must be finite")
        scores.flags.writeable = False
        object.__setattr__(self, "scores", scores)

    def aligned_to(self, dataset: RatingDataset) -> np.ndarray:
        """Scores reordered to the dataset's item order.

        Raises ItemMismatchError unless the item sets are identical.
        """
        from .errors import ItemMismatchError

        index = {iid: i for i, iid in enumerate(self.item_ids)}
        if set(index) != set(dataset.item_ids):
            raise ItemMismatchError(
                f"machine {self.machine_id!r} does not cover exactly the dataset's items"
            )
        order = [index[iid] for iid in dataset.item_ids]
        return self.scores[order]


def _read_rows(path: str | Path, expected_header: list[str]) -> list[list[str]]:
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise MalformedFileError(f"cannot read {path}: {exc}") from exc
    if not rows or rows[0] != expected_header:
        raise MalformedFileError(
            f"{path}: expected header {','.join(expected_header)!r}, got "
            f"{','.join(rows[0]) if rows else '<empty file>'!r}"
        )
    body = [row for row in rows[1:] if row]
    for row in body:
        if len(row) != len(expected_header):
            raise MalformedFileError(f"{path}: malformed row {row!r}")
    return body


def _parse_float(text: str, path: Path | str, what: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise MalformedFileError(f"{path}: non-numeric {what} {text!r}") from None
    if not math.isfinite(value):
        raise MalformedFileError(f"{path}: non-finite {what} {text!r}")
    return value


def load_items(path: str | Path) -> tuple[tuple[str, ...], tuple[ItemLabel, ...]]:
    """Read the item manifest: header ``item_id,label``; file order is kept."""
    item_ids: list[str] = []
    labels: list[ItemLabel] = []
    seen: set[str] = set()
    for item_id, label_text in _read_rows(path, ["item_id", "label"]):
        if item_id in seen:
            raise DuplicateIdError(f"{path}: duplicate item id {item_id!r}")
        seen.add(item_id)
        item_ids.append(item_id)
        labels.append(ItemLabel.from_text(label_text))
    if not item_ids:
        raise MalformedFileError(f"{path}: no items")
    return tuple(item_ids), tuple(labels)


def load_dataset(
    ratings_path: str | Path, items_path: str | Path, scale: RatingScale
) -> RatingDataset:
    """Load and validate a rating dataset from the two CSV sources.

    ratings.csv has header ``observer_id,item_id,response`` with one row per
    cell; the matrix must be complete. Observer order is first appearance,
    item order is the items file's order. Raw values are bounds-checked
    against ``scale`` and polarity-normalized before the dataset is built.
    """
    item_ids, labels = load_items(items_path)
    item_pos = {iid: j for j, iid in enumerate(item_ids)}

    observer_ids: list[str] = []
    observer_pos: dict[str, int] = {}
    cells: dict[tuple[int, int], float] = {}
    for observer_id, item_id, response_text in _read_rows(
        ratings_path, ["observer_id", "item_id", "response"]
    ):
        if item_id not in item_pos:
            raise UnknownItemError(f"{ratings_path}: unknown item {item_id!r}")
        if observer_id not in observer_pos:
            observer_pos[observer_id] = len(observer_ids)
            observer_ids.append(observer_id)
        key = (observer_pos[observer_id], item_pos[item_id])
        if key in cells:
            raise DuplicateIdError(
                f"{ratings_path}: duplicate cell observer {observer_id!r} item {item_id!r}"
            )
        cells[key] = _parse_float(response_text, ratings_path, "response")
    if not observer_ids:
        raise MalformedFileError(f"{ratings_path}: no ratings")

    matrix = np.empty((len(observer_ids), len(item_ids)), dtype=np.float64)
    for i, observer_id in enumerate(observer_ids):
        for j, item_id in enumerate(item_ids):
            if (i, j) not in cells:
                raise MissingCellError(
                    f"observer {observer_id!r} has no response for item {item_id!r}"
                )
            matrix[i, j] = normalize_polarity(cells[i, j], scale)

    return RatingDataset(
        observer_ids=tuple(observer_ids),
        item_ids=item_ids,
        labels=labels,
        responses=matrix,
        scale=scale,
    )


def save_dataset(
    dataset: RatingDataset, ratings_path: str | Path, items_path: str | Path
) -> None:
    """Write a dataset back to CSV in its raw (denormalized) convention."""
    with open(items_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["item_id", "label"])
        for item_id, label in zip(dataset.item_ids, dataset.labels):
            writer.writerow([item_id, label.value])
    reflect = dataset.scale.polarity is Polarity.HIGHER_MEANS_DIFFERENT
    with open(ratings_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["observer_id", "item_id", "response"])
        for i, observer_id in enumerate(dataset.observer_ids):
            for j, item_id in enumerate(dataset.item_ids):
                value = dataset.responses[i, j]
                if reflect:
                    value = dataset.scale.reflect(value)
                writer.writerow([observer_id, item_id, fmt_shortest(value)])


def load_machine_scores(path: str | Path, machine_id: str | None = None) -> MachineScores:
    """Read machine scores: header ``item_id,score``; id defaults to the file stem."""
    rows = _read_rows(path, ["item_id", "score"])
    if not rows:
        raise MalformedFileError(f"{path}: no scores")
    item_ids: list[str] = []
    scores: list[float] = []
    seen: set[str] = set()
    for item_id, score_text in rows:
        if item_id in seen:
            raise DuplicateIdError(f"{path}: duplicate item id {item_id!r}")
        seen.add(item_id)
        item_ids.append(item_id)
        scores.append(_parse_float(score_text, path, "score"))
    return MachineScores(
        machine_id=machine_id if machine_id is not None else Path(path).stem,
        item_ids=tuple(item_ids),
        scores=np.array(scores, dtype=np.float64),
    )


def save_machine_scores(scores: MachineScores, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["item_id", "score"])
        for item_id, score in zip(scores.item_ids, scores.scores):
            writer.writerow([item_id, fmt_shortest(score)])
