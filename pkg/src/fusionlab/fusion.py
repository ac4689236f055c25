"""Dyad fusion: machine standardization, response averaging, benefit metrics.

Fusing two performers means averaging their per-item responses and rescoring.
Humans enter with polarity-normalized ratings as-is; a machine's continuous
scores are first standardized to the human response distribution
(subtract the machine mean, divide by the machine's population standard
deviation, add the human grand mean) so that plain averaging is meaningful.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .data import MachineScores, RatingDataset
from .errors import (
    ItemMismatchError,
    TooFewItemsError,
    TooFewObserversError,
    ZeroVarianceError,
)


class PerformerKind(enum.Enum):
    HUMAN = "human"
    MACHINE = "machine"


@dataclass(frozen=True, eq=False)
class Performer:
    """One decision-maker's responses, aligned to a dataset's item order."""

    id: str
    kind: PerformerKind
    responses: np.ndarray
    item_ids: tuple[str, ...]

    def __post_init__(self):
        responses = np.ascontiguousarray(self.responses, dtype=np.float64)
        if responses.shape != (len(self.item_ids),):
            raise ItemMismatchError("one response per item required")
        responses.flags.writeable = False
        object.__setattr__(self, "responses", responses)


@dataclass(frozen=True)
class DyadRecord:
    """Baselines and fused accuracy of one pair of performers."""

    performer_a: str
    performer_b: str
    auc_a: float
    auc_b: float
    auc_fused: float
    delta: float
    benefit: float

    @classmethod
    def from_aucs(
        cls, performer_a: str, performer_b: str, auc_a: float, auc_b: float, auc_fused: float
    ) -> "DyadRecord":
        return cls(
            performer_a=performer_a,
            performer_b=performer_b,
            auc_a=auc_a,
            auc_b=auc_b,
            auc_fused=auc_fused,
            delta=abs(auc_a - auc_b),
            benefit=auc_fused - max(auc_a, auc_b),
        )


def human_performer(dataset: RatingDataset, observer_id: str) -> Performer:
    return Performer(
        id=observer_id,
        kind=PerformerKind.HUMAN,
        responses=dataset.responses_for(observer_id),
        item_ids=dataset.item_ids,
    )


def human_grand_mean(dataset: RatingDataset) -> float:
    """Mean over every human response in the dataset (all observers, all items)."""
    return float(dataset.responses.mean())


def scale_machine(scores: MachineScores, human_mean: float) -> Performer:
    """Standardize machine scores to the human response distribution.

    Output has mean ``human_mean`` and population standard deviation 1; the
    division uses the machine's own population deviation (n, not n - 1): this
    is a distribution alignment, not an inference. Rank order is preserved.
    """
    raw = scores.scores
    if raw.size < 2:
        raise TooFewItemsError("machine scaling needs at least 2 items")
    mu = raw.mean()
    sigma = float(np.sqrt(((raw - mu) ** 2).mean()))
    if sigma == 0.0:
        raise ZeroVarianceError("machine scores are constant")
    return Performer(
        id=scores.machine_id,
        kind=PerformerKind.MACHINE,
        responses=(raw - mu) / sigma + human_mean,
        item_ids=scores.item_ids,
    )


def machine_performer(dataset: RatingDataset, scores: MachineScores) -> Performer:
    """Align machine scores to the dataset and standardize them in one step."""
    aligned = MachineScores(
        machine_id=scores.machine_id,
        item_ids=dataset.item_ids,
        scores=scores.aligned_to(dataset),
    )
    return scale_machine(aligned, human_grand_mean(dataset))


def _check_alignment(performer: Performer, dataset: RatingDataset) -> None:
    if performer.item_ids != dataset.item_ids:
        raise ItemMismatchError(
            f"performer {performer.id!r} is not aligned to the dataset's items"
        )


def _auc_of(responses: np.ndarray, same_mask: np.ndarray) -> float:
    return _kernels.auc_scores(responses[same_mask], responses[~same_mask])


def fuse_pair(a: Performer, b: Performer, dataset: RatingDataset) -> DyadRecord:
    """Average two performers' responses per item and score the fusion."""
    _check_alignment(a, dataset)
    _check_alignment(b, dataset)
    mask = dataset.same_mask
    fused = (a.responses + b.responses) * 0.5
    return DyadRecord.from_aucs(
        performer_a=a.id,
        performer_b=b.id,
        auc_a=_auc_of(a.responses, mask),
        auc_b=_auc_of(b.responses, mask),
        auc_fused=_auc_of(fused, mask),
    )


def all_pairs(dataset: RatingDataset) -> list[DyadRecord]:
    """Fuse every unordered pair of observers; N(N-1)/2 records.

    Records are ordered lexicographically by the (smaller id, larger id) pair,
    with performer_a the lexicographically smaller id.
    """
    n = dataset.n_observers
    if n < 2:
        raise TooFewObserversError("pair fusion needs at least 2 observers")
    mask = dataset.same_mask
    baselines = [_auc_of(dataset.responses[i], mask) for i in range(n)]
    fused = _kernels.pair_fused_aucs(dataset.responses, mask)
    records = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            id_i, id_j = dataset.observer_ids[i], dataset.observer_ids[j]
            (id_a, auc_a), (id_b, auc_b) = sorted(
                [(id_i, baselines[i]), (id_j, baselines[j])]
            )
            records.append(
                DyadRecord.from_aucs(id_a, id_b, auc_a, auc_b, float(fused[k]))
            )
            k += 1
    records.sort(key=lambda rec: (rec.performer_a, rec.performer_b))
    return records


def machine_pairs(dataset: RatingDataset, machine: Performer) -> list[DyadRecord]:
    """Pair the machine with each observer; one record per human.

    performer_a is always the human, performer_b the machine; the machine's
    baseline AUC is computed once, so it is bitwise identical across records.
    """
    _check_alignment(machine, dataset)
    mask = dataset.same_mask
    machine_auc = _auc_of(machine.responses, mask)
    records = []
    for i, observer_id in enumerate(dataset.observer_ids):
        row = dataset.responses[i]
        fused = (row + machine.responses) * 0.5
        records.append(
            DyadRecord.from_aucs(
                performer_a=observer_id,
                performer_b=machine.id,
                auc_a=_auc_of(row, mask),
                auc_b=machine_auc,
                auc_fused=_auc_of(fused, mask),
            )
        )
    return records
