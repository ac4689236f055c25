"""Synthetic rater populations from an equal-variance signal-detection model.

Each item j carries a latent shift mu_j = 1{same} + e_j, where e_j is a
per-item difficulty drawn once and shared by every observer (shared item
difficulty is what makes observers' errors realistically correlated; fully
independent noise would make fusion look implausibly good). Observer i with
sensitivity d_i perceives x_ij = d_i * mu_j + n_ij with unit independent
noise, and reports the rating obtained by cutting x_i. at the equal-mass
quantiles of its own marginal (equal-spaced cuts would produce degenerate
constant raters at extreme sensitivities). The machine perceives the same
items with its own sensitivity and reports x continuously.

All randomness flows from one root seed through keyed counter-based streams
(one per role and observer), so generation is order-independent and
parallel-safe: the same config and seed always yield byte-identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .data import ItemLabel, MachineScores, Polarity, RatingDataset, RatingScale
from .errors import InvalidConfigError


@dataclass(frozen=True)
class GeneratorConfig:
    n_observers: int = 50
    n_items: int = 80
    same_fraction: float = 0.5
    dprime_range: tuple[float, float] = (0.4, 3.5)
    item_difficulty_sd: float = 0.5
    scale: RatingScale = field(
        default_factory=lambda: RatingScale(1.0, 7.0, Polarity.HIGHER_MEANS_SAME)
    )
    machine_dprime: float = 6.0
    seed: int = 1

    def __post_init__(self):
        if self.n_observers < 1:
            raise InvalidConfigError("n_observers must be >= 1")
        if self.n_items < 2:
            raise InvalidConfigError("n_items must be >= 2")
        if not 0.0 < self.same_fraction < 1.0:
            raise InvalidConfigError("same_fraction must lie in (0, 1)")
        low, high = self.dprime_range
        if not (0.0 <= low <= high):
            raise InvalidConfigError("dprime_range must satisfy 0 <= low <= high")
        if self.item_difficulty_sd < 0.0:
            raise InvalidConfigError("item_difficulty_sd must be >= 0")
        if self.machine_dprime < 0.0:
            raise InvalidConfigError("machine_dprime must be >= 0")
        counts = label_counts(self.n_items, self.same_fraction)
        if min(counts) < 1:
            raise InvalidConfigError("both label classes need at least one item")
        if self.rating_levels < 2:
            raise InvalidConfigError("scale must span at least 2 rating levels")

    @property
    def rating_levels(self) -> int:
        span = self.scale.max - self.scale.min
        levels = int(round(span)) + 1
        if abs(span - round(span)) > 1e-9:
            raise InvalidConfigError("scale span must be an integer number of levels")
        return levels


def label_counts(n_items: int, same_fraction: float) -> tuple[int, int]:
    """Largest-remainder split of n_items into (same, different) counts."""
    exact_same = same_fraction * n_items
    exact_diff = (1.0 - same_fraction) * n_items
    n_same, n_diff = int(math.floor(exact_same)), int(math.floor(exact_diff))
    if n_same + n_diff < n_items:  # one leftover item at most
        if exact_same - n_same >= exact_diff - n_diff:
            n_same += 1
        else:
            n_diff += 1
    return n_same, n_diff


@dataclass(frozen=True)
class ObserverAbility:
    observer_id: str
    dprime: float
    true_auc: float


def closed_form_auc(dprime: float, item_difficulty_sd: float) -> float:
    """Population AUC of a continuous readout under the generative model.

    Both classes inherit variance (dprime * item_difficulty_sd)^2 from the
    shared item effects on top of unit perceptual noise, and the class
    separation is dprime, giving Phi(d / sqrt(2 + 2 d^2 sd^2)).
    """
    spread = math.sqrt(2.0 + 2.0 * (dprime * item_difficulty_sd) ** 2)
    return 0.5 * (1.0 + math.erf(dprime / spread / math.sqrt(2.0)))


def _stream(seed: int, *key: int) -> np.random.Generator:
    # Philox is counter-based; keying by (seed, role, index) makes every
    # stream independent of generation order.
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, *key))))


_ROLE_ITEMS, _ROLE_DPRIMES, _ROLE_OBSERVER, _ROLE_MACHINE = range(4)


def _item_shifts(config: GeneratorConfig) -> tuple[np.ndarray, np.ndarray]:
    n_same, _ = label_counts(config.n_items, config.same_fraction)
    same_mask = np.zeros(config.n_items, dtype=bool)
    same_mask[:n_same] = True
    effects = _stream(config.seed, _ROLE_ITEMS).normal(
        0.0, config.item_difficulty_sd, config.n_items
    )
    return same_mask.astype(np.float64) + effects, same_mask


def latent_scores(config: GeneratorConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Continuous per-observer readouts before discretization.

    Returns (scores matrix, same mask, observer sensitivities); used by
    generate() and directly by tests that probe the continuous model.
    """
    shifts, same_mask = _item_shifts(config)
    low, high = config.dprime_range
    dprimes = _stream(config.seed, _ROLE_DPRIMES).uniform(low, high, config.n_observers)
    scores = np.empty((config.n_observers, config.n_items), dtype=np.float64)
    for i in range(config.n_observers):
        noise = _stream(config.seed, _ROLE_OBSERVER, i).normal(0.0, 1.0, config.n_items)
        scores[i] = dprimes[i] * shifts + noise
    return scores, same_mask, dprimes


def _discretize(row: np.ndarray, levels: int, scale: RatingScale) -> np.ndarray:
    cuts = np.quantile(row, [k / levels for k in range(1, levels)])
    return scale.min + np.searchsorted(cuts, row, side="right").astype(np.float64)


def generate(
    config: GeneratorConfig,
) -> tuple[RatingDataset, MachineScores, list[ObserverAbility]]:
    """Generate a rating dataset, machine scores, and ground-truth abilities."""
    scores, same_mask, dprimes = latent_scores(config)
    levels = config.rating_levels

    ratings = np.empty_like(scores)
    for i in range(config.n_observers):
        ratings[i] = _discretize(scores[i], levels, config.scale)

    n_same, _ = label_counts(config.n_items, config.same_fraction)
    item_ids = tuple(f"i{j:04d}" for j in range(config.n_items))
    observer_ids = tuple(f"o{i:04d}" for i in range(config.n_observers))
    labels = tuple(
        ItemLabel.SAME if j < n_same else ItemLabel.DIFFERENT
        for j in range(config.n_items)
    )
    dataset = RatingDataset(
        observer_ids=observer_ids,
        item_ids=item_ids,
        labels=labels,
        responses=ratings,
        scale=config.scale,
    )

    shifts, _ = _item_shifts(config)  # keyed stream: same draw as latent_scores
    machine_noise = _stream(config.seed, _ROLE_MACHINE).normal(0.0, 1.0, config.n_items)
    machine = MachineScores(
        machine_id="machine",
        item_ids=item_ids,
        scores=config.machine_dprime * shifts + machine_noise,
    )

    abilities = [
        ObserverAbility(
            observer_id=observer_ids[i],
            dprime=float(dprimes[i]),
            true_auc=closed_form_auc(float(dprimes[i]), config.item_difficulty_sd),
        )
        for i in range(config.n_observers)
    ]
    return dataset, machine, abilities
