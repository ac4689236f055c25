"""Deterministic artifact writers: CSV tables, SVG sidecars, JSON manifest.

Floats are serialized with the shortest round-tripping decimal form, files are
never overwritten without ``force``, and the manifest lists every produced
file with its summary statistics so downstream tooling never parses logs.
"""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

from ._util import fmt_shortest
from .benefit import BenefitCorrelation, PerformanceBin
from .errors import FileExistsRefusalError
from .fusion import DyadRecord
from .matching import BaselineReport, MatchingResult
from .stats import TestResult
from .sweep import PolicyComparison, SweepResult
from .synth import ObserverAbility


def _open_for_write(path: Path, force: bool):
    if path.exists() and not force:
        raise FileExistsRefusalError(f"{path} exists (use --force to overwrite)")
    path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", newline="", encoding="utf-8")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return fmt_shortest(value)
    return str(value)


def write_csv(path: Path, header: list[str], rows: list[list], force: bool = False) -> None:
    with _open_for_write(path, force) as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])


def write_text(path: Path, text: str, force: bool = False) -> None:
    with _open_for_write(path, force) as fh:
        fh.write(text)


def dyad_rows(dyads: list[DyadRecord]) -> list[list]:
    return [
        [d.performer_a, d.performer_b, d.auc_a, d.auc_b, d.auc_fused, d.delta, d.benefit]
        for d in dyads
    ]


DYAD_HEADER = ["a", "b", "auc_a", "auc_b", "auc_fused", "delta", "benefit"]


def write_dyads_csv(path: Path, dyads: list[DyadRecord], force: bool = False) -> None:
    write_csv(path, DYAD_HEADER, dyad_rows(dyads), force)


def correlation_row(corr: BenefitCorrelation | None) -> list:
    if corr is None:
        return [None, None, None, None, None]
    return [corr.n, corr.r, corr.ci_low, corr.ci_high, corr.p_value]


def write_bins_csv(
    path: Path,
    binned: dict[str, list[PerformanceBin]],
    overall: BenefitCorrelation,
    force: bool = False,
) -> None:
    """One row per bin plus a pooled 'all' row per anchoring."""
    header = ["extreme", "level", "range_low", "range_high", "n", "r", "ci_low", "ci_high", "p"]
    rows: list[list] = []
    for extreme, bins in binned.items():
        rows.append([extreme, "all", None, None] + correlation_row(overall))
        for perf_bin in bins:
            rows.append(
                [extreme, perf_bin.level.value, perf_bin.range_low, perf_bin.range_high]
                + [len(perf_bin.dyads)]
                + correlation_row(perf_bin.correlation)[1:]
            )
    write_csv(path, header, rows, force)


def write_sweep_csv(path: Path, result: SweepResult, force: bool = False) -> None:
    rows = [[lam, auc] for lam, auc in zip(result.lambdas, result.system_aucs)]
    write_csv(path, ["lambda", "system_auc"], rows, force)


def write_matching_csv(
    path: Path, result: MatchingResult, weights_by_pair: dict[tuple[str, str], float],
    force: bool = False,
) -> None:
    """Pair table plus a trailing summary comment line."""
    with _open_for_write(path, force) as fh:
        writer = csv.writer(fh)
        writer.writerow(["a", "b", "fused_auc"])
        for a, b in result.pairs:
            writer.writerow([a, b, fmt_shortest(weights_by_pair[(a, b)])])
        fh.write(
            f"# pairs={len(result.pairs)} unmatched={result.unmatched or ''} "
            f"total_weight={fmt_shortest(result.total_weight)} "
            f"system_auc={fmt_shortest(result.system_auc)}\n"
        )


def write_baseline_csv(path: Path, report: BaselineReport, force: bool = False) -> None:
    rows = [[k, auc] for k, auc in enumerate(report.system_aucs)]
    write_csv(path, ["replication", "system_auc"], rows, force)


def test_result_row(name: str, result: TestResult) -> list:
    return [
        name,
        result.method.value,
        result.statistic,
        result.p_value,
        result.corrected_p,
        result.n,
    ]


def write_compare_csvs(
    medians_path: Path, tests_path: Path, comparison: PolicyComparison, force: bool = False
) -> None:
    median_rows = [
        [name, len(comparison.distributions[name]), comparison.medians[name]]
        for name in comparison.distributions
    ]
    write_csv(medians_path, ["policy", "n", "median_auc"], median_rows, force)
    test_rows = [
        test_result_row(name, result) for name, result in comparison.tests.items()
    ]
    write_csv(
        tests_path,
        ["comparison", "method", "statistic", "p", "corrected_p", "n"],
        test_rows,
        force,
    )


def write_abilities_csv(
    path: Path, abilities: list[ObserverAbility], force: bool = False
) -> None:
    rows = [[a.observer_id, a.dprime, a.true_auc] for a in abilities]
    write_csv(path, ["observer_id", "dprime", "true_auc_closed_form"], rows, force)


def file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_manifest(path: Path, entries: dict, summary: dict, force: bool = False) -> None:
    payload = {"files": entries, "summary": summary}
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    write_text(path, text, force)
