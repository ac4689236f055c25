"""Command-line interface.

Subcommands: auc, pairs, machine-pairs, par, sweep, match, baseline, compare,
simulate, report. Outputs are deterministic for identical inputs, flags, and
seed; existing files are never overwritten without --force. Errors print one
machine-parsable line (``Code: message``) to stderr and exit 2 for input
problems or 3 for numeric/degenerate data.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import benefit, fusion, matching, reports, sweep
from ._util import fmt_shortest
from .charts import line_svg, scatter_svg
from .data import (
    Polarity,
    RatingScale,
    load_dataset,
    load_machine_scores,
    save_dataset,
    save_machine_scores,
)
from .errors import FileExistsRefusalError, FusionlabError
from .roc import observer_auc
from .synth import GeneratorConfig, generate


def _add_dataset_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ratings", required=True, help="ratings.csv (observer_id,item_id,response)")
    parser.add_argument("--items", required=True, help="items.csv (item_id,label)")
    _add_scale_args(parser)


def _add_scale_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scale-min", type=float, default=1.0, help="scale lower bound")
    parser.add_argument("--scale-max", type=float, default=7.0, help="scale upper bound")
    parser.add_argument(
        "--polarity",
        choices=[p.value for p in Polarity],
        default=Polarity.HIGHER_MEANS_SAME.value,
        help="direction of the raw scale",
    )


def _scale(args) -> RatingScale:
    return RatingScale(args.scale_min, args.scale_max, Polarity(args.polarity))


def _dataset(args):
    return load_dataset(args.ratings, args.items, _scale(args))


def _machine(args, dataset):
    scores = load_machine_scores(args.machine)
    return fusion.machine_performer(dataset, scores)


def _machine_auc(dataset, machine) -> float:
    mask = dataset.same_mask
    from ._kernels import auc_scores

    return auc_scores(machine.responses[mask], machine.responses[~mask])


def _write_or_stdout(args, dyads) -> None:
    if args.out:
        reports.write_dyads_csv(Path(args.out), dyads, args.force)
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(reports.DYAD_HEADER)
        for row in reports.dyad_rows(dyads):
            writer.writerow([reports._cell(v) for v in row])


def cmd_auc(args) -> int:
    dataset = _dataset(args)
    writer = csv.writer(sys.stdout)
    writer.writerow(["observer_id", "auc", "n_same", "n_different"])
    for observer_id in dataset.observer_ids:
        result = observer_auc(dataset, observer_id)
        writer.writerow(
            [observer_id, fmt_shortest(result.value), result.n_same, result.n_different]
        )
    return 0


def cmd_pairs(args) -> int:
    _write_or_stdout(args, fusion.all_pairs(_dataset(args)))
    return 0


def cmd_machine_pairs(args) -> int:
    dataset = _dataset(args)
    machine = _machine(args, dataset)
    _write_or_stdout(args, fusion.machine_pairs(dataset, machine))
    return 0


def _par_artifacts(out_dir: Path, stem: str, dyads, force: bool) -> dict:
    """Scatter CSV + SVG for a dyad set; returns summary statistics."""
    overall = benefit.benefit_gap_correlation(dyads)
    xs = [d.delta for d in dyads]
    ys = [d.benefit for d in dyads]
    colors = [max(d.auc_a, d.auc_b) for d in dyads]
    reports.write_csv(
        out_dir / f"{stem}.csv",
        ["a", "b", "delta", "benefit", "best_auc"],
        [[d.performer_a, d.performer_b, d.delta, d.benefit, c] for d, c in zip(dyads, colors)],
        force,
    )
    reports.write_text(
        out_dir / f"{stem}.svg",
        scatter_svg(
            xs, ys, colors,
            title="Fusion benefit vs baseline accuracy gap",
            x_label="|AUC difference|",
            y_label="fused AUC - best baseline AUC",
        ),
        force,
    )
    return {
        "r": overall.r,
        "ci_low": overall.ci_low,
        "ci_high": overall.ci_high,
        "p": overall.p_value,
        "n": overall.n,
    }


def cmd_par(args) -> int:
    dataset = _dataset(args)
    if args.machine:
        machine = _machine(args, dataset)
        dyads = fusion.machine_pairs(dataset, machine)
    else:
        dyads = fusion.all_pairs(dataset)
    out_dir = Path(args.out_dir)
    summary = _par_artifacts(out_dir, "par_scatter", dyads, args.force)
    binned = {
        extreme.value: benefit.bin_by_extreme(dyads, extreme)
        for extreme in benefit.Extreme
    }
    overall = benefit.benefit_gap_correlation(dyads)
    reports.write_bins_csv(out_dir / "par_report.csv", binned, overall, args.force)
    print(
        f"r={fmt_shortest(summary['r'])} n={summary['n']} "
        f"ci=[{fmt_shortest(summary['ci_low'])}, {fmt_shortest(summary['ci_high'])}]"
    )
    if args.machine:
        machine_auc = _machine_auc(dataset, machine)
        critical = benefit.critical_fusion_difference(dyads, machine_auc)
        print(f"critical_fusion_difference={fmt_shortest(critical)}")
    return 0


def _sweep_artifacts(out_dir: Path, dyads, machine_auc: float, force: bool):
    result = sweep.lambda_sweep(dyads, machine_auc)
    generic = sweep.system_auc(dyads, sweep.FusionPolicy.generic_fusion(), machine_auc)
    reports.write_sweep_csv(out_dir / "sweep.csv", result, force)
    reports.write_text(
        out_dir / "sweep.svg",
        line_svg(
            result.lambdas,
            result.system_aucs,
            title="System accuracy vs fusion threshold",
            x_label="threshold on |AUC difference|",
            y_label="system AUC",
            h_lines=[
                ("machine alone", machine_auc, "6 4"),
                ("generic fusion", generic, ""),
            ],
            v_line=("optimal threshold", result.lambda_star),
        ),
        force,
    )
    return result, generic


def cmd_sweep(args) -> int:
    dataset = _dataset(args)
    machine = _machine(args, dataset)
    dyads = fusion.machine_pairs(dataset, machine)
    machine_auc = _machine_auc(dataset, machine)
    if args.lam is not None:
        value = sweep.system_auc(
            dyads, sweep.FusionPolicy.intelligent(args.lam), machine_auc
        )
        print(f"{fmt_shortest(args.lam)},{fmt_shortest(value)}")
        return 0
    result, _ = _sweep_artifacts(Path(args.out_dir), dyads, machine_auc, args.force)
    print(
        f"lambda_star={fmt_shortest(result.lambda_star)} "
        f"auc_at_star={fmt_shortest(result.auc_at_star)}"
    )
    return 0


def cmd_match(args) -> int:
    dataset = _dataset(args)
    weights, ids = matching.build_weight_matrix(dataset)
    result = matching.optimal_matching(weights, ids, args.include_unmatched)
    index = {oid: k for k, oid in enumerate(ids)}
    by_pair = {
        (a, b): float(weights[index[a], index[b]]) for a, b in result.pairs
    }
    if args.out:
        reports.write_matching_csv(Path(args.out), result, by_pair, args.force)
    print(
        f"pairs={len(result.pairs)} unmatched={result.unmatched or ''} "
        f"total_weight={fmt_shortest(result.total_weight)} "
        f"system_auc={fmt_shortest(result.system_auc)}"
    )
    return 0


def cmd_baseline(args) -> int:
    dataset = _dataset(args)
    weights, ids = matching.build_weight_matrix(dataset)
    report = matching.random_baseline(weights, args.replications, args.seed, ids)
    if args.out:
        reports.write_baseline_csv(Path(args.out), report, args.force)
    z_text = "undefined" if report.z is None else fmt_shortest(report.z)
    print(
        f"mean={fmt_shortest(report.mean)} sd={fmt_shortest(report.sd)} z={z_text} "
        f"optimal={fmt_shortest(report.optimal_system_auc)}"
    )
    return 0


def _compare(dataset, machine, with_matching: bool):
    dyads = fusion.machine_pairs(dataset, machine)
    machine_auc = _machine_auc(dataset, machine)
    individual = [d.auc_a for d in dyads]
    matching_aucs = None
    if with_matching:
        weights, ids = matching.build_weight_matrix(dataset)
        result = matching.optimal_matching(weights, ids)
        index = {oid: k for k, oid in enumerate(ids)}
        matching_aucs = [
            float(weights[index[a], index[b]]) for a, b in result.pairs
        ]
    return sweep.compare_policies(dyads, machine_auc, individual, matching_aucs)


def cmd_compare(args) -> int:
    dataset = _dataset(args)
    machine = _machine(args, dataset)
    comparison = _compare(dataset, machine, args.with_matching)
    out_dir = Path(args.out_dir)
    reports.write_compare_csvs(
        out_dir / "compare_medians.csv", out_dir / "compare_tests.csv", comparison, args.force
    )
    for name, median in comparison.medians.items():
        print(f"median[{name}]={fmt_shortest(median)}")
    return 0


def cmd_simulate(args) -> int:
    config = GeneratorConfig(
        n_observers=args.observers,
        n_items=args.items,
        same_fraction=args.same_fraction,
        dprime_range=(args.dprime_low, args.dprime_high),
        item_difficulty_sd=args.item_sd,
        scale=_scale(args),
        machine_dprime=args.machine_dprime,
        seed=args.seed,
    )
    dataset, machine_scores, abilities = generate(config)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in ("ratings.csv", "items.csv", "machine.csv", "abilities.csv"):
        path = out_dir / name
        if path.exists() and not args.force:
            raise FileExistsRefusalError(f"{path} exists (use --force to overwrite)")
    save_dataset(dataset, out_dir / "ratings.csv", out_dir / "items.csv")
    save_machine_scores(machine_scores, out_dir / "machine.csv")
    reports.write_abilities_csv(out_dir / "abilities.csv", abilities, True)
    print(f"wrote {out_dir}/ratings.csv items.csv machine.csv abilities.csv")
    return 0


def cmd_report(args) -> int:
    dataset = _dataset(args)
    machine = _machine(args, dataset)
    machine_auc = _machine_auc(dataset, machine)
    out_dir = Path(args.out_dir)
    force = args.force

    human_dyads = fusion.all_pairs(dataset)
    machine_dyads = fusion.machine_pairs(dataset, machine)

    reports.write_dyads_csv(out_dir / "dyads.csv", human_dyads, force)
    reports.write_dyads_csv(out_dir / "machine_dyads.csv", machine_dyads, force)

    human_par = _par_artifacts(out_dir, "par_scatter", human_dyads, force)
    machine_par = _par_artifacts(out_dir, "machine_par_scatter", machine_dyads, force)
    binned = {
        extreme.value: benefit.bin_by_extreme(human_dyads, extreme)
        for extreme in benefit.Extreme
    }
    overall = benefit.benefit_gap_correlation(human_dyads)
    reports.write_bins_csv(out_dir / "par_report.csv", binned, overall, force)
    critical = benefit.critical_fusion_difference(machine_dyads, machine_auc)

    sweep_result, generic_auc = _sweep_artifacts(out_dir, machine_dyads, machine_auc, force)

    weights, ids = matching.build_weight_matrix(dataset)
    match_result = matching.optimal_matching(weights, ids, args.include_unmatched)
    index = {oid: k for k, oid in enumerate(ids)}
    by_pair = {(a, b): float(weights[index[a], index[b]]) for a, b in match_result.pairs}
    reports.write_matching_csv(out_dir / "matching.csv", match_result, by_pair, force)

    baseline = matching.random_baseline(weights, args.replications, args.seed, ids)
    reports.write_baseline_csv(out_dir / "baseline.csv", baseline, force)

    comparison = sweep.compare_policies(
        machine_dyads,
        machine_auc,
        [d.auc_a for d in machine_dyads],
        list(by_pair.values()),
    )
    reports.write_compare_csvs(
        out_dir / "compare_medians.csv", out_dir / "compare_tests.csv", comparison, force
    )

    humans_alone = sweep.system_auc(
        machine_dyads, sweep.FusionPolicy.humans_alone(), machine_auc
    )
    summary = {
        "n_observers": dataset.n_observers,
        "n_items": dataset.n_items,
        "n_human_dyads": len(human_dyads),
        "n_machine_dyads": len(machine_dyads),
        "machine_auc": machine_auc,
        "human_pair_correlation": human_par,
        "machine_pair_correlation": machine_par,
        "critical_fusion_difference": critical,
        "lambda_star": sweep_result.lambda_star,
        "system_auc": {
            "machine_alone": machine_auc,
            "generic_fusion": generic_auc,
            "intelligent_fusion": sweep_result.auc_at_star,
            "humans_alone": humans_alone,
            "optimal_matching": match_result.system_auc,
        },
        "matching": {
            "pairs": len(match_result.pairs),
            "unmatched": match_result.unmatched,
            "total_weight": match_result.total_weight,
        },
        "baseline": {
            "replications": baseline.replications,
            "mean": baseline.mean,
            "sd": baseline.sd,
            "z": baseline.z,
        },
        "policy_medians": comparison.medians,
        "seed": args.seed,
    }
    names = [
        "dyads.csv", "machine_dyads.csv", "par_scatter.csv", "par_scatter.svg",
        "machine_par_scatter.csv", "machine_par_scatter.svg", "par_report.csv",
        "sweep.csv", "sweep.svg", "matching.csv", "baseline.csv",
        "compare_medians.csv", "compare_tests.csv",
    ]
    entries = {
        name: {"sha256": reports.file_digest(out_dir / name)} for name in names
    }
    reports.write_manifest(out_dir / "manifest.json", entries, summary, force)
    print(f"report written to {out_dir} ({len(names) + 1} files)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusionlab",
        description="Decision-fusion engine: rating AUCs, dyad fusion, "
        "threshold sweeps, optimal pairing.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--force", action="store_true", help="overwrite existing files")
        return p

    p = add("auc", cmd_auc, "per-observer AUC table on standard output")
    _add_dataset_args(p)

    p = add("pairs", cmd_pairs, "fuse every pair of observers")
    _add_dataset_args(p)
    p.add_argument("--out", help="output CSV (stdout when omitted)")

    p = add("machine-pairs", cmd_machine_pairs, "pair the machine with each observer")
    _add_dataset_args(p)
    p.add_argument("--machine", required=True, help="machine.csv (item_id,score)")
    p.add_argument("--out", help="output CSV (stdout when omitted)")

    p = add("par", cmd_par, "benefit vs accuracy-gap report with performance bins")
    _add_dataset_args(p)
    p.add_argument("--machine", help="analyze machine dyads instead of human pairs")
    p.add_argument("--out-dir", required=True)

    p = add("sweep", cmd_sweep, "system AUC as a function of the fusion threshold")
    _add_dataset_args(p)
    p.add_argument("--machine", required=True)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="evaluate one fixed threshold instead of sweeping")

    p = add("match", cmd_match, "optimal observer pairing (exact maximum-weight matching)")
    _add_dataset_args(p)
    p.add_argument("--out", help="output CSV")
    p.add_argument("--include-unmatched", action="store_true",
                   help="count the odd observer's solo AUC in the system mean")

    p = add("baseline", cmd_baseline, "random-pairing reference distribution")
    _add_dataset_args(p)
    p.add_argument("--out", help="output CSV")
    p.add_argument("--replications", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)

    p = add("compare", cmd_compare, "compare fusion policies with paired tests")
    _add_dataset_args(p)
    p.add_argument("--machine", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--with-matching", action="store_true",
                   help="include the optimal-pairing distribution")

    p = add("simulate", cmd_simulate, "generate a synthetic population")
    p.add_argument("--observers", type=int, default=50)
    p.add_argument("--items", type=int, default=80)
    p.add_argument("--same-fraction", type=float, default=0.5)
    p.add_argument("--dprime-low", type=float, default=0.4)
    p.add_argument("--dprime-high", type=float, default=3.5)
    p.add_argument("--item-sd", type=float, default=0.5)
    p.add_argument("--machine-dprime", type=float, default=6.0)
    p.add_argument("--seed", type=int, default=1)
    _add_scale_args(p)
    p.add_argument("--out-dir", required=True)

    p = add("report", cmd_report, "full analysis chain into one directory with a manifest")
    _add_dataset_args(p)
    p.add_argument("--machine", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--replications", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--include-unmatched", action="store_true")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except FusionlabError as err:
        print(f"{err.code}: {err}", file=sys.stderr)
        return err.exit_status


if __name__ == "__main__":
    raise SystemExit(main())
