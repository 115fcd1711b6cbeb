"""Command line interface for the deduplication pipeline."""

from __future__ import annotations

import csv as csv_module
import dataclasses
import json
import os
import sys

import click

from . import clustering, evaluation, pipeline, similarity, synth
from .clustering import ClusterSet, read_clusters, write_clusters
from .corpus import DataSet, TokenizerConfig, load_dataset, load_stop_words
from .evaluation import MetricsReport
from .similarity import METHOD_SOFT_TFIDF, METHOD_TFIDF, SimilarityParams

SWEEP_COLUMNS = [
    "tau", "auto", "n", "c", "c_true", "purity", "inverse_purity",
    "harmonic_mean", "rel_cluster_error", "precision", "recall", "f1",
    "z_rand", "rel_z_rand", "nmi",
]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _apply_config_file(ctx: click.Context, config_path: str | None) -> None:
    """Fill in parameters from a JSON config file; explicit flags win."""
    if not config_path:
        return
    with open(config_path, encoding="utf-8") as fh:
        data = json.load(fh)
    for key, value in data.items():
        if key not in ctx.params or key == "config":
            continue
        source = ctx.get_parameter_source(key)
        if source is None or source.name == "DEFAULT":
            ctx.params[key] = value


def pipeline_options(fn):
    opts = [
        click.option("--config", type=click.Path(exists=True), default=None,
                     help="JSON file with option defaults (flags override)."),
        click.option("--input", "input_path", type=click.Path(), default=None,
                     help="Delimited input file."),
        click.option("--delimiter", default=",", show_default=True),
        click.option("--no-header", is_flag=True, default=False,
                     help="Input has no header row."),
        click.option("--fields", default=None,
                     help="Comma-separated field names to use "
                          "(default: all except the truth column)."),
        click.option("--mode", type=click.Choice(["word", "ngram"]),
                     default="word", show_default=True),
        click.option("--ngram-size", default=3, show_default=True),
        click.option("--stop-words", "stop_words_path",
                     type=click.Path(exists=True), default=None,
                     help="Extra stop words, one per line."),
        click.option("--no-case-fold", is_flag=True, default=False),
        click.option("--method",
                     type=click.Choice([METHOD_TFIDF, METHOD_SOFT_TFIDF]),
                     default=METHOD_SOFT_TFIDF, show_default=True),
        click.option("--theta", default=0.90, show_default=True),
        click.option("--prefix-factor", default=0.1, show_default=True),
        click.option("--max-prefix", default=4, show_default=True),
        click.option("--weights", default=None,
                     help="Comma-separated per-field weights."),
        click.option("--sparsity", type=click.Choice(["adjust", "impute"]),
                     default="adjust", show_default=True),
        click.option("--refine/--no-refine", default=False, show_default=True),
        click.option("--iterate-refine", is_flag=True, default=False,
                     help="Iterate refinement to a fixed point."),
        click.option("--truth-column", default=None,
                     help="Input column holding ground-truth entity ids."),
        click.option("--truth-file", type=click.Path(exists=True), default=None,
                     help="Two-column file: record_index entity_id."),
        click.option("--seed", default=0, show_default=True),
        click.option("--output-dir", type=click.Path(), default="out",
                     show_default=True),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


@dataclasses.dataclass
class ResolvedRun:
    dataset: DataSet
    truth: ClusterSet | None
    tok_config: TokenizerConfig
    params: SimilarityParams
    sparsity: str
    refine: bool
    iterate: bool
    seed: int
    output_dir: str
    manifest: dict


def _resolve(ctx_params: dict, require_truth: bool = False) -> ResolvedRun:
    p = ctx_params
    if not p.get("input_path"):
        raise click.UsageError("--input is required")
    if not os.path.exists(p["input_path"]):
        raise click.UsageError(f"input file not found: {p['input_path']}")
    full = load_dataset(
        p["input_path"], header=not p["no_header"], delimiter=p["delimiter"]
    )
    truth_col = p.get("truth_column")
    if truth_col and truth_col not in full.schema:
        raise click.UsageError(f"unknown field name: {truth_col!r}")
    if p.get("fields"):
        names = [f.strip() for f in str(p["fields"]).split(",") if f.strip()]
    else:
        names = [f for f in full.schema if f != truth_col]
    for name in names:
        if name not in full.schema:
            raise click.UsageError(f"unknown field name: {name!r}")
    dataset = full.select_fields(names)

    truth = None
    if truth_col:
        truth = ClusterSet.from_labels(full.column(full.field_index(truth_col)))
    elif p.get("truth_file"):
        truth = _read_truth_file(p["truth_file"])
    if truth is not None and truth.n != dataset.n:
        raise click.UsageError(
            f"ground truth covers {truth.n} records, dataset has {dataset.n}"
        )
    if require_truth and truth is None:
        raise click.UsageError("ground truth required (--truth-column/--truth-file)")

    tok_config = TokenizerConfig(
        mode=p["mode"],
        ngram_size=int(p["ngram_size"]),
        case_fold=not p["no_case_fold"],
    )
    if p.get("stop_words_path"):
        tok_config = tok_config.with_stop_words(load_stop_words(p["stop_words_path"]))
    weights = None
    if p.get("weights"):
        weights = tuple(float(w) for w in str(p["weights"]).split(","))
        if len(weights) != dataset.a:
            raise click.UsageError("weights length does not match field count")
    params = SimilarityParams(
        prefix_factor=float(p["prefix_factor"]),
        max_prefix=int(p["max_prefix"]),
        theta=float(p["theta"]),
        method=p["method"],
        weights=weights,
    )
    manifest = {
        key: p.get(key)
        for key in (
            "input_path", "delimiter", "no_header", "fields", "mode",
            "ngram_size", "stop_words_path", "no_case_fold", "method",
            "theta", "prefix_factor", "max_prefix", "weights", "sparsity",
            "refine", "iterate_refine", "truth_column", "truth_file", "seed",
            "output_dir",
        )
    }
    manifest["fields"] = ",".join(names)
    return ResolvedRun(
        dataset=dataset,
        truth=truth,
        tok_config=tok_config,
        params=params,
        sparsity=p["sparsity"],
        refine=bool(p["refine"]),
        iterate=bool(p["iterate_refine"]),
        seed=int(p["seed"]),
        output_dir=p["output_dir"],
        manifest=manifest,
    )


def _read_truth_file(path: str) -> ClusterSet:
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            idx, label = line.split()
            pairs.append((int(idx), label))
    pairs.sort()
    if [i for i, _ in pairs] != list(range(len(pairs))):
        raise click.UsageError("truth file must cover records 0..n-1 exactly once")
    return ClusterSet.from_labels([label for _, label in pairs])


def _write_manifest(run: ResolvedRun, extra: dict) -> None:
    os.makedirs(run.output_dir, exist_ok=True)
    manifest = dict(run.manifest, **extra)
    path = os.path.join(run.output_dir, "manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_sweep_table(path: str, rows: list[tuple[float, bool, MetricsReport]]):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv_module.writer(fh)
        writer.writerow(SWEEP_COLUMNS)
        for tau, is_auto, report in rows:
            rec = dataclasses.asdict(report)
            rec["tau"] = tau
            rec["auto"] = "auto" if is_auto else ""
            writer.writerow([_fmt(rec[col]) for col in SWEEP_COLUMNS])


@click.group()
def main():
    """Duplicate detection via (soft) TF-IDF similarity and threshold clustering."""


@main.command()
@pipeline_options
@click.option("--tau", default="auto", show_default=True,
              help="Clustering threshold: 'auto' or a number.")
@click.pass_context
def run(ctx, **kwargs):
    """Run the full pipeline once and write cluster assignments."""
    _apply_config_file(ctx, ctx.params.get("config"))
    p = ctx.params
    run_spec = _resolve(p)
    bundle = pipeline.build_similarity(
        run_spec.dataset, run_spec.tok_config, run_spec.params,
        sparsity_mode=run_spec.sparsity, seed=run_spec.seed,
    )
    tau_arg = None if str(p["tau"]) == "auto" else float(p["tau"])
    clusters, tau_used = pipeline.cluster_records(
        bundle.adjusted, tau_arg, refine=run_spec.refine, iterate=run_spec.iterate
    )
    _write_manifest(run_spec, {"tau": p["tau"], "tau_used": tau_used})
    write_clusters(clusters, os.path.join(run_spec.output_dir, "clusters.txt"))
    if run_spec.truth is not None:
        report = evaluation.evaluate(clusters, run_spec.truth, tau=tau_used)
        with open(
            os.path.join(run_spec.output_dir, "metrics.json"), "w", encoding="utf-8"
        ) as fh:
            fh.write(report.to_json())
            fh.write("\n")
    click.echo(f"tau={tau_used:.6g} clusters={clusters.c} n={clusters.n}")


@main.command()
@pipeline_options
@click.option("--tau-start", type=float, default=None)
@click.option("--tau-stop", type=float, default=None)
@click.option("--tau-step", type=float, default=None)
@click.option("--grid", default=200, show_default=True,
              help="Grid size over the nontrivial interval when no explicit range.")
@click.pass_context
def sweep(ctx, **kwargs):
    """Evaluate the clustering over a range of thresholds."""
    _apply_config_file(ctx, ctx.params.get("config"))
    p = ctx.params
    run_spec = _resolve(p, require_truth=True)
    bundle = pipeline.build_similarity(
        run_spec.dataset, run_spec.tok_config, run_spec.params,
        sparsity_mode=run_spec.sparsity, seed=run_spec.seed,
    )
    taus = None
    if p["tau_start"] is not None or p["tau_stop"] is not None:
        if p["tau_start"] is None or p["tau_stop"] is None or not p["tau_step"]:
            raise click.UsageError("--tau-start/--tau-stop/--tau-step go together")
        if p["tau_step"] <= 0:
            raise click.UsageError("--tau-step must be positive")
        taus = []
        t = p["tau_start"]
        while t <= p["tau_stop"] + 1e-12:
            taus.append(t)
            t += p["tau_step"]
        if not taus:
            raise click.UsageError("empty threshold range")
    rows = pipeline.sweep_thresholds(
        bundle.adjusted, run_spec.truth, taus=taus, grid_size=int(p["grid"]),
        refine=run_spec.refine, iterate=run_spec.iterate,
    )
    _write_manifest(run_spec, {
        "tau_start": p["tau_start"], "tau_stop": p["tau_stop"],
        "tau_step": p["tau_step"], "grid": p["grid"],
        "tau_auto": clustering.auto_threshold(bundle.adjusted),
    })
    _write_sweep_table(os.path.join(run_spec.output_dir, "sweep.csv"), rows)
    click.echo(f"wrote {len(rows)} sweep rows to {run_spec.output_dir}/sweep.csv")


@main.command()
@click.option("--input", "input_path", type=click.Path(exists=True), required=True)
@click.option("--output", "output_path", type=click.Path(), required=True)
@click.option("--fields", required=True,
              help="Comma-separated fields to blank entries from.")
@click.option("--fraction", type=float, default=0.30, show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--delimiter", default=",", show_default=True)
@click.option("--no-header", is_flag=True, default=False)
def degrade(input_path, output_path, fields, fraction, seed, delimiter, no_header):
    """Blank a random fraction of entries per field to induce sparsity."""
    dataset = load_dataset(input_path, header=not no_header, delimiter=delimiter)
    names = [f.strip() for f in fields.split(",") if f.strip()]
    for name in names:
        if name not in dataset.schema:
            raise click.UsageError(f"unknown field name: {name!r}")
    try:
        degraded = pipeline.degrade(dataset, names, fraction, seed)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    _write_csv(degraded, output_path, delimiter)
    click.echo(f"wrote degraded dataset to {output_path}")


@main.command("eval")
@click.option("--clusters", "clusters_path", type=click.Path(exists=True),
              required=True)
@click.option("--truth", "truth_path", type=click.Path(exists=True), required=True)
@click.option("--output", "output_path", type=click.Path(), default=None)
def eval_cmd(clusters_path, truth_path, output_path):
    """Score a clustering file against a ground-truth clustering file."""
    clusters = read_clusters(clusters_path)
    truth = read_clusters(truth_path)
    if clusters.n != truth.n:
        raise click.UsageError(
            f"clusterings cover different record counts: {clusters.n} vs {truth.n}"
        )
    report = evaluation.evaluate(clusters, truth)
    text = report.to_json()
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.write("\n")
    else:
        click.echo(text)


@main.command("synth")
@click.option("--dataset", "which", type=click.Choice(["restaurants", "citations"]),
              required=True)
@click.option("--output", "output_path", type=click.Path(), required=True)
@click.option("--seed", type=int, default=None,
              help="Generator seed (defaults per dataset).")
def synth_cmd(which, output_path, seed):
    """Write a synthetic benchmark dataset with a ground-truth column."""
    if which == "restaurants":
        dataset = synth.make_restaurants(**({} if seed is None else {"seed": seed}))
    else:
        dataset = synth.make_citations(**({} if seed is None else {"seed": seed}))
    _write_csv(dataset, output_path, ",")
    click.echo(f"wrote {dataset.n} records to {output_path}")


def _write_csv(dataset: DataSet, path: str, delimiter: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv_module.writer(fh, delimiter=delimiter)
        writer.writerow(dataset.schema)
        writer.writerows(dataset.records)


if __name__ == "__main__":
    sys.exit(main())
