"""End-to-end orchestration: tokenize, score, adjust, cluster, evaluate."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import clustering, evaluation, similarity, sparsity
from .clustering import ClusterSet
from .corpus import DataSet, TokenizerConfig, build_lexicon, tokenize_field
from .evaluation import MetricsReport
from .similarity import (
    METHOD_SOFT_TFIDF,
    CompositeSimilarity,
    SimilarityParams,
)


@dataclass(frozen=True)
class SimilarityBundle:
    """Everything the similarity stage produced for one dataset/config."""

    raw: CompositeSimilarity
    adjusted: CompositeSimilarity
    mask: sparsity.PresenceMask
    field_sims: tuple[similarity.FieldSimilarity, ...]
    dataset: DataSet = field(compare=False)


def build_similarity(
    dataset: DataSet,
    tok_config: TokenizerConfig,
    params: SimilarityParams,
    sparsity_mode: str = "adjust",
    seed: int | None = None,
) -> SimilarityBundle:
    """Run the similarity stage of the pipeline on every field.

    sparsity_mode "adjust" divides composite scores by shared-field
    counts; "impute" first fills missing entries with each field's mode
    and then applies the same division for comparability.
    """
    if sparsity_mode not in ("adjust", "impute"):
        raise ValueError(f"unknown sparsity mode: {sparsity_mode!r}")
    if sparsity_mode == "impute":
        dataset = sparsity.impute_mode(dataset, tok_config, seed=seed)
    field_sims = []
    tokenized_fields = []
    for k in range(dataset.a):
        lexicon = build_lexicon(dataset, k, tok_config)
        tokenized = tokenize_field(dataset, k, lexicon, tok_config)
        tokenized_fields.append(tokenized)
        tfidf = similarity.build_tfidf(tokenized, lexicon, dataset.n)
        if params.method == METHOD_SOFT_TFIDF:
            jw = similarity.build_jw_matrix(lexicon, params)
            field_sims.append(similarity.soft_tfidf_field(tfidf, jw))
        else:
            field_sims.append(similarity.tfidf_field(tfidf))
    raw = similarity.composite(field_sims, params.weights)
    mask = sparsity.presence_mask(tokenized_fields)
    adjusted = sparsity.adjust(raw, mask)
    return SimilarityBundle(
        raw=raw,
        adjusted=adjusted,
        mask=mask,
        field_sims=tuple(field_sims),
        dataset=dataset,
    )


def cluster_records(
    sim: CompositeSimilarity,
    tau: float | None = None,
    refine: bool = False,
    iterate: bool = False,
) -> tuple[ClusterSet, float]:
    """Threshold and group; tau=None picks the automatic threshold."""
    if tau is None:
        tau = clustering.auto_threshold(sim)
    graph = clustering.threshold(sim, tau)
    clusters = clustering.group(graph)
    if refine:
        clusters = clustering.refine_all(clusters, graph, iterate=iterate)
    return clusters, tau


def sweep_thresholds(
    sim: CompositeSimilarity,
    truth: ClusterSet,
    taus: Sequence[float] | None = None,
    grid_size: int = 200,
    refine: bool = False,
    iterate: bool = False,
) -> list[tuple[float, bool, MetricsReport]]:
    """Evaluate the clustering at each tau, plus a row at the auto threshold.

    Returns (tau, is_auto, metrics) tuples sorted by tau.
    """
    if taus is None:
        lo, hi = clustering.nontrivial_interval(sim)
        taus = np.linspace(lo, hi, grid_size + 1)[1:]  # half-open (lo, hi]
    taus = [float(t) for t in taus]
    if not taus:
        raise ValueError("empty threshold range")
    tau_auto = clustering.auto_threshold(sim)
    rows = []
    for tau, is_auto in sorted(
        [(t, False) for t in taus] + [(tau_auto, True)]
    ):
        clusters, _ = cluster_records(sim, tau, refine=refine, iterate=iterate)
        rows.append((tau, is_auto, evaluation.evaluate(clusters, truth, tau=tau)))
    return rows


def degrade(
    dataset: DataSet,
    fields: Sequence[str],
    fraction: float,
    seed: int,
) -> DataSet:
    """Blank round(fraction * n) entries per listed field, uniformly at random.

    At least one field must stay untouched so every record keeps some
    signal; entries in unlisted fields are preserved bit for bit.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError("fraction must lie strictly between 0 and 1")
    idx = [dataset.field_index(name) for name in fields]
    if len(set(idx)) >= dataset.a:
        raise ValueError("at least one field must be left intact")
    rng = np.random.default_rng(seed)
    count = int(round(fraction * dataset.n))
    records = [list(rec) for rec in dataset.records]
    for k in idx:
        for i in rng.choice(dataset.n, size=count, replace=False):
            records[i][k] = ""
    return DataSet(
        records=tuple(tuple(r) for r in records), schema=dataset.schema
    )
