"""Clustering evaluation against a ground-truth partition.

Implements purity, inverse purity and their harmonic mean, the relative
error in the number of clusters, pairwise precision/recall/F1, the
(relative) z-Rand score under the hypergeometric pair model, and NMI.
Metrics that are undefined for a given pair of partitions are reported as
None rather than NaN.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict
from math import comb

import numpy as np

from .clustering import ClusterSet

# guard added inside entropy logarithms so single-cluster partitions give
# entropy ~0 instead of blowing up the normalization
ENTROPY_EPS = 2.0**-52


@dataclass(frozen=True)
class MetricsReport:
    purity: float
    inverse_purity: float
    harmonic_mean: float
    rel_cluster_error: float
    precision: float | None
    recall: float | None
    f1: float | None
    z_rand: float | None
    rel_z_rand: float | None
    nmi: float
    n: int
    c: int
    c_true: int
    tau: float | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def _contingency(c: ClusterSet, c_true: ClusterSet) -> dict[tuple[int, int], int]:
    labels = c.labels()
    labels_true = c_true.labels()
    table: dict[tuple[int, int], int] = {}
    for li, lj in zip(labels, labels_true):
        key = (int(li), int(lj))
        table[key] = table.get(key, 0) + 1
    return table


def _check_same_n(c: ClusterSet, c_true: ClusterSet) -> int:
    if c.n != c_true.n:
        raise ValueError("partitions cover different numbers of records")
    return c.n


def purity(c: ClusterSet, c_true: ClusterSet) -> float:
    """Fraction of records falling in their cluster's best-matching truth cluster."""
    n = _check_same_n(c, c_true)
    best: dict[int, int] = {}
    for (i, _j), cnt in _contingency(c, c_true).items():
        if cnt > best.get(i, 0):
            best[i] = cnt
    return sum(best.values()) / n


def inverse_purity(c: ClusterSet, c_true: ClusterSet) -> float:
    return purity(c_true, c)


def harmonic_mean(c: ClusterSet, c_true: ClusterSet) -> float:
    p = purity(c, c_true)
    i = inverse_purity(c, c_true)
    return 2 * p * i / (p + i) if p + i > 0 else 0.0


def rel_cluster_error(c: ClusterSet, c_true: ClusterSet) -> float:
    """|c - c'| / c'."""
    _check_same_n(c, c_true)
    return abs(c.c - c_true.c) / c_true.c


def _pair_count(clusters: ClusterSet) -> int:
    return sum(comb(len(r), 2) for r in clusters.clusters)


def pair_metrics(
    c: ClusterSet, c_true: ClusterSet
) -> tuple[float | None, float | None, float | None]:
    """(precision, recall, F1) over co-clustered record pairs.

    Precision and F1 are None when the clustering has no co-clustered
    pairs; recall is None when the ground truth has none.
    """
    _check_same_n(c, c_true)
    n_c = _pair_count(c)
    n_g = _pair_count(c_true)
    overlap = sum(comb(cnt, 2) for cnt in _contingency(c, c_true).values())
    pre = overlap / n_c if n_c > 0 else None
    rec = overlap / n_g if n_g > 0 else None
    f1 = 2 * overlap / (n_c + n_g) if n_c > 0 and n_g > 0 else None
    return pre, rec, f1


def _z_rand_raw(c: ClusterSet, c_true: ClusterSet) -> float | None:
    n = _check_same_n(c, c_true)
    t = comb(n, 2)
    n_c = _pair_count(c)
    n_g = _pair_count(c_true)
    if t < 2 or n_c == 0 or n_g == 0:
        return None
    w = sum(comb(cnt, 2) for cnt in _contingency(c, c_true).values())
    mean = n_c * n_g / t
    var = n_g * (n_c / t) * (1 - n_c / t) * (t - n_g) / (t - 1)
    if var <= 0:
        return None
    return (w - mean) / math.sqrt(var)


def z_rand(c: ClusterSet, c_true: ClusterSet) -> float | None:
    """Standard deviations separating the pair overlap from its null mean.

    The null model draws |C| co-clustered pairs uniformly from the C(n,2)
    possible pairs (hypergeometric), with cluster sizes fixed.
    """
    return _z_rand_raw(c, c_true)


def rel_z_rand(c: ClusterSet, c_true: ClusterSet) -> float | None:
    """z-Rand of the clustering divided by the ground truth's self z-Rand."""
    num = _z_rand_raw(c, c_true)
    den = _z_rand_raw(c_true, c_true)
    if num is None or den is None or den == 0:
        return None
    return num / den


def _entropy(clusters: ClusterSet, n: int) -> float:
    sizes = np.array([len(r) for r in clusters.clusters], dtype=float)
    frac = sizes / n
    return float(max(-(frac * np.log(frac + ENTROPY_EPS)).sum(), 0.0))


def nmi(c: ClusterSet, c_true: ClusterSet) -> float:
    """Mutual information normalized by the geometric mean of the entropies."""
    n = _check_same_n(c, c_true)
    sizes_c = [len(r) for r in c.clusters]
    sizes_t = [len(r) for r in c_true.clusters]
    info = 0.0
    for (i, j), cnt in _contingency(c, c_true).items():
        info += (cnt / n) * math.log(n * cnt / (sizes_c[i] * sizes_t[j]))
    denom = math.sqrt(_entropy(c, n) * _entropy(c_true, n))
    if denom <= 0:
        return 0.0
    return float(min(max(info / denom, 0.0), 1.0))


def evaluate(
    c: ClusterSet, c_true: ClusterSet, tau: float | None = None
) -> MetricsReport:
    """Compute the full metric suite for a clustering against ground truth."""
    pre, rec, f1 = pair_metrics(c, c_true)
    return MetricsReport(
        purity=purity(c, c_true),
        inverse_purity=inverse_purity(c, c_true),
        harmonic_mean=harmonic_mean(c, c_true),
        rel_cluster_error=rel_cluster_error(c, c_true),
        precision=pre,
        recall=rec,
        f1=f1,
        z_rand=z_rand(c, c_true),
        rel_z_rand=rel_z_rand(c, c_true),
        nmi=nmi(c, c_true),
        n=c.n,
        c=c.c,
        c_true=c_true.c,
        tau=tau,
    )
