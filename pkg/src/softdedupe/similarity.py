"""Character, feature and hybrid similarity scores.

Per field the pipeline builds a thresholded Jaro-Winkler matrix over the
feature lexicon, a log-scaled l1-normalized TF-IDF matrix over entries,
and combines them into a soft TF-IDF record similarity (or a plain TF-IDF
one). Per-field similarities are then summed into a composite score.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import sparse

from .corpus import FeatureLexicon, TokenizedEntry

# values smaller than this are not stored in sparse similarity matrices
SPARSE_FLOOR = 1e-12

METHOD_TFIDF = "tfidf"
METHOD_SOFT_TFIDF = "soft_tfidf"


@dataclass(frozen=True)
class SimilarityParams:
    """Knobs for the similarity stage.

    prefix_factor and max_prefix follow Winkler's original choice
    (0.1 and 4); theta is the Jaro-Winkler cutoff for soft TF-IDF.
    """

    prefix_factor: float = 0.1
    max_prefix: int = 4
    theta: float = 0.90
    method: str = METHOD_SOFT_TFIDF
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.prefix_factor * self.max_prefix > 1.0 + 1e-12:
            raise ValueError("prefix_factor * max_prefix must be <= 1")
        if not 0.0 <= self.theta < 1.0:
            raise ValueError("theta must lie in [0, 1)")
        if self.method not in (METHOD_TFIDF, METHOD_SOFT_TFIDF):
            raise ValueError(f"unknown method: {self.method!r}")
        if self.weights is not None and any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")


def jaro(s1: str, s2: str) -> float:
    """Jaro similarity in [0, 1].

    Characters match when identical and within a window of
    floor(min(len)/2) positions; t is half the number of order mismatches
    among the matched sequences (kept fractional).
    """
    len1, len2 = len(s1), len(s2)
    if len1 == 0 or len2 == 0:
        return 0.0
    window = min(len1, len2) // 2
    used2 = [False] * len2
    m1: list[str] = []
    match_idx2: list[int] = []
    for i, ch in enumerate(s1):
        lo = max(0, i - window)
        hi = min(len2, i + window + 1)
        for j in range(lo, hi):
            if not used2[j] and s2[j] == ch:
                used2[j] = True
                m1.append(ch)
                match_idx2.append(j)
                break
    m = len(m1)
    if m == 0:
        return 0.0
    m2 = [s2[j] for j in sorted(match_idx2)]
    t = sum(a != b for a, b in zip(m1, m2)) / 2.0
    return (m / len1 + m / len2 + (m - t) / m) / 3.0


def jaro_winkler(
    s1: str, s2: str, prefix_factor: float = 0.1, max_prefix: int = 4
) -> float:
    """Jaro similarity with Winkler's bonus for a shared prefix."""
    j = jaro(s1, s2)
    prefix = 0
    for a, b in zip(s1[:max_prefix], s2[:max_prefix]):
        if a != b:
            break
        prefix += 1
    return j + prefix_factor * prefix * (1.0 - j)


@dataclass(frozen=True)
class JaroWinklerMatrix:
    """Sparse symmetric m x m matrix of JW values >= theta (others absent)."""

    field_index: int
    theta: float
    matrix: sparse.csr_matrix = field(compare=False)

    @property
    def m(self) -> int:
        return self.matrix.shape[0]


def build_jw_matrix(lexicon: FeatureLexicon, params: SimilarityParams) -> JaroWinklerMatrix:
    """All-pairs thresholded Jaro-Winkler matrix over a feature lexicon.

    Pairs whose length ratio already bounds JW below theta are skipped;
    the bound is exact, so the result equals the naive double loop.
    """
    feats = lexicon.features
    m = len(feats)
    p, cap, theta = params.prefix_factor, params.max_prefix, params.theta
    order = sorted(range(m), key=lambda i: len(feats[i]))
    rows = list(range(m))
    cols = list(range(m))
    vals = [1.0] * m  # JW(f, f) = 1
    for a in range(m):
        i = order[a]
        fi = feats[i]
        li = len(fi)
        lmax = min(cap, li)
        for b in range(a + 1, m):
            j = order[b]
            fj = feats[j]
            # upper bound from lengths alone: J <= (2 + min/max) / 3
            j_ub = (2.0 + li / len(fj)) / 3.0
            if j_ub + p * lmax * (1.0 - j_ub) < theta:
                break  # features only get longer from here
            jw = jaro_winkler(fi, fj, p, cap)
            if jw >= theta:
                rows.extend((i, j))
                cols.extend((j, i))
                vals.extend((jw, jw))
    mat = sparse.csr_matrix(
        (np.array(vals), (np.array(rows), np.array(cols))), shape=(m, m)
    )
    return JaroWinklerMatrix(field_index=lexicon.field_index, theta=theta, matrix=mat)


@dataclass(frozen=True)
class TfIdfMatrix:
    """Sparse n x m TF-IDF weights, nonzero rows l1-normalized."""

    field_index: int
    matrix: sparse.csr_matrix = field(compare=False)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def m(self) -> int:
        return self.matrix.shape[1]


def build_tfidf(
    tokenized: Sequence[TokenizedEntry], lexicon: FeatureLexicon, n: int
) -> TfIdfMatrix:
    """Log-scaled TF times IDF (natural log), rows scaled to unit l1 norm."""
    if len(tokenized) != n:
        raise ValueError("tokenized entry count does not match n")
    m = len(lexicon)
    df = np.zeros(m)
    for entry in tokenized:
        for j in entry.counts:
            df[j] += 1
    with np.errstate(divide="ignore"):
        idf = np.where(df > 0, np.log(n / np.where(df > 0, df, 1)), 0.0)
    rows, cols, vals = [], [], []
    for i, entry in enumerate(tokenized):
        for j, c in entry.counts.items():
            w = np.log1p(c) * idf[j]
            if w > 0.0:
                rows.append(i)
                cols.append(j)
                vals.append(w)
    mat = sparse.csr_matrix(
        (np.array(vals), (np.array(rows), np.array(cols))), shape=(n, m)
    )
    mat = mat.tocsr()
    row_sums = np.asarray(mat.sum(axis=1)).ravel()
    # divide in place so single-feature rows normalize to exactly 1.0
    row_of = np.repeat(np.arange(n), np.diff(mat.indptr))
    mat.data /= row_sums[row_of]
    return TfIdfMatrix(field_index=lexicon.field_index, matrix=mat)


@dataclass(frozen=True)
class FieldSimilarity:
    """Sparse symmetric n x n per-field similarity, diagonal fixed at 1."""

    field_index: int
    matrix: sparse.csr_matrix = field(compare=False)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class CompositeSimilarity:
    """Sum of per-field similarities for every record pair."""

    matrix: sparse.csr_matrix = field(compare=False)
    max_score: float  # a (or sum of weights)
    adjusted: bool = False

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()


def _finish_field_matrix(mat: sparse.csr_matrix) -> sparse.csr_matrix:
    """Symmetrize, drop tiny values, and pin the diagonal at exactly 1."""
    mat = ((mat + mat.T) * 0.5).tocoo()
    off = mat.row != mat.col
    keep = off & (np.abs(mat.data) >= SPARSE_FLOOR)
    n = mat.shape[0]
    rows = np.concatenate([mat.row[keep], np.arange(n)])
    cols = np.concatenate([mat.col[keep], np.arange(n)])
    vals = np.concatenate([mat.data[keep], np.ones(n)])
    return sparse.csr_matrix((vals, (rows, cols)), shape=mat.shape)


def soft_tfidf_field(tfidf: TfIdfMatrix, jw: JaroWinklerMatrix) -> FieldSimilarity:
    """Hybrid similarity: TFIDF . M . TFIDF^T with the thresholded JW matrix."""
    if tfidf.m != jw.m:
        raise ValueError("TF-IDF and JW matrix dimensions disagree")
    mat = tfidf.matrix @ jw.matrix @ tfidf.matrix.T
    return FieldSimilarity(tfidf.field_index, _finish_field_matrix(mat))


def tfidf_field(tfidf: TfIdfMatrix) -> FieldSimilarity:
    """Exact-match similarity: TFIDF . TFIDF^T (off-diagonal), diagonal 1."""
    mat = tfidf.matrix @ tfidf.matrix.T
    return FieldSimilarity(tfidf.field_index, _finish_field_matrix(mat))


def composite(
    field_sims: Sequence[FieldSimilarity],
    weights: Sequence[float] | None = None,
) -> CompositeSimilarity:
    """Weighted sum of per-field similarities (unit weights by default)."""
    if not field_sims:
        raise ValueError("no field similarities given")
    n = field_sims[0].n
    if any(fs.n != n for fs in field_sims):
        raise ValueError("field similarities have mismatched record counts")
    if weights is None:
        weights = [1.0] * len(field_sims)
    if len(weights) != len(field_sims):
        raise ValueError("weights length does not match number of fields")
    total = sum(w * fs.matrix for w, fs in zip(weights, field_sims))
    return CompositeSimilarity(
        matrix=total.tocsr(), max_score=float(sum(weights)), adjusted=False
    )


def dump_triplets(matrix: sparse.spmatrix, path: str) -> None:
    """Write a sparse matrix as 'i j value' lines (0-based indices)."""
    coo = matrix.tocoo()
    with open(path, "w", encoding="utf-8") as fh:
        for i, j, v in zip(coo.row, coo.col, coo.data):
            fh.write(f"{i} {j} {v:.12g}\n")
