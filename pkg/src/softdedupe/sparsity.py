"""Missing-entry handling: shared-field score adjustment and mode imputation."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import sparse

from .corpus import DataSet, TokenizerConfig, tokenize
from .similarity import CompositeSimilarity


@dataclass(frozen=True)
class PresenceMask:
    """Binary n x a presence matrix B and the pairwise shared-field counts B B^T."""

    mask: np.ndarray
    shared_counts: np.ndarray

    @property
    def n(self) -> int:
        return self.mask.shape[0]

    @property
    def a(self) -> int:
        return self.mask.shape[1]


def presence_mask(tokenized_fields: Sequence[Sequence]) -> PresenceMask:
    """B[i, k] = 0 exactly when entry (i, k) has no in-lexicon features."""
    lengths = {len(col) for col in tokenized_fields}
    if len(lengths) != 1:
        raise ValueError("tokenized fields have mismatched record counts")
    b = np.array(
        [[0 if entry.missing else 1 for entry in col] for col in tokenized_fields],
        dtype=np.int64,
    ).T
    return PresenceMask(mask=b, shared_counts=b @ b.T)


def adjust(st: CompositeSimilarity, mask: PresenceMask) -> CompositeSimilarity:
    """Divide each pair's composite score by its shared-field count.

    Pairs with no shared fields have score 0 already and stay 0. The
    diagonal is pinned at 1. Adjusting twice is an error.
    """
    if st.adjusted:
        raise ValueError("composite similarity is already adjusted")
    if mask.n != st.n:
        raise ValueError("presence mask size does not match similarity matrix")
    coo = st.matrix.tocoo()
    off = coo.row != coo.col
    rows, cols, vals = coo.row[off], coo.col[off], coo.data[off]
    shared = mask.shared_counts[rows, cols]
    nz = shared > 0
    rows, cols = rows[nz], cols[nz]
    vals = vals[nz] / shared[nz]
    n = st.n
    mat = sparse.csr_matrix(
        (
            np.concatenate([vals, np.ones(n)]),
            (np.concatenate([rows, np.arange(n)]), np.concatenate([cols, np.arange(n)])),
        ),
        shape=(n, n),
    )
    return CompositeSimilarity(matrix=mat, max_score=1.0, adjusted=True)


def impute_mode(
    dataset: DataSet, config: TokenizerConfig, seed: int | None = None
) -> DataSet:
    """Replace missing entries by the most frequent entry of their field.

    Missingness means the entry tokenizes to nothing (empty or stop words
    only). Entries are compared case-folded; ties are broken by one seeded
    random choice per field, reused for every missing entry in that field.
    """
    rng = random.Random(seed)
    columns = []
    for k in range(dataset.a):
        col = dataset.column(k)
        missing = [not tokenize(entry, config) for entry in col]
        if all(missing):
            raise ValueError(f"field {k} has no non-missing entries to impute from")
        if not any(missing):
            columns.append(col)
            continue
        counts: Counter[str] = Counter()
        first_raw: dict[str, str] = {}
        for entry, miss in zip(col, missing):
            if miss:
                continue
            key = entry.casefold()
            counts[key] += 1
            first_raw.setdefault(key, entry)
        top = max(counts.values())
        candidates = sorted(key for key, c in counts.items() if c == top)
        fill = first_raw[rng.choice(candidates)]
        columns.append([fill if miss else entry for entry, miss in zip(col, missing)])
    records = tuple(zip(*columns))
    return DataSet(records=tuple(tuple(r) for r in records), schema=dataset.schema)
