"""Tabular data loading and per-field feature extraction.

A data set is an n x a grid of raw strings. Each entry is broken into
features (whitespace-separated words or character N-grams); per field we
build an ordered lexicon of the distinct non-stop-word features and count
feature occurrences per entry.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from typing import BinaryIO, Iterable, TextIO

DEFAULT_STOP_WORDS = frozenset({"and", "the", "or", "none", "na", ""})


class LoadError(ValueError):
    """Raised when delimited input cannot be turned into a DataSet."""


@dataclass(frozen=True)
class DataSet:
    """An n x a grid of raw string entries with a field schema."""

    records: tuple[tuple[str, ...], ...]
    schema: tuple[str, ...]

    def __post_init__(self):
        if len(self.records) < 1 or len(self.schema) < 1:
            raise ValueError("dataset needs at least one record and one field")
        a = len(self.schema)
        for i, rec in enumerate(self.records):
            if len(rec) != a:
                raise ValueError(f"record {i} has {len(rec)} entries, expected {a}")

    @property
    def n(self) -> int:
        return len(self.records)

    @property
    def a(self) -> int:
        return len(self.schema)

    def field_index(self, name: str) -> int:
        try:
            return self.schema.index(name)
        except ValueError:
            raise KeyError(f"unknown field name: {name!r}") from None

    def column(self, k: int) -> list[str]:
        return [rec[k] for rec in self.records]

    def select_fields(self, names: Iterable[str]) -> "DataSet":
        idx = [self.field_index(name) for name in names]
        return DataSet(
            records=tuple(tuple(rec[k] for k in idx) for rec in self.records),
            schema=tuple(self.schema[k] for k in idx),
        )


@dataclass(frozen=True)
class TokenizerConfig:
    """How entries are split into features.

    mode "word" splits on whitespace runs; mode "ngram" slides a window of
    ngram_size characters over the raw entry (spaces included), dropping
    all-whitespace grams. Stop words are removed case-insensitively.
    """

    mode: str = "word"
    ngram_size: int = 3
    stop_words: frozenset[str] = DEFAULT_STOP_WORDS
    case_fold: bool = True

    def __post_init__(self):
        if self.mode not in ("word", "ngram"):
            raise ValueError(f"unknown tokenizer mode: {self.mode!r}")
        if self.ngram_size < 1:
            raise ValueError("ngram_size must be >= 1")

    def with_stop_words(self, words: Iterable[str]) -> "TokenizerConfig":
        extra = {w.casefold() for w in words}
        return replace(self, stop_words=self.stop_words | frozenset(extra))


@dataclass(frozen=True)
class FeatureLexicon:
    """Ordered set of distinct features for one field, with reverse lookup."""

    field_index: int
    features: tuple[str, ...]
    lookup: dict[str, int] = field(compare=False, default_factory=dict)

    def __post_init__(self):
        if not self.lookup:
            object.__setattr__(
                self, "lookup", {f: i for i, f in enumerate(self.features)}
            )

    def __len__(self) -> int:
        return len(self.features)


@dataclass(frozen=True)
class TokenizedEntry:
    """Sparse feature counts for one entry.

    counts maps lexicon index -> occurrence count. raw_token_total also
    counts out-of-lexicon tokens, so an empty entry can be told apart from
    one containing only unknown tokens (both count as missing).
    """

    counts: dict[int, int]
    raw_token_total: int = 0

    @property
    def missing(self) -> bool:
        return not self.counts


def load_dataset(
    source: str | TextIO | BinaryIO,
    schema: list[str] | None = None,
    header: bool = True,
    delimiter: str = ",",
) -> DataSet:
    """Read delimited text into a DataSet.

    `source` is a path or an open text/byte stream. With header=True the
    first row gives the field names unless an explicit schema is passed.
    Entry strings are preserved verbatim apart from outer whitespace.
    """
    if isinstance(source, str):
        with open(source, encoding="utf-8", newline="") as fh:
            return load_dataset(fh, schema=schema, header=header, delimiter=delimiter)
    if isinstance(source.read(0), bytes):  # type: ignore[union-attr]
        source = io.TextIOWrapper(source, encoding="utf-8", newline="")  # type: ignore[arg-type]

    reader = csv.reader(source, delimiter=delimiter)
    rows = list(reader)
    if header and rows:
        head = [c.strip() for c in rows.pop(0)]
        if schema is None:
            schema = head
    if not rows:
        raise LoadError("input contains no data rows")
    if schema is None:
        schema = [f"field_{k}" for k in range(len(rows[0]))]
    a = len(schema)
    records = []
    for i, row in enumerate(rows):
        if len(row) != a:
            raise LoadError(f"row {i} has {len(row)} columns, expected {a}")
        records.append(tuple(cell.strip() for cell in row))
    return DataSet(records=tuple(records), schema=tuple(schema))


def load_stop_words(path: str) -> frozenset[str]:
    """Read a stop-word file, one token per line."""
    with open(path, encoding="utf-8") as fh:
        return frozenset(line.strip().casefold() for line in fh)


def tokenize(entry: str, config: TokenizerConfig) -> list[str]:
    """Split an entry into feature tokens, dropping stop words.

    Out-of-lexicon filtering does not happen here; callers count tokens
    against a lexicon separately.
    """
    if config.case_fold:
        entry = entry.casefold()
    if config.mode == "word":
        tokens = entry.split()
    else:
        n = config.ngram_size
        if len(entry) <= n:
            tokens = [entry] if entry else []
        else:
            tokens = [entry[i : i + n] for i in range(len(entry) - n + 1)]
        tokens = [t for t in tokens if t.strip()]  # drop all-whitespace grams
    return [t for t in tokens if t.casefold() not in config.stop_words]


def build_lexicon(dataset: DataSet, k: int, config: TokenizerConfig) -> FeatureLexicon:
    """Collect the distinct features of field k, in lexicographic order."""
    seen: set[str] = set()
    for entry in dataset.column(k):
        seen.update(tokenize(entry, config))
    if not seen:
        raise ValueError(f"field {k} has no features after stop-word removal")
    return FeatureLexicon(field_index=k, features=tuple(sorted(seen)))


def tokenize_field(
    dataset: DataSet, k: int, lexicon: FeatureLexicon, config: TokenizerConfig
) -> list[TokenizedEntry]:
    """Count in-lexicon feature occurrences for every entry of field k."""
    out = []
    lookup = lexicon.lookup
    for entry in dataset.column(k):
        tokens = tokenize(entry, config)
        counts: dict[int, int] = {}
        for t in tokens:
            j = lookup.get(t)
            if j is not None:
                counts[j] = counts.get(j, 0) + 1
        out.append(TokenizedEntry(counts=counts, raw_token_total=len(tokens)))
    return out
