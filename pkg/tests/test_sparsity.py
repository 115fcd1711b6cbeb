import random

import numpy as np
import pytest
from scipy import sparse

from softdedupe import pipeline
from softdedupe.corpus import DataSet, TokenizerConfig, tokenize
from softdedupe.similarity import CompositeSimilarity, SimilarityParams
from softdedupe.sparsity import PresenceMask, adjust, impute_mode, presence_mask

WORD = TokenizerConfig(mode="word")


class FakeEntry:
    def __init__(self, missing):
        self.missing = missing


def mask_from_bits(bits):
    """bits[k][i] = 1 when record i has field k present."""
    cols = [[FakeEntry(missing=(b == 0)) for b in col] for col in bits]
    return presence_mask(cols)


class TestPresenceMask:
    def test_mask_layout(self):
        pm = mask_from_bits([[1, 0, 1], [1, 1, 0]])
        assert pm.n == 3 and pm.a == 2
        assert pm.mask.tolist() == [[1, 1], [0, 1], [1, 0]]

    def test_shared_counts_are_pairwise_overlaps(self):
        pm = mask_from_bits([[1, 0, 1], [1, 1, 0], [1, 1, 1]])
        want = pm.mask @ pm.mask.T
        assert np.array_equal(pm.shared_counts, want)
        assert pm.shared_counts[0, 1] == 2  # fields 1 and 2
        assert pm.shared_counts[1, 2] == 1  # field 2 only

    def test_mismatched_columns(self):
        with pytest.raises(ValueError):
            presence_mask([[FakeEntry(False)], [FakeEntry(False), FakeEntry(False)]])


class TestAdjust:
    def small_sim(self, dense, max_score):
        return CompositeSimilarity(
            matrix=sparse.csr_matrix(np.array(dense)), max_score=max_score
        )

    def test_divides_by_shared_count(self):
        raw = self.small_sim(
            [[1.0, 1.6, 0.0], [1.6, 1.0, 0.5], [0.0, 0.5, 1.0]], max_score=2.0
        )
        pm = mask_from_bits([[1, 1, 0], [1, 1, 1]])
        adj = adjust(raw, pm).dense()
        assert adj[0, 1] == pytest.approx(1.6 / 2)
        assert adj[1, 2] == pytest.approx(0.5 / 1)
        assert np.array_equal(np.diag(adj), np.ones(3))

    def test_zero_shared_pair_stays_zero(self):
        raw = self.small_sim([[1.0, 0.0], [0.0, 1.0]], max_score=2.0)
        pm = mask_from_bits([[1, 0], [0, 1]])
        assert pm.shared_counts[0, 1] == 0
        adj = adjust(raw, pm).dense()
        assert adj[0, 1] == 0.0

    def test_double_adjust_is_error(self):
        raw = self.small_sim([[1.0, 0.4], [0.4, 1.0]], max_score=1.0)
        pm = mask_from_bits([[1, 1]])
        once = adjust(raw, pm)
        assert once.adjusted and once.max_score == 1.0
        with pytest.raises(ValueError, match="already adjusted"):
            adjust(once, pm)

    def test_size_mismatch(self):
        raw = self.small_sim([[1.0, 0.4], [0.4, 1.0]], max_score=1.0)
        with pytest.raises(ValueError):
            adjust(raw, mask_from_bits([[1, 1, 1]]))

    def test_adjusted_scores_bounded_by_one(self):
        rng = random.Random(3)
        words = ["".join(rng.choice("abcd") for _ in range(5)) for _ in range(20)]
        records = tuple(
            tuple(
                "" if rng.random() < 0.2 else " ".join(
                    rng.choice(words) for _ in range(rng.randint(1, 3))
                )
                for _ in range(3)
            )
            for _ in range(25)
        )
        data = DataSet(records=records, schema=("f0", "f1", "f2"))
        bundle = pipeline.build_similarity(
            data, WORD, SimilarityParams(theta=0.5), sparsity_mode="adjust"
        )
        # each shared field contributes at most 1, so ST <= shared counts
        raw = bundle.raw.dense()
        off = ~np.eye(data.n, dtype=bool)
        assert (raw[off] <= bundle.mask.shared_counts[off] + 1e-9).all()
        adj = bundle.adjusted.dense()
        assert (adj[off] <= 1.0 + 1e-9).all() and (adj[off] >= 0).all()


class TestExactMatchPair:
    """Two records identical on their one shared field must score exactly 1."""

    def build(self):
        records = (
            ("Joe Bruin", "male", ""),
            ("Joe Bruin", "", "Westwood"),
            ("Joe Zzzz", "male", "Venice"),
            ("Joe Qqqq", "female", "Westwood"),
        )
        data = DataSet(records=records, schema=("name", "gender", "city"))
        return pipeline.build_similarity(data, WORD, SimilarityParams())

    def test_raw_score_is_exactly_one(self):
        bundle = self.build()
        # "joe" occurs in every name so its IDF is 0; "bruin" alone carries
        # the whole normalized weight, making the name similarity exactly 1
        assert bundle.raw.dense()[0, 1] == 1.0

    def test_shared_field_count_is_one(self):
        bundle = self.build()
        assert bundle.mask.shared_counts[0, 1] == 1

    def test_adjusted_score_is_exactly_one(self):
        bundle = self.build()
        assert bundle.adjusted.dense()[0, 1] == 1.0


class TestImputeMode:
    def test_fills_with_most_frequent_entry(self):
        data = DataSet(
            records=(("x", "red"), ("y", "red"), ("z", "blue"), ("w", "")),
            schema=("k", "color"),
        )
        out = impute_mode(data, WORD, seed=0)
        assert out.records[3] == ("w", "red")

    def test_identity_when_nothing_missing(self):
        data = DataSet(records=(("a", "b"), ("c", "d")), schema=("x", "y"))
        assert impute_mode(data, WORD, seed=0).records == data.records

    def test_stop_word_entries_count_as_missing(self):
        data = DataSet(records=(("red",), ("red",), ("the",)), schema=("c",))
        out = impute_mode(data, WORD, seed=0)
        assert out.records[2] == ("red",)

    def test_tie_break_is_seed_deterministic(self):
        data = DataSet(
            records=(("red",), ("blue",), ("",), ("",)), schema=("c",)
        )
        fills = {impute_mode(data, WORD, seed=s).records[2][0] for s in range(20)}
        assert fills <= {"red", "blue"}
        assert len(fills) == 2  # both outcomes reachable across seeds
        for s in (0, 7):
            a = impute_mode(data, WORD, seed=s)
            assert a.records == impute_mode(data, WORD, seed=s).records
            assert a.records[2] == a.records[3]  # one draw reused per field

    def test_mode_compared_case_folded(self):
        data = DataSet(
            records=(("Red",), ("red",), ("blue",), ("",)), schema=("c",)
        )
        out = impute_mode(data, WORD, seed=0)
        assert out.records[3] == ("Red",)  # first-seen raw form of the mode

    def test_all_missing_field_is_error(self):
        data = DataSet(records=(("a", ""), ("b", "")), schema=("x", "y"))
        with pytest.raises(ValueError, match="field 1"):
            impute_mode(data, WORD, seed=0)

    def test_imputed_dataset_has_no_missing_entries(self, bundles):
        data, _ = bundles.datasets["restaurants30"]
        out = impute_mode(data, WORD, seed=1)
        for k in range(out.a):
            assert all(tokenize(e, WORD) for e in out.column(k))
