from collections import Counter

from softdedupe import synth
from softdedupe.corpus import TokenizerConfig, tokenize

WORD = TokenizerConfig(mode="word")


class TestRestaurants:
    def test_counts(self, restaurants):
        data, truth = restaurants
        assert data.n == synth.RESTAURANT_RECORDS == 864
        assert truth.c == synth.RESTAURANT_ENTITIES == 752
        assert data.schema == ("name", "address", "city", "phone", "cuisine")

    def test_entity_ratio_near_target(self, restaurants):
        data, truth = restaurants
        assert abs(truth.c / data.n - 0.870) <= 1e-3

    def test_every_entity_nonempty(self, restaurants):
        data, truth = restaurants
        sizes = Counter(len(c) for c in truth.clusters)
        assert min(sizes) >= 1 and sum(sizes.values()) == truth.c

    def test_deterministic(self):
        assert synth.make_restaurants().records == synth.make_restaurants().records

    def test_duplicates_differ_from_originals(self, restaurants):
        data, truth = restaurants
        multi = [c for c in truth.clusters if len(c) > 1]
        assert multi, "expected some duplicated entities"
        differing = sum(
            1
            for c in multi
            if len({data.records[i] for i in c}) > 1
        )
        assert differing / len(multi) > 0.9


class TestCitations:
    def test_counts(self, citations):
        data, truth = citations
        assert data.n == synth.CITATION_RECORDS == 1295
        assert truth.c == synth.CITATION_ENTITIES == 122
        assert data.schema == ("author", "title", "venue")

    def test_entity_ratio_near_target(self, citations):
        data, truth = citations
        assert abs(truth.c / data.n - 0.094) <= 1e-3

    def test_some_entries_missing(self, citations):
        data, _ = citations
        missing = sum(
            1
            for k in range(data.a)
            for entry in data.column(k)
            if not tokenize(entry, WORD)
        )
        frac = missing / (data.n * data.a)
        assert 0.005 < frac < 0.10

    def test_deterministic(self):
        assert synth.make_citations().records == synth.make_citations().records
