import pytest

from softdedupe import pipeline, synth
from softdedupe.clustering import ClusterSet
from softdedupe.corpus import TokenizerConfig
from softdedupe.similarity import SimilarityParams


@pytest.fixture(scope="session")
def restaurants():
    full = synth.make_restaurants()
    truth = ClusterSet.from_labels(full.column(0))
    data = full.select_fields(["name", "address", "city", "phone", "cuisine"])
    return data, truth


@pytest.fixture(scope="session")
def citations():
    full = synth.make_citations()
    truth = ClusterSet.from_labels(full.column(0))
    data = full.select_fields(["author", "title", "venue"])
    return data, truth


@pytest.fixture(scope="session")
def restaurants_degraded(restaurants):
    data, truth = restaurants
    degraded = pipeline.degrade(
        data, ["address", "city", "phone", "cuisine"], 0.30, seed=42
    )
    return degraded, truth


class BundleCache:
    """Lazily built, session-cached similarity bundles keyed by config."""

    def __init__(self, datasets):
        self.datasets = datasets
        self._cache = {}

    def get(self, name, mode="word", method="soft_tfidf", sparsity="adjust"):
        key = (name, mode, method, sparsity)
        if key not in self._cache:
            data, _truth = self.datasets[name]
            self._cache[key] = pipeline.build_similarity(
                data,
                TokenizerConfig(mode=mode),
                SimilarityParams(method=method),
                sparsity_mode=sparsity,
                seed=1,
            )
        return self._cache[key]

    def truth(self, name):
        return self.datasets[name][1]


@pytest.fixture(scope="session")
def bundles(restaurants, citations, restaurants_degraded):
    return BundleCache(
        {
            "restaurants": restaurants,
            "citations": citations,
            "restaurants30": restaurants_degraded,
        }
    )
