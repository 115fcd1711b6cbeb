"""Unsupervised record deduplication with soft TF-IDF similarity scores."""

from .corpus import (
    DEFAULT_STOP_WORDS,
    DataSet,
    FeatureLexicon,
    TokenizedEntry,
    TokenizerConfig,
    build_lexicon,
    load_dataset,
    tokenize,
    tokenize_field,
)
from .similarity import (
    CompositeSimilarity,
    FieldSimilarity,
    JaroWinklerMatrix,
    SimilarityParams,
    TfIdfMatrix,
    build_jw_matrix,
    build_tfidf,
    composite,
    jaro,
    jaro_winkler,
    soft_tfidf_field,
    tfidf_field,
)
from .sparsity import PresenceMask, adjust, impute_mode, presence_mask
from .clustering import (
    ClusterSet,
    HStatistics,
    ThresholdedGraph,
    auto_threshold,
    group,
    needs_refinement,
    refine_all,
    refine_cluster,
    strength,
    threshold,
)
from .evaluation import MetricsReport, evaluate
from .pipeline import (
    SimilarityBundle,
    build_similarity,
    cluster_records,
    degrade,
    sweep_thresholds,
)

__all__ = [
    "DEFAULT_STOP_WORDS",
    "DataSet",
    "FeatureLexicon",
    "TokenizedEntry",
    "TokenizerConfig",
    "build_lexicon",
    "load_dataset",
    "tokenize",
    "tokenize_field",
    "CompositeSimilarity",
    "FieldSimilarity",
    "JaroWinklerMatrix",
    "SimilarityParams",
    "TfIdfMatrix",
    "build_jw_matrix",
    "build_tfidf",
    "composite",
    "jaro",
    "jaro_winkler",
    "soft_tfidf_field",
    "tfidf_field",
    "PresenceMask",
    "adjust",
    "impute_mode",
    "presence_mask",
    "ClusterSet",
    "HStatistics",
    "ThresholdedGraph",
    "auto_threshold",
    "group",
    "needs_refinement",
    "refine_all",
    "refine_cluster",
    "strength",
    "threshold",
    "MetricsReport",
    "evaluate",
    "SimilarityBundle",
    "build_similarity",
    "cluster_records",
    "degrade",
    "sweep_thresholds",
]
