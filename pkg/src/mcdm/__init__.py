"""Multi-criteria product ranking.

Pairwise-comparison weighting with consistency checking, TF-IDF title
similarity, five-criterion scoring, and explained top-n rankings, exposed as
a library, an HTTP service (:mod:`mcdm.service`) and a CLI (:mod:`mcdm.cli`).
"""

__version__ = "0.1.0"

from .ahp import (
    ConsistencyReport,
    PairwiseMatrix,
    WeightVector,
    consistency,
    derive_weights,
    principal_eigen,
    validate_matrix,
)
from .scoring import (
    CRITERIA,
    METHODS,
    AttributeVector,
    CriterionScores,
    Product,
    ScoredProduct,
    ScoringConfig,
    VideoStats,
    comprehensive_score,
    criterion_scores,
    price_range,
    price_vector,
    product_similarity,
    rank,
    rank_by_method,
)
from .textsim import Corpus, TitleDocument, build_corpus, cosine, tfidf_vector, title_similarity, tokenize

__all__ = [
    "__version__",
    "ConsistencyReport",
    "PairwiseMatrix",
    "WeightVector",
    "consistency",
    "derive_weights",
    "principal_eigen",
    "validate_matrix",
    "CRITERIA",
    "METHODS",
    "AttributeVector",
    "CriterionScores",
    "Product",
    "ScoredProduct",
    "ScoringConfig",
    "VideoStats",
    "comprehensive_score",
    "criterion_scores",
    "price_range",
    "price_vector",
    "product_similarity",
    "rank",
    "rank_by_method",
    "Corpus",
    "TitleDocument",
    "build_corpus",
    "cosine",
    "tfidf_vector",
    "title_similarity",
    "tokenize",
]
