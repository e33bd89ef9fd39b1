"""Five-criterion product scoring and explained top-n ranking.

Each candidate gets an attribute vector (title similarity, price proximity),
an overall similarity against the reference's ideal (1, 1), five 0-100
criterion scores, and a weight-blended comprehensive score. The explanation
attached to every ranked product breaks the comprehensive score into
per-criterion contributions that sum back to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import textsim
from .ahp import ConsistencyReport, PairwiseMatrix, WeightVector, derive_weights

#: The fixed criterion set: similarity, review count, rating, video review
#: count, video play count. Weight vectors must carry exactly these labels.
CRITERIA = ("SI", "NR", "RA", "NVR", "NVP")

#: Supported ranking generators.
METHODS = ("similarity_only", "equal_weights", "ahp")

#: price_range() sentinel: every price in the search was identical.
DEGENERATE_RANGE = 0.0


class ScoringError(Exception):
    """Base class for scoring failures."""


class InsufficientDataError(ScoringError):
    """Too few data points to compute a statistic."""


class CriteriaMismatchError(ScoringError):
    """A weight vector does not carry exactly the five criterion labels."""


class NoCandidatesError(ScoringError):
    """Ranking requires at least one candidate product."""


class MissingMatrixError(ScoringError):
    """The ahp method requires a pairwise comparison matrix."""


@dataclass(frozen=True)
class VideoStats:
    """Review and play counts of a product's most popular video."""

    review_count: int
    play_count: int
    url: str | None = None

    def __post_init__(self) -> None:
        if self.review_count < 0 or self.play_count < 0:
            raise ValueError("video counts must be non-negative")


@dataclass(frozen=True)
class Product:
    """One catalog record; video stats are optional."""

    id: str
    title: str
    price: float
    rating: float
    review_count: int
    video: VideoStats | None = None
    source_url: str | None = None

    def __post_init__(self) -> None:
        if self.price < 0:
            raise ValueError(f"product {self.id!r}: price must be non-negative")
        if self.rating < 0:
            raise ValueError(f"product {self.id!r}: rating must be non-negative")
        if self.review_count < 0:
            raise ValueError(f"product {self.id!r}: review_count must be non-negative")


@dataclass(frozen=True)
class AttributeVector:
    """Candidate position in the unit square; the reference sits at (1, 1)."""

    v_t: float  # title similarity
    v1: float   # price proximity


@dataclass(frozen=True)
class ScoringConfig:
    """Thresholds and knobs for criterion scoring and ranking."""

    rating_max: float = 5.0
    nr_threshold: int = 10_000
    nvr_threshold: int = 1_000
    nvp_threshold: int = 100_000
    top_n: int = 10
    price_percentiles: tuple[float, float] = (5.0, 95.0)

    def __post_init__(self) -> None:
        if self.rating_max <= 0:
            raise ValueError("rating_max must be positive")
        if min(self.nr_threshold, self.nvr_threshold, self.nvp_threshold) <= 0:
            raise ValueError("criterion thresholds must be positive")
        if not 1 <= self.top_n <= 30:
            raise ValueError("top_n must be in [1, 30]")
        lo, hi = self.price_percentiles
        if not (0.0 <= lo < hi <= 100.0):
            raise ValueError("price_percentiles must satisfy 0 <= lo < hi <= 100")

    def as_dict(self) -> dict:
        return {
            "rating_max": self.rating_max,
            "nr_threshold": self.nr_threshold,
            "nvr_threshold": self.nvr_threshold,
            "nvp_threshold": self.nvp_threshold,
            "top_n": self.top_n,
            "price_percentiles": list(self.price_percentiles),
        }


@dataclass(frozen=True)
class CriterionScores:
    """Per-criterion scores, each in [0, 100]."""

    si: float
    nr: float
    ra: float
    nvr: float
    nvp: float

    def by_criterion(self) -> dict[str, float]:
        return {"SI": self.si, "NR": self.nr, "RA": self.ra, "NVR": self.nvr, "NVP": self.nvp}


@dataclass(frozen=True)
class Contribution:
    """One criterion's share of a comprehensive score."""

    criterion: str
    score: float
    weight: float
    weighted: float


@dataclass(frozen=True)
class ScoredProduct:
    """A ranked candidate with its full scoring breakdown."""

    product: Product
    attribute: AttributeVector
    scores: CriterionScores
    comprehensive: float
    rank: int
    explanation: tuple[Contribution, ...]


def price_range(prices: Iterable[float], config: ScoringConfig = ScoringConfig()) -> float:
    """Width of the inter-percentile price interval (default 5th to 95th).

    The input should be the reference price plus every candidate price.
    Returns DEGENERATE_RANGE (0.0) when the interval has zero width, which
    price_vector treats as "equal prices match, everything else does not".
    """
    values = [float(p) for p in prices]
    if len(values) < 2:
        raise InsufficientDataError(f"need at least 2 prices, got {len(values)}")
    if any(v < 0 for v in values):
        raise ValueError("prices must be non-negative")
    lo, hi = np.percentile(values, config.price_percentiles)
    return float(hi - lo)


def price_vector(ref_price: float, cand_price: float, range_p: float) -> float:
    """Price proximity 1 - |candidate - reference| / range, clamped to [0, 1]."""
    if ref_price < 0 or cand_price < 0:
        raise ValueError("prices must be non-negative")
    if range_p <= DEGENERATE_RANGE:
        return 1.0 if cand_price == ref_price else 0.0
    raw = 1.0 - abs(cand_price - ref_price) / range_p
    return min(max(raw, 0.0), 1.0)


def product_similarity(attribute: AttributeVector) -> float:
    """Cosine of the candidate's attribute vector against the ideal (1, 1)."""
    v_t, v1 = attribute.v_t, attribute.v1
    if v_t == 0.0 and v1 == 0.0:
        return 0.0
    if v_t == v1:
        # parallel to (1, 1) exactly
        return 1.0
    si = (v_t + v1) / (math.sqrt(2.0) * math.hypot(v_t, v1))
    return min(max(si, 0.0), 1.0)


def _threshold_score(value: float, threshold: float) -> float:
    # min(value/threshold, 1) * 100, multiplying first so integer inputs
    # land on exact decimals (63850 against 100000 gives exactly 63.85).
    if value >= threshold:
        return 100.0
    return value * 100.0 / threshold


def criterion_scores(product: Product, si: float, config: ScoringConfig = ScoringConfig()) -> CriterionScores:
    """Score the five criteria on the 0-100 scale.

    SI and RA convert to percentages; NR, NVR and NVP are capped at their
    thresholds. A product without video data scores 0 on NVR and NVP rather
    than being excluded.
    """
    if not 0.0 <= si <= 1.0:
        raise ValueError(f"si must be in [0, 1], got {si}")
    if product.rating > config.rating_max:
        raise ValueError(
            f"product {product.id!r}: rating {product.rating} exceeds rating_max {config.rating_max}"
        )
    if product.video is None:
        nvr = nvp = 0.0
    else:
        nvr = _threshold_score(product.video.review_count, config.nvr_threshold)
        nvp = _threshold_score(product.video.play_count, config.nvp_threshold)
    return CriterionScores(
        si=si * 100.0,
        nr=_threshold_score(product.review_count, config.nr_threshold),
        ra=product.rating * 100.0 / config.rating_max,
        nvr=nvr,
        nvp=nvp,
    )


def _contributions(scores: CriterionScores, weights: WeightVector) -> tuple[Contribution, ...]:
    if set(weights.labels) != set(CRITERIA) or len(weights) != len(CRITERIA):
        raise CriteriaMismatchError(
            f"weights must carry exactly the labels {CRITERIA}, got {weights.labels}"
        )
    weight_by_label = weights.as_dict()
    score_by_label = scores.by_criterion()
    return tuple(
        Contribution(
            criterion=label,
            score=score_by_label[label],
            weight=weight_by_label[label],
            weighted=weight_by_label[label] * score_by_label[label],
        )
        for label in CRITERIA
    )


def comprehensive_score(scores: CriterionScores, weights: WeightVector) -> float:
    """Weight-blended 0-100 score: the dot product of weights and scores."""
    total = sum(c.weighted for c in _contributions(scores, weights))
    return min(max(total, 0.0), 100.0)


def score_candidate(
    candidate: Product,
    attribute: AttributeVector,
    weights: WeightVector,
    config: ScoringConfig = ScoringConfig(),
) -> tuple[CriterionScores, float, tuple[Contribution, ...]]:
    """Criterion scores, comprehensive score and explanation for one candidate."""
    si = product_similarity(attribute)
    scores = criterion_scores(candidate, si, config)
    explanation = _contributions(scores, weights)
    comprehensive = min(max(sum(c.weighted for c in explanation), 0.0), 100.0)
    return scores, comprehensive, explanation


def rank(
    reference: Product,
    candidates: Sequence[Product],
    weights: WeightVector,
    config: ScoringConfig = ScoringConfig(),
) -> list[ScoredProduct]:
    """Score every candidate against the reference and return the top n.

    The TF-IDF corpus is the reference title plus all candidate titles; the
    price range spans the same set. Ordering is comprehensive score
    descending, ties broken by higher SI and then lexicographic id.
    """
    candidates = list(candidates)
    if not candidates:
        raise NoCandidatesError("ranking requires at least one candidate")

    reference_doc = textsim.tokenize(reference.title, product_id=reference.id)
    candidate_docs = [textsim.tokenize(c.title, product_id=c.id) for c in candidates]
    corpus = textsim.build_corpus([reference_doc, *candidate_docs])
    range_p = price_range([reference.price, *(c.price for c in candidates)], config)

    rows = []
    for candidate, doc in zip(candidates, candidate_docs):
        attribute = AttributeVector(
            v_t=textsim.title_similarity(reference_doc, doc, corpus),
            v1=price_vector(reference.price, candidate.price, range_p),
        )
        scores, comprehensive, explanation = score_candidate(candidate, attribute, weights, config)
        rows.append((candidate, attribute, scores, comprehensive, explanation))

    rows.sort(key=lambda row: (-row[3], -row[2].si, row[0].id))
    return [
        ScoredProduct(
            product=candidate,
            attribute=attribute,
            scores=scores,
            comprehensive=comprehensive,
            rank=position,
            explanation=explanation,
        )
        for position, (candidate, attribute, scores, comprehensive, explanation) in enumerate(
            rows[: config.top_n], start=1
        )
    ]


def method_weights(
    method: str,
    matrix: PairwiseMatrix | None = None,
) -> tuple[WeightVector, ConsistencyReport | None]:
    """Resolve the weight vector for one of the three ranking generators.

    similarity_only puts all weight on SI (so ordering follows similarity
    alone), equal_weights uses 0.2 per criterion, ahp derives weights from
    the given pairwise matrix.
    """
    if method == "similarity_only":
        return WeightVector((1.0, 0.0, 0.0, 0.0, 0.0), CRITERIA), None
    if method == "equal_weights":
        return WeightVector((0.2,) * 5, CRITERIA), None
    if method == "ahp":
        if matrix is None:
            raise MissingMatrixError("method 'ahp' requires a pairwise comparison matrix")
        if set(matrix.labels) != set(CRITERIA):
            raise CriteriaMismatchError(
                f"matrix must be labeled with exactly {CRITERIA}, got {matrix.labels}"
            )
        return derive_weights(matrix)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def rank_by_method(
    reference: Product,
    candidates: Sequence[Product],
    method: str,
    matrix: PairwiseMatrix | None = None,
    config: ScoringConfig = ScoringConfig(),
) -> list[ScoredProduct]:
    """Rank with one of the three generators; see method_weights."""
    weights, _ = method_weights(method, matrix)
    return rank(reference, candidates, weights, config)


def product_payload(product: Product) -> dict:
    """JSON-ready form of a full product record."""
    video = None
    if product.video is not None:
        video = {
            "review_count": product.video.review_count,
            "play_count": product.video.play_count,
            "url": product.video.url,
        }
    return {
        "id": product.id,
        "title": product.title,
        "price": product.price,
        "rating": product.rating,
        "review_count": product.review_count,
        "video": video,
        "source_url": product.source_url,
    }


def ranked_result_payload(
    reference: Product,
    results: Sequence[ScoredProduct],
    weights: WeightVector,
    consistency: ConsistencyReport | None = None,
    config: ScoringConfig = ScoringConfig(),
    method: str | None = None,
) -> dict:
    """Shared wire form of a ranking: reference, weights, explained results.

    Scores are emitted at full precision, with a ``display`` copy rounded to
    two decimals for progress-bar rendering.
    """
    rows = []
    for item in results:
        scores = {
            "si": item.scores.si,
            "nr": item.scores.nr,
            "ra": item.scores.ra,
            "nvr": item.scores.nvr,
            "nvp": item.scores.nvp,
        }
        rows.append(
            {
                "id": item.product.id,
                "title": item.product.title,
                "price": item.product.price,
                "rating": item.product.rating,
                "rank": item.rank,
                "comprehensive": item.comprehensive,
                "scores": scores,
                "contributions": {c.criterion: c.weighted for c in item.explanation},
                "display": {
                    "comprehensive": round(item.comprehensive, 2),
                    "scores": {key: round(value, 2) for key, value in scores.items()},
                },
                "video_url": item.product.video.url if item.product.video else None,
            }
        )
    return {
        "reference": product_payload(reference),
        "weights": weights.as_dict(),
        "consistency": consistency.as_dict() if consistency else None,
        "method": method,
        "config": config.as_dict(),
        "results": rows,
    }
