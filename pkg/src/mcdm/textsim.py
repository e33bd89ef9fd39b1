"""Title tokenization and TF-IDF cosine similarity over a per-search corpus.

The corpus is small by design: one reference title plus the related titles of
the current search, rebuilt per search. IDF is smoothed so tokens present in
every title still contribute, which keeps identical titles at similarity 1
even in a two-document corpus.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping


class TextSimilarityError(Exception):
    """Base class for similarity failures."""


class EmptyDocumentError(TextSimilarityError):
    """A title produced no tokens (no alphanumeric characters)."""


class EmptyCorpusError(TextSimilarityError):
    """A corpus cannot be built from zero documents."""


class StaleCorpusError(TextSimilarityError):
    """A document contains a token the corpus has never seen."""


class UndefinedSimilarityError(TextSimilarityError):
    """Cosine similarity of two empty vectors is undefined."""


@dataclass(frozen=True)
class TitleDocument:
    """Lowercased tokens of one product title, in original order."""

    product_id: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class Corpus:
    """Document count and per-token document frequency for one search."""

    document_count: int
    document_frequency: Mapping[str, int]


def tokenize(title: str, product_id: str = "") -> TitleDocument:
    """Lowercase and split a title on runs of non-alphanumeric characters.

    Order and duplicates are preserved; there is no stemming or stop-word
    removal. A title without a single alphanumeric character is an error.
    """
    lowered = title.lower()
    tokens = tuple(
        "".join(group)
        for is_word, group in itertools.groupby(lowered, key=str.isalnum)
        if is_word
    )
    if not tokens:
        raise EmptyDocumentError(f"title {title!r} contains no alphanumeric characters")
    return TitleDocument(product_id=product_id, tokens=tokens)


def build_corpus(documents: Iterable[TitleDocument]) -> Corpus:
    """Count, per token, how many documents contain it at least once."""
    frequency: Counter[str] = Counter()
    count = 0
    for doc in documents:
        count += 1
        frequency.update(set(doc.tokens))
    if count == 0:
        raise EmptyCorpusError("cannot build a corpus from zero documents")
    return Corpus(document_count=count, document_frequency=dict(frequency))


def tfidf_vector(doc: TitleDocument, corpus: Corpus) -> dict[str, float]:
    """Sparse token -> weight map: length-normalized tf times smoothed idf.

    idf(t) = ln((1 + N) / (1 + df(t))) + 1, so a token present in every
    document still gets a positive weight.
    """
    if not doc.tokens:
        raise EmptyDocumentError(f"document {doc.product_id!r} has no tokens")
    counts = Counter(doc.tokens)
    length = len(doc.tokens)
    weights: dict[str, float] = {}
    for token, count in counts.items():
        df = corpus.document_frequency.get(token)
        if df is None:
            raise StaleCorpusError(
                f"token {token!r} from document {doc.product_id!r} is not in the corpus"
            )
        idf = math.log((1 + corpus.document_count) / (1 + df)) + 1.0
        weights[token] = (count / length) * idf
    return weights


def cosine(a: Mapping[str, float], b: Mapping[str, float]) -> float:
    """Cosine similarity of two sparse non-negative vectors, in [0, 1]."""
    if not a and not b:
        raise UndefinedSimilarityError("cosine of two empty vectors is undefined")
    if not a or not b:
        return 0.0
    norm_a = math.sqrt(sum(w * w for w in a.values()))
    norm_b = math.sqrt(sum(w * w for w in b.values()))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    if a == b:
        return 1.0
    # summing the intersection in sorted order makes the float result
    # independent of argument order, keeping cosine exactly symmetric
    dot = sum(a[token] * b[token] for token in sorted(a.keys() & b.keys()))
    return min(max(dot / (norm_a * norm_b), 0.0), 1.0)


def title_similarity(reference: TitleDocument, candidate: TitleDocument, corpus: Corpus) -> float:
    """Cosine similarity of the two titles' TF-IDF vectors."""
    return cosine(tfidf_vector(reference, corpus), tfidf_vector(candidate, corpus))
