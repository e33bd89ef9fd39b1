import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcdm.textsim import (
    Corpus,
    EmptyCorpusError,
    EmptyDocumentError,
    StaleCorpusError,
    TitleDocument,
    UndefinedSimilarityError,
    build_corpus,
    cosine,
    tfidf_vector,
    title_similarity,
    tokenize,
)
from oracles import title_sim

token_lists = st.lists(
    st.text(alphabet="abcdefghij0123456789", min_size=1, max_size=6),
    min_size=1,
    max_size=8,
)


def doc(tokens, product_id="p"):
    return TitleDocument(product_id=product_id, tokens=tuple(tokens))


class TestTokenize:
    def test_plain_words(self):
        assert tokenize("Best soft drink in Japan").tokens == ("best", "soft", "drink", "in", "japan")

    def test_punctuation_splits(self):
        assert tokenize("Google Pixel 4a (128GB)").tokens == ("google", "pixel", "4a", "128gb")

    def test_no_alphanumerics_is_error(self):
        with pytest.raises(EmptyDocumentError):
            tokenize("---")

    def test_duplicates_and_order_preserved(self):
        assert tokenize("tea tea, TEA!").tokens == ("tea", "tea", "tea")
        assert tokenize("b a b").tokens == ("b", "a", "b")

    def test_underscore_is_a_separator(self):
        assert tokenize("usb_c cable").tokens == ("usb", "c", "cable")

    def test_unicode_titles(self):
        assert tokenize("Café Münster 2kg").tokens == ("café", "münster", "2kg")


class TestBuildCorpus:
    def test_document_frequencies(self):
        corpus = build_corpus([doc(["a", "b"]), doc(["b", "c"])])
        assert corpus.document_count == 2
        assert corpus.document_frequency == {"a": 1, "b": 2, "c": 1}

    def test_single_document(self):
        corpus = build_corpus([doc(["x", "x", "y"])])
        assert corpus.document_count == 1
        assert corpus.document_frequency == {"x": 1, "y": 1}

    def test_empty_sequence_is_error(self):
        with pytest.raises(EmptyCorpusError):
            build_corpus([])

    def test_shared_token_over_fixture_titles(self, catalog):
        docs = [tokenize(p.title, p.id) for p in catalog.products]
        corpus = build_corpus(docs)
        assert corpus.document_count == 30
        assert corpus.document_frequency["google"] == 3
        assert corpus.document_frequency["cotton"] == 4


class TestTfidfVector:
    def test_hand_computed_weights(self):
        corpus = Corpus(document_count=2, document_frequency={"x": 2, "y": 1})
        weights = tfidf_vector(doc(["x", "x", "y"]), corpus)
        assert weights["x"] == pytest.approx(2 / 3, abs=1e-12)
        assert weights["y"] == pytest.approx((1 / 3) * (math.log(3 / 2) + 1), abs=1e-12)
        assert weights["y"] == pytest.approx(0.4685, abs=1e-4)

    def test_single_document_corpus_reduces_to_tf(self):
        corpus = build_corpus([doc(["x", "x", "y"])])
        weights = tfidf_vector(doc(["x", "x", "y"]), corpus)
        # idf = ln(2/2) + 1 = 1 for every token
        assert weights == {"x": pytest.approx(2 / 3), "y": pytest.approx(1 / 3)}

    def test_absent_token_has_no_entry(self):
        corpus = build_corpus([doc(["x", "y"]), doc(["z"])])
        weights = tfidf_vector(doc(["x", "y"]), corpus)
        assert "z" not in weights

    def test_stale_corpus_is_error(self):
        corpus = build_corpus([doc(["x"])])
        with pytest.raises(StaleCorpusError):
            tfidf_vector(doc(["x", "new"]), corpus)

    def test_idf_monotonicity(self):
        common = Corpus(document_count=10, document_frequency={"t": 9})
        rare = Corpus(document_count=10, document_frequency={"t": 2})
        same_doc = doc(["t", "t"])
        assert tfidf_vector(same_doc, rare)["t"] > tfidf_vector(same_doc, common)["t"]


class TestCosine:
    def test_identical_vectors(self):
        assert cosine({"p": 0.5, "q": 0.2}, {"p": 0.5, "q": 0.2}) == 1.0

    def test_disjoint_vectors(self):
        assert cosine({"p": 1.0}, {"q": 1.0}) == 0.0

    def test_analytic_value(self):
        assert cosine({"p": 1.0, "q": 1.0}, {"p": 1.0}) == pytest.approx(1 / math.sqrt(2), abs=1e-12)

    def test_both_empty_is_error(self):
        with pytest.raises(UndefinedSimilarityError):
            cosine({}, {})

    def test_one_empty_is_zero(self):
        assert cosine({}, {"p": 1.0}) == 0.0
        assert cosine({"p": 1.0}, {}) == 0.0

    def test_zero_norm_is_zero(self):
        assert cosine({"p": 0.0}, {"p": 1.0}) == 0.0


class TestTitleSimilarity:
    def test_equal_titles(self):
        docs = [tokenize("Green Tea", "a"), tokenize("Green Tea", "b"), tokenize("Coffee Beans", "c")]
        corpus = build_corpus(docs)
        assert title_similarity(docs[0], docs[1], corpus) == 1.0

    def test_disjoint_titles(self):
        docs = [tokenize("Green Tea", "a"), tokenize("Coffee Beans", "b")]
        corpus = build_corpus(docs)
        assert title_similarity(docs[0], docs[1], corpus) == 0.0

    def test_golden_pairs_over_fixture_corpus(self, tfidf_golden):
        docs = [tokenize(title, str(i)) for i, title in enumerate(tfidf_golden["corpus_titles"])]
        corpus = build_corpus(docs)
        by_title = {" ".join(d.tokens): d for d in docs}
        for pair in tfidf_golden["pairs"]:
            a = by_title[" ".join(tokenize(pair["a"]).tokens)]
            b = by_title[" ".join(tokenize(pair["b"]).tokens)]
            assert title_similarity(a, b, corpus) == pytest.approx(pair["v_t"], abs=1e-12)

    def test_agrees_with_reference_implementation(self, catalog):
        titles = [p.title for p in catalog.products]
        docs = [tokenize(t, str(i)) for i, t in enumerate(titles)]
        corpus = build_corpus(docs)
        for a, b in [(0, 1), (8, 9), (8, 13), (23, 26)]:
            engine = title_similarity(docs[a], docs[b], corpus)
            reference = title_sim(titles[a], titles[b], titles)
            assert engine == pytest.approx(reference, abs=1e-12)


class TestProperties:
    @given(token_lists, token_lists)
    @settings(max_examples=100)
    def test_symmetry_and_range(self, tokens_a, tokens_b):
        doc_a, doc_b = doc(tokens_a, "a"), doc(tokens_b, "b")
        corpus = build_corpus([doc_a, doc_b])
        forward = title_similarity(doc_a, doc_b, corpus)
        backward = title_similarity(doc_b, doc_a, corpus)
        assert forward == backward
        assert 0.0 <= forward <= 1.0

    @given(token_lists)
    @settings(max_examples=100)
    def test_self_similarity_is_one(self, tokens):
        document = doc(tokens, "a")
        corpus = build_corpus([document])
        assert title_similarity(document, document, corpus) == 1.0

    @given(token_lists, token_lists, st.integers(min_value=2, max_value=5))
    @settings(max_examples=100)
    def test_duplicating_tokens_keeps_direction(self, tokens_a, tokens_b, k):
        doc_a, doc_b = doc(tokens_a, "a"), doc(tokens_b, "b")
        corpus = build_corpus([doc_a, doc_b])
        repeated = doc(tuple(tokens_a) * k, "a")
        base = title_similarity(doc_a, doc_b, corpus)
        scaled = title_similarity(repeated, doc_b, corpus)
        assert scaled == pytest.approx(base, abs=1e-12)
