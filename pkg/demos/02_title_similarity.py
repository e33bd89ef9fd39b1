#!/usr/bin/env python3
# How two product titles are compared: tokenize, weight by TF-IDF over the
# current search's corpus, then take the cosine of the sparse vectors.

from mcdm.textsim import build_corpus, cosine, tfidf_vector, title_similarity, tokenize

titles = [
    "Google Pixel 3",
    "Google Pixel 4a (128GB)",
    "Google Pixel 4 XL",
    "Apple iPhone 11 (64GB)",
    "Pixel Art LED Screen",
    "Wireless Charging Pad 15W",
]

docs = [tokenize(title, product_id=f"p{i}") for i, title in enumerate(titles)]
print("tokens:")
for title, doc in zip(titles, docs):
    print(f"  {title!r:<30} -> {list(doc.tokens)}")

# The corpus is just the titles of the current search: document counts drive
# the IDF, so a token shared by every title carries less information.
corpus = build_corpus(docs)
print("\ndocument frequencies:", dict(sorted(corpus.document_frequency.items())))

reference = docs[0]
vector = tfidf_vector(reference, corpus)
print(f"\nTF-IDF vector of {titles[0]!r}:")
for token, weight in sorted(vector.items(), key=lambda kv: -kv[1]):
    print(f"  {token:<8} {weight:.4f}")

print("\nsimilarity against the reference title:")
for title, doc in zip(titles[1:], docs[1:]):
    value = title_similarity(reference, doc, corpus)
    print(f"  {value:.4f}  {title}")

# cosine() works on any sparse non-negative vectors:
print("\ncosine({p,q}, {p}) =", cosine({"p": 1.0, "q": 1.0}, {"p": 1.0}))
