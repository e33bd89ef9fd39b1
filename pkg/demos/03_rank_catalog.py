#!/usr/bin/env python3
# Full ranking pass over the bundled catalog: pick a reference product, fetch
# its category neighbours, score five criteria, and explain the result.

from mcdm.ahp import load_matrix, derive_weights
from mcdm.catalog import LocalCatalogProvider, load_catalog
from mcdm.data import sample_catalog_path, sample_matrix_path
from mcdm.scoring import ScoringConfig, rank

provider = LocalCatalogProvider(load_catalog(sample_catalog_path()))

# References can be plain ids or product URLs; /dp/<id> segments are parsed.
reference = provider.find_reference("https://shop.example.com/dp/EA-01")
print(f"reference: {reference.title}  (price {reference.price})")

candidates = provider.related_products(reference, limit=30)
print(f"candidates in the same category: {len(candidates)}")

weights, report = derive_weights(load_matrix(sample_matrix_path()))
print(f"weights: " + "  ".join(f"{k}={v:.3f}" for k, v in weights.as_dict().items()))
print(f"consistency ratio: {report.cr:.4f} (acceptable: {report.acceptable})\n")

results = rank(reference, candidates, weights, ScoringConfig(top_n=5))
for item in results:
    print(f"#{item.rank}  {item.product.title}  -> {item.comprehensive:.2f}")
    print(f"    attribute vector: v_t={item.attribute.v_t:.3f} v1={item.attribute.v1:.3f}")
    for part in item.explanation:
        bar = "#" * round(part.score / 5)
        print(f"    {part.criterion:<4} score {part.score:6.2f} x weight {part.weight:.3f}"
              f" = {part.weighted:6.2f}  |{bar}")
    total = sum(part.weighted for part in item.explanation)
    print(f"    contributions sum back to the comprehensive score: {total:.2f}\n")
