#!/usr/bin/env python3
# The three ranking generators side by side: similarity only, equal weights,
# and pairwise-comparison weights. Kendall tau distance quantifies how much
# the orderings disagree (0 = identical order, 1 = fully reversed).

from mcdm.ahp import load_matrix
from mcdm.catalog import LocalCatalogProvider, load_catalog
from mcdm.cli import kendall_tau_distance
from mcdm.data import sample_catalog_path, sample_matrix_path
from mcdm.scoring import METHODS, ScoringConfig, rank_by_method

provider = LocalCatalogProvider(load_catalog(sample_catalog_path()))
matrix = load_matrix(sample_matrix_path())
config = ScoringConfig(top_n=30)

for reference_id in ("AP-01", "EA-01", "FU-01", "FO-01"):
    reference = provider.find_reference(reference_id)
    candidates = provider.related_products(reference, limit=30)
    print(f"== {provider.category_of(reference_id)}: {reference.title}")

    orderings = {}
    for method in METHODS:
        results = rank_by_method(reference, candidates, method,
                                 matrix if method == "ahp" else None, config)
        orderings[method] = [item.product.id for item in results]
        print(f"  {method:<16} {' '.join(orderings[method])}")

    for i, first in enumerate(METHODS):
        for second in METHODS[i + 1:]:
            stats = kendall_tau_distance(orderings[first], orderings[second])
            print(f"  tau({first}, {second}) = {stats['distance']:.3f}")
    print()

print("the same comparison is scriptable as:")
print("  mcdm experiment --catalog ... --references ... --matrix ... --json")
