#!/usr/bin/env python3
"""Regenerate the golden fixtures under tests/fixtures/.

Every expected value is produced by the independent reference code in
tests/oracles.py working on the raw JSON data files, never by the library
under test. Run from the repository root:

    python tools/make_goldens.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402

DATA = ROOT / "src" / "mcdm" / "data"
FIXTURES = ROOT / "tests" / "fixtures"

METHODS = ("similarity_only", "equal_weights", "ahp")
CRITERIA = ("SI", "NR", "RA", "NVR", "NVP")


def load_catalog_raw() -> list[dict]:
    payload = json.loads((DATA / "catalog.json").read_text())
    return payload["products"]


def as_oracle_record(record: dict) -> dict:
    video = record.get("video") or {}
    return {
        "id": record["id"],
        "title": record["title"],
        "price": record["price"],
        "rating": record["rating"],
        "review_count": record["review_count"],
        "video_reviews": video.get("review_count", 0),
        "video_plays": video.get("play_count", 0),
    }


def make_tfidf_golden(products: list[dict]) -> dict:
    titles = [p["title"] for p in products]
    pairs = [
        ("Google Pixel 3", "Google Pixel 4a (128GB)"),
        ("Classic Cotton Crew Neck T-Shirt", "Classic Cotton V Neck T-Shirt"),
        ("Organic Green Tea 100 Bags", "Dark Roast Whole Bean Coffee 2lb"),
    ]
    return {
        "corpus_titles": titles,
        "pairs": [
            {"a": a, "b": b, "v_t": oracles.title_sim(a, b, titles)}
            for a, b in pairs
        ],
    }


def method_weight_map(method: str, matrix_rows: list[list[float]]) -> dict[str, float]:
    if method == "similarity_only":
        return {"SI": 1.0, "NR": 0.0, "RA": 0.0, "NVR": 0.0, "NVP": 0.0}
    if method == "equal_weights":
        return dict.fromkeys(CRITERIA, 0.2)
    return dict(zip(CRITERIA, oracles.eig_weights(matrix_rows)))


def make_rank_golden(products: list[dict]) -> dict:
    matrix_payload = json.loads((DATA / "sample_matrix.json").read_text())
    matrix_rows = [[oracles.parse_ratio(v) for v in row] for row in matrix_payload["matrix"]]

    by_category: dict[str, list[dict]] = {}
    for record in products:
        by_category.setdefault(record["category"], []).append(record)

    references = json.loads((DATA / "references.json").read_text())["references"]
    orderings: dict[str, dict[str, list[str]]] = {}
    tau: dict[str, dict[str, float]] = {}
    for reference_id in references:
        reference = next(p for p in products if p["id"] == reference_id)
        candidates = sorted(
            (p for p in by_category[reference["category"]] if p["id"] != reference_id),
            key=lambda p: p["id"],
        )
        per_method: dict[str, list[str]] = {}
        for method in METHODS:
            weights = method_weight_map(method, matrix_rows)
            per_method[method] = oracles.rank_products(
                as_oracle_record(reference),
                [as_oracle_record(c) for c in candidates],
                weights,
            )
        orderings[reference_id] = per_method
        tau[reference_id] = {
            f"{first}_vs_{second}": oracles.inversion_tau_distance(
                per_method[first], per_method[second]
            )
            for i, first in enumerate(METHODS)
            for second in METHODS[i + 1:]
        }

    all_prices = [p["price"] for p in products]
    return {
        "price_range_5_95_all_products": oracles.percentile_width(all_prices, 5.0, 95.0),
        "eig_weights": dict(zip(CRITERIA, oracles.eig_weights(matrix_rows))),
        "eig_lambda_max": oracles.dominant_eigenvalue(matrix_rows),
        "orderings": orderings,
        "tau": tau,
    }


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    products = load_catalog_raw()
    (FIXTURES / "tfidf_golden.json").write_text(
        json.dumps(make_tfidf_golden(products), indent=2, sort_keys=True) + "\n"
    )
    (FIXTURES / "rank_golden.json").write_text(
        json.dumps(make_rank_golden(products), indent=2, sort_keys=True) + "\n"
    )
    print("wrote", FIXTURES / "tfidf_golden.json")
    print("wrote", FIXTURES / "rank_golden.json")


if __name__ == "__main__":
    main()
