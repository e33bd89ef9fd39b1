#!/usr/bin/env python3
# The HTTP session flow the web UI drives, exercised in-process:
# create session -> submit pairwise judgments -> set reference -> rank.
# To run the real server instead: mcdm-service --catalog <file> --port 8000

import json

from fastapi.testclient import TestClient

from mcdm.catalog import LocalCatalogProvider, load_catalog
from mcdm.data import sample_catalog_path, sample_matrix_path
from mcdm.service import create_app

app = create_app(LocalCatalogProvider(load_catalog(sample_catalog_path())))
client = TestClient(app)

session = client.post("/v1/sessions").json()
print("created session:", session["id"])

judgments = json.load(open(sample_matrix_path()))
response = client.put(f"/v1/sessions/{session['id']}/comparisons", json=judgments).json()
print(f"weights: " + "  ".join(f"{k}={v:.3f}" for k, v in response["weights"].items()))
print(f"consistency ratio {response['cr']:.4f} -> acceptable: {response['acceptable']}")

reference = client.post(
    f"/v1/sessions/{session['id']}/reference",
    json={"key": "https://shop.example.com/dp/FO-01"},
).json()
print("reference:", reference["title"])

ranking = client.post(
    f"/v1/sessions/{session['id']}/rank", json={"method": "ahp", "top_n": 3}
).json()
print("\ntop results:")
for row in ranking["results"]:
    bars = "  ".join(f"{k}={v:5.1f}" for k, v in row["display"]["scores"].items())
    print(f"  #{row['rank']} {row['title']:<36} {row['display']['comprehensive']:6.2f}  [{bars}]")

# switching method re-ranks without re-eliciting the matrix
what_if = client.post(
    f"/v1/sessions/{session['id']}/rank", json={"method": "similarity_only", "top_n": 3}
).json()
print("\nsame session, similarity only:")
for row in what_if["results"]:
    print(f"  #{row['rank']} {row['title']}")
