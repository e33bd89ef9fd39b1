#!/usr/bin/env python3
# Deriving criterion weights from pairwise judgments, with consistency checking.
#
# A judgment matrix answers, for each pair of criteria, "how many times more
# important is the row criterion than the column one?" on the 1..9 scale.
# The dominant eigenvector of that matrix is the priority vector.

from mcdm.ahp import PairwiseMatrix, derive_weights, validate_matrix

# Five product criteria: similarity, review count, rating, video reviews,
# video plays. Judgments here say review count matters most, rating least.
matrix = PairwiseMatrix.from_rows(
    [
        [1, "1/3", 7, 3, 5],
        [3, 1, 9, 5, 7],
        ["1/7", "1/9", 1, "1/5", "1/3"],
        ["1/3", "1/5", 5, 1, 3],
        ["1/5", "1/7", 3, "1/3", 1],
    ],
    labels=["SI", "NR", "RA", "NVR", "NVP"],
)

print("violations:", validate_matrix(matrix) or "none")

weights, report = derive_weights(matrix)
print("\npriorities:")
for label, weight in zip(weights.labels, weights.weights):
    print(f"  {label:<4} {weight:.4f}  {'#' * round(weight * 40)}")

print(f"\nlambda_max = {report.lambda_max:.4f}  (order {matrix.order})")
print(f"CI = {report.ci:.4f}   CR = {report.cr:.4f}   acceptable: {report.acceptable}")

# A cyclic set of judgments (a > b > c > a) is the classic inconsistency:
# the weights still come out (uniform, here), but CR flags them as unusable.
cyclic = PairwiseMatrix.from_rows(
    [[1, 9, "1/9"], ["1/9", 1, 9], [9, "1/9", 1]], labels=["a", "b", "c"]
)
_, bad_report = derive_weights(cyclic)
print(f"\ncyclic judgments: CR = {bad_report.cr:.2f} -> acceptable: {bad_report.acceptable}")
print("a CR above 0.1 means: revise the judgments and try again")
