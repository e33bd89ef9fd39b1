"""Priority weights and consistency diagnostics for pairwise comparison matrices.

A judgment matrix states, for every pair of criteria, how strongly one
dominates the other on the 1-9 scale. The dominant eigenvector of a valid
matrix is the priority (weight) vector; the dominant eigenvalue measures how
self-consistent the judgments were.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

#: Judgment values must stay on the 1-9 scale (and its reciprocals).
SCALE_MIN = 1.0 / 9.0
SCALE_MAX = 9.0

#: A consistency ratio at or below this is conventionally acceptable.
CR_THRESHOLD = 0.1

#: Expected consistency index of random reciprocal matrices, by order.
RANDOM_INDEX = {
    1: 0.0, 2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12,
    6: 1.24, 7: 1.32, 8: 1.41, 9: 1.45, 10: 1.49,
}

_RECIPROCITY_RTOL = 1e-9
_SCALE_RTOL = 1e-9


class AhpError(Exception):
    """Base class for judgment-matrix failures."""


class MatrixStructureError(AhpError):
    """Input is not a square matrix of order >= 2 with distinct labels."""


class MatrixDomainError(AhpError):
    """A judgment entry is non-positive or non-finite."""


class InvalidMatrixError(AhpError):
    """The matrix breaks reciprocal-matrix invariants; carries the violations."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        summary = "; ".join(v.message for v in self.violations)
        super().__init__(f"invalid pairwise matrix: {summary}")


class UnsupportedOrderError(AhpError):
    """No random-index value is tabulated for this matrix order."""


class ConvergenceError(AhpError):
    """Power iteration did not converge; carries the last iterate."""

    def __init__(self, message: str, last_iterate: np.ndarray, iterations: int):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.iterations = iterations


@dataclass(frozen=True)
class Violation:
    """One broken matrix invariant, located at a cell."""

    row: int
    col: int
    kind: str  # "diagonal" | "reciprocity" | "scale"
    message: str


@dataclass(frozen=True)
class PairwiseMatrix:
    """Square positive judgment matrix with one label per criterion.

    Construction rejects structurally broken input (non-square, order < 2,
    duplicate labels) and non-positive entries. Softer invariants such as
    reciprocity are reported by :func:`validate_matrix` instead of raised, so
    callers can surface every offending cell at once.
    """

    entries: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise MatrixStructureError(f"matrix must be square, got shape {entries.shape}")
        n = entries.shape[0]
        if n < 2:
            raise MatrixStructureError(f"matrix order must be >= 2, got {n}")
        if not np.isfinite(entries).all():
            raise MatrixDomainError("matrix entries must be finite")
        if (entries <= 0).any():
            i, j = map(int, np.argwhere(entries <= 0)[0])
            raise MatrixDomainError(f"entry ({i},{j}) = {entries[i, j]} is not positive")
        labels = tuple(str(label) for label in self.labels)
        if len(labels) != n:
            raise MatrixStructureError(f"expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise MatrixStructureError("criteria labels must be distinct")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "labels", labels)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[float | int | str]],
        labels: Sequence[str] | None = None,
    ) -> "PairwiseMatrix":
        """Build a matrix from nested rows; entries may be "a/b" strings."""
        parsed = [[parse_judgment(value) for value in row] for row in rows]
        lengths = {len(row) for row in parsed}
        if len(lengths) != 1 or lengths != {len(parsed)}:
            raise MatrixStructureError("rows must form a square matrix")
        if labels is None:
            labels = tuple(f"C{i + 1}" for i in range(len(parsed)))
        return cls(np.array(parsed, dtype=float), tuple(labels))


@dataclass(frozen=True)
class WeightVector:
    """Non-negative criterion priorities summing to one."""

    weights: tuple[float, ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        weights = tuple(float(w) for w in self.weights)
        labels = tuple(str(label) for label in self.labels)
        if len(weights) != len(labels):
            raise ValueError("weights and labels must have equal length")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        if abs(sum(weights) - 1.0) > 1e-9:
            raise ValueError(f"weights must sum to 1, got {sum(weights)!r}")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def normalized(cls, raw: Sequence[float], labels: Sequence[str]) -> "WeightVector":
        """Scale an arbitrary positive vector so it sums to one."""
        total = float(sum(raw))
        if total <= 0:
            raise ValueError("cannot normalize a vector with non-positive sum")
        return cls(tuple(float(w) / total for w in raw), tuple(labels))

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.labels, self.weights))

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, label: str) -> float:
        return self.as_dict()[label]


@dataclass(frozen=True)
class ConsistencyReport:
    """Dominant-eigenvalue diagnostics for one judgment matrix."""

    lambda_max: float
    ci: float
    ri: float
    cr: float
    acceptable: bool

    def as_dict(self) -> dict[str, float | bool]:
        return {
            "lambda_max": self.lambda_max,
            "ci": self.ci,
            "ri": self.ri,
            "cr": self.cr,
            "acceptable": self.acceptable,
        }


def validate_matrix(matrix: PairwiseMatrix) -> list[Violation]:
    """Check reciprocal-matrix invariants, returning every broken cell.

    An empty list means the matrix is valid. Structural problems (non-square
    input, non-positive entries) are raised at construction time instead.
    """
    entries = matrix.entries
    n = matrix.order
    violations: list[Violation] = []
    for i in range(n):
        if entries[i, i] != 1.0:
            violations.append(
                Violation(i, i, "diagonal",
                          f"diagonal entry ({i},{i}) = {entries[i, i]:g} must equal 1")
            )
    for i in range(n):
        for j in range(i + 1, n):
            product = float(entries[i, j] * entries[j, i])
            if abs(product - 1.0) > _RECIPROCITY_RTOL:
                violations.append(
                    Violation(
                        j, i, "reciprocity",
                        f"reciprocity broken: entries ({i},{j}) and ({j},{i}) "
                        f"multiply to {product:g}, expected 1",
                    )
                )
    lo = SCALE_MIN * (1.0 - _SCALE_RTOL)
    hi = SCALE_MAX * (1.0 + _SCALE_RTOL)
    for i in range(n):
        for j in range(n):
            value = entries[i, j]
            if not (lo <= value <= hi):
                violations.append(
                    Violation(i, j, "scale",
                              f"entry ({i},{j}) = {value:g} is outside the 1/9..9 scale")
                )
    return violations


def _require_valid(matrix: PairwiseMatrix) -> None:
    violations = validate_matrix(matrix)
    if violations:
        raise InvalidMatrixError(violations)


def principal_eigen(
    matrix: PairwiseMatrix,
    tol: float = 1e-10,
    max_iter: int = 1000,
    start: Sequence[float] | None = None,
) -> tuple[float, WeightVector]:
    """Dominant eigenpair of a valid judgment matrix via power iteration.

    Iterates x <- Ax with sum-normalization until successive iterates differ
    by less than ``tol`` in the max norm. For positive matrices the iteration
    converges to the (unique, positive) dominant eigenvector, returned here
    normalized to sum one, together with the eigenvalue estimate.

    Args:
        matrix: validated pairwise matrix.
        tol: max-norm convergence threshold for successive iterates.
        max_iter: iteration budget; exceeding it raises ConvergenceError.
        start: optional positive start vector; defaults to uniform 1/n.

    Raises:
        InvalidMatrixError: the matrix breaks reciprocal-matrix invariants.
        ConvergenceError: no convergence within ``max_iter`` iterations.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    _require_valid(matrix)

    a = matrix.entries
    n = matrix.order
    if start is None:
        x = np.full(n, 1.0 / n)
    else:
        x = np.array(start, dtype=float)
        if x.shape != (n,) or (x <= 0).any():
            raise ValueError("start vector must be positive with one entry per criterion")
        x = x / x.sum()

    lam = float("nan")
    for iteration in range(1, max_iter + 1):
        y = a @ x
        total = float(y.sum())
        # x sums to one, so sum(Ax) estimates the dominant eigenvalue.
        lam = total
        x_next = y / total
        if float(np.max(np.abs(x_next - x))) < tol:
            weights = WeightVector(tuple(float(w) for w in x_next), matrix.labels)
            return lam, weights
        x = x_next
    raise ConvergenceError(
        f"power iteration did not converge within {max_iter} iterations (tol={tol})",
        last_iterate=x,
        iterations=max_iter,
    )


def consistency(matrix: PairwiseMatrix, lambda_max: float) -> ConsistencyReport:
    """Consistency index and ratio for a matrix and its dominant eigenvalue.

    Orders 1 and 2 are consistent by construction (ci = cr = 0); orders above
    10 have no tabulated random index and are rejected.
    """
    n = matrix.order
    if n not in RANDOM_INDEX:
        raise UnsupportedOrderError(f"no random consistency index for order {n} (supported: 2..10)")
    ri = RANDOM_INDEX[n]
    if n <= 2:
        ci = 0.0
        cr = 0.0
    else:
        ci = (lambda_max - n) / (n - 1)
        cr = ci / ri
    return ConsistencyReport(
        lambda_max=float(lambda_max),
        ci=float(ci),
        ri=float(ri),
        cr=float(cr),
        acceptable=cr <= CR_THRESHOLD,
    )


def derive_weights(
    matrix: PairwiseMatrix,
    tol: float = 1e-10,
    max_iter: int = 1000,
) -> tuple[WeightVector, ConsistencyReport]:
    """Weights plus consistency diagnostics in one call.

    Weights are returned even when the consistency ratio exceeds the 0.1
    threshold; ``report.acceptable`` is False then, signalling that the
    judgments should be revised.
    """
    lambda_max, weights = principal_eigen(matrix, tol=tol, max_iter=max_iter)
    return weights, consistency(matrix, lambda_max)


def is_consistent(matrix: PairwiseMatrix, tol: float = 1e-9) -> bool:
    """True when every judgment triple is transitively exact within ``tol``."""
    entries = matrix.entries
    n = matrix.order
    for i, j, k in itertools.product(range(n), repeat=3):
        if abs(entries[i, k] - entries[i, j] * entries[j, k]) > tol * entries[i, k]:
            return False
    return True


def parse_judgment(value: float | int | str) -> float:
    """Parse one judgment entry; strings like "1/3" are exact rationals."""
    if isinstance(value, bool):
        raise MatrixDomainError(f"judgment entry {value!r} is not a number")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise MatrixDomainError(f"cannot parse judgment entry {value!r}") from exc
    raise MatrixDomainError(f"judgment entry {value!r} is not a number")


def matrix_from_payload(payload: dict) -> PairwiseMatrix:
    """Build a matrix from the JSON object form {"criteria": [...], "matrix": [[...]]}."""
    if not isinstance(payload, dict):
        raise MatrixStructureError("matrix payload must be a JSON object")
    try:
        criteria = payload["criteria"]
        rows = payload["matrix"]
    except KeyError as exc:
        raise MatrixStructureError(f"matrix payload missing key {exc.args[0]!r}") from exc
    if not isinstance(criteria, list) or not isinstance(rows, list):
        raise MatrixStructureError("'criteria' and 'matrix' must be arrays")
    return PairwiseMatrix.from_rows(rows, labels=[str(c) for c in criteria])


def load_matrix(path: str | Path) -> PairwiseMatrix:
    """Read a matrix file (JSON with "criteria" and "matrix" keys)."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixStructureError(f"{path}: {exc}") from exc
    return matrix_from_payload(payload)


def weights_payload(weights: WeightVector, report: ConsistencyReport) -> dict:
    """Wire form of a weighting result: weights by label plus diagnostics."""
    return {
        "weights": weights.as_dict(),
        "lambda_max": report.lambda_max,
        "ci": report.ci,
        "cr": report.cr,
        "acceptable": report.acceptable,
    }
