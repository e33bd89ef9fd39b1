"""Bundled sample data: a 30-product, 4-category catalog and a judgment matrix."""

from pathlib import Path

_HERE = Path(__file__).parent


def sample_catalog_path() -> str:
    """The bundled 30-product catalog (apparel, appliances, furniture, food)."""
    return str(_HERE / "catalog.json")


def sample_matrix_path() -> str:
    """A five-criterion pairwise comparison matrix with an acceptable CR."""
    return str(_HERE / "sample_matrix.json")


def sample_references_path() -> str:
    """One reference product per catalog category, for method comparisons."""
    return str(_HERE / "references.json")
