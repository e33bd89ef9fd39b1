import json
from pathlib import Path

import pytest

from mcdm.ahp import PairwiseMatrix, load_matrix
from mcdm.catalog import CatalogFile, LocalCatalogProvider, ProviderConfig, load_catalog
from mcdm.data import sample_catalog_path, sample_matrix_path, sample_references_path
from stub_provider import REMOTE_FIELD_MAP, REMOTE_VIDEO_FIELD_MAP, StubCatalogServer

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def catalog_path() -> str:
    return sample_catalog_path()


@pytest.fixture(scope="session")
def matrix_path() -> str:
    return sample_matrix_path()


@pytest.fixture(scope="session")
def references_path() -> str:
    return sample_references_path()


@pytest.fixture(scope="session")
def catalog(catalog_path) -> CatalogFile:
    return load_catalog(catalog_path)


@pytest.fixture(scope="session")
def sample_matrix(matrix_path) -> PairwiseMatrix:
    return load_matrix(matrix_path)


@pytest.fixture()
def provider(catalog) -> LocalCatalogProvider:
    return LocalCatalogProvider(catalog)


@pytest.fixture(scope="session")
def catalog_records(catalog_path) -> list[dict]:
    return json.loads(Path(catalog_path).read_text())["products"]


@pytest.fixture(scope="session")
def tfidf_golden() -> dict:
    return json.loads((FIXTURES / "tfidf_golden.json").read_text())


@pytest.fixture(scope="session")
def rank_golden() -> dict:
    return json.loads((FIXTURES / "rank_golden.json").read_text())


@pytest.fixture(scope="session")
def stub_server(catalog_records):
    server = StubCatalogServer(catalog_records)
    base_url = server.start()
    server.base_url = base_url
    yield server
    server.stop()


@pytest.fixture()
def remote_config(stub_server) -> ProviderConfig:
    return ProviderConfig(
        kind="remote",
        endpoint=stub_server.base_url,
        field_map=REMOTE_FIELD_MAP,
        video_field_map=REMOTE_VIDEO_FIELD_MAP,
        timeout=5.0,
        cache_ttl=0.0,
    )
