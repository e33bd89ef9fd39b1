import json

import pytest

from mcdm.catalog import (
    AmbiguousKeyError,
    CatalogFormatError,
    EmptyCategoryError,
    LocalCatalogProvider,
    ProductNotFoundError,
    ProviderConfig,
    ProviderConfigError,
    ProviderTransportError,
    RemoteProvider,
    catalog_payload,
    extract_reference_id,
    load_catalog,
    load_provider_config,
    parse_catalog,
    provider_from_config,
    save_catalog,
)
from stub_provider import REMOTE_FIELD_MAP, REMOTE_VIDEO_FIELD_MAP, StubCatalogServer


def make_catalog_payload(products):
    return {"version": "1", "products": products}


def record(pid, category="stuff", **kwargs):
    base = {
        "id": pid,
        "title": f"thing {pid}",
        "price": 10.0,
        "rating": 4.0,
        "review_count": 5,
        "category": category,
        "video": None,
        "source_url": None,
    }
    base.update(kwargs)
    return base


class TestLoadCatalog:
    def test_fixture_catalog_loads(self, catalog):
        assert len(catalog.products) == 30
        assert set(catalog.categories.values()) == {"apparel", "appliances", "furniture", "food"}

    def test_empty_catalog_is_valid(self):
        parsed = parse_catalog(make_catalog_payload([]))
        assert parsed.products == ()

    def test_duplicate_id_names_the_id(self):
        payload = make_catalog_payload([record("B001"), record("B001")])
        with pytest.raises(CatalogFormatError, match="B001"):
            parse_catalog(payload)

    def test_unsupported_version(self):
        with pytest.raises(CatalogFormatError, match="version"):
            parse_catalog({"version": "2", "products": []})

    def test_missing_field_reports_context(self):
        broken = record("B001")
        del broken["price"]
        with pytest.raises(CatalogFormatError, match=r"products\[0\].price"):
            parse_catalog(make_catalog_payload([broken]))

    def test_malformed_json_reports_line(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"version": "1",\n "products": [,]}')
        with pytest.raises(CatalogFormatError, match="line 2"):
            load_catalog(path)

    def test_negative_price_rejected_with_context(self):
        with pytest.raises(CatalogFormatError, match=r"products\[0\]"):
            parse_catalog(make_catalog_payload([record("B001", price=-5.0)]))

    def test_round_trip(self, catalog, tmp_path):
        path = tmp_path / "copy.json"
        save_catalog(catalog, path)
        reloaded = load_catalog(path)
        assert reloaded.products == catalog.products
        assert dict(reloaded.categories) == dict(catalog.categories)
        assert catalog_payload(reloaded) == catalog_payload(catalog)


class TestReferenceKeys:
    def test_plain_id_passes_through(self):
        assert extract_reference_id("B001") == "B001"

    def test_dp_segment(self):
        assert extract_reference_id("https://shop.example.com/dp/B001") == "B001"
        assert extract_reference_id("https://shop.example.com/dp/B001?tag=x") == "B001"
        assert extract_reference_id("https://shop.example.com/item/name/dp/B001/extra") == "B001"

    def test_trailing_segment(self):
        assert extract_reference_id("https://shop.example.com/products/B001") == "B001"

    def test_empty_key(self):
        with pytest.raises(AmbiguousKeyError):
            extract_reference_id("   ")

    def test_url_without_path(self):
        with pytest.raises(AmbiguousKeyError):
            extract_reference_id("https://shop.example.com/")

    def test_dp_without_id(self):
        with pytest.raises(AmbiguousKeyError):
            extract_reference_id("https://shop.example.com/dp/")


class TestLocalProvider:
    def test_find_by_id(self, provider):
        assert provider.find_reference("EA-01").title == "Google Pixel 3"

    def test_find_by_url(self, provider):
        product = provider.find_reference("https://shop.example.com/dp/EA-02")
        assert product.id == "EA-02"

    def test_unknown_id(self, provider):
        with pytest.raises(ProductNotFoundError):
            provider.find_reference("ZZ-99")

    def test_related_excludes_reference_in_id_order(self, provider):
        reference = provider.find_reference("EA-01")
        related = provider.related_products(reference, limit=30)
        ids = [p.id for p in related]
        assert "EA-01" not in ids
        assert ids == sorted(ids)
        assert len(ids) == 8

    def test_limit_truncates_stable_prefix(self, provider):
        reference = provider.find_reference("EA-01")
        full = [p.id for p in provider.related_products(reference, limit=30)]
        assert [p.id for p in provider.related_products(reference, limit=5)] == full[:5]

    def test_large_category_yields_all_but_reference(self):
        products = [record(f"P{i:02d}", category="bulk") for i in range(25)]
        provider = LocalCatalogProvider(parse_catalog(make_catalog_payload(products)))
        reference = provider.find_reference("P00")
        assert len(provider.related_products(reference, limit=30)) == 24

    def test_solo_category_is_empty_error(self):
        products = [record("A1", category="solo"), record("B1", category="other")]
        provider = LocalCatalogProvider(parse_catalog(make_catalog_payload(products)))
        with pytest.raises(EmptyCategoryError):
            provider.related_products(provider.find_reference("A1"), limit=30)

    def test_limit_validation(self, provider):
        reference = provider.find_reference("EA-01")
        for bad in (0, 31):
            with pytest.raises(ValueError):
                provider.related_products(reference, limit=bad)

    def test_video_stats_embedded(self, provider):
        product = provider.find_reference("EA-02")
        stats = provider.video_stats(product)
        assert stats is not None
        assert stats.play_count == 63850

    def test_video_stats_absent(self, provider):
        product = provider.find_reference("AP-02")
        assert provider.video_stats(product) is None

    def test_related_products_deterministic(self, provider):
        reference = provider.find_reference("FO-01")
        first = [p.id for p in provider.related_products(reference)]
        second = [p.id for p in provider.related_products(reference)]
        assert first == second


class TestRemoteProvider:
    def test_find_reference_maps_fields(self, remote_config, catalog):
        remote = RemoteProvider(remote_config)
        product = remote.find_reference("EA-01")
        local = catalog.get("EA-01")
        assert product.id == local.id
        assert product.title == local.title
        assert product.price == local.price
        assert product.rating == local.rating
        assert product.review_count == local.review_count
        assert product.video is None  # videos come from the videos interface

    def test_find_reference_by_url(self, remote_config):
        remote = RemoteProvider(remote_config)
        assert remote.find_reference("https://shop.example.com/dp/FO-02").id == "FO-02"

    def test_unknown_product(self, remote_config):
        remote = RemoteProvider(remote_config)
        with pytest.raises(ProductNotFoundError):
            remote.find_reference("ZZ-99")

    def test_related_products(self, remote_config, provider):
        remote = RemoteProvider(remote_config)
        reference = remote.find_reference("AP-01")
        ids = [p.id for p in remote.related_products(reference, limit=30)]
        local_ids = [p.id for p in provider.related_products(provider.find_reference("AP-01"))]
        assert ids == local_ids

    def test_video_stats_picks_most_played(self, catalog_records):
        videos = {
            "AP-01": [
                {"vid": "v1", "comments": 10, "plays": 120, "watch_url": "u1"},
                {"vid": "v2", "comments": 20, "plays": 990, "watch_url": "u2"},
                {"vid": "v3", "comments": 30, "plays": 455, "watch_url": "u3"},
            ]
        }
        server = StubCatalogServer(catalog_records, videos=videos)
        base = server.start()
        try:
            remote = RemoteProvider(ProviderConfig(
                kind="remote", endpoint=base,
                field_map=REMOTE_FIELD_MAP, video_field_map=REMOTE_VIDEO_FIELD_MAP,
                cache_ttl=0.0,
            ))
            stats = remote.video_stats(remote.find_reference("AP-01"))
            assert stats.play_count == 990
            assert stats.url == "u2"
        finally:
            server.stop()

    def test_video_tie_breaks_on_earliest_id(self, catalog_records):
        videos = {
            "AP-01": [
                {"vid": "v9", "comments": 1, "plays": 500, "watch_url": "late"},
                {"vid": "v1", "comments": 2, "plays": 500, "watch_url": "early"},
            ]
        }
        server = StubCatalogServer(catalog_records, videos=videos)
        base = server.start()
        try:
            remote = RemoteProvider(ProviderConfig(
                kind="remote", endpoint=base,
                field_map=REMOTE_FIELD_MAP, video_field_map=REMOTE_VIDEO_FIELD_MAP,
                cache_ttl=0.0,
            ))
            stats = remote.video_stats(remote.find_reference("AP-01"))
            assert stats.url == "early"
        finally:
            server.stop()

    def test_video_absence_is_none(self, remote_config):
        remote = RemoteProvider(remote_config)
        product = remote.find_reference("AP-02")  # no video in the fixture
        assert remote.video_stats(product) is None

    def test_transport_failure_raises(self):
        remote = RemoteProvider(ProviderConfig(
            kind="remote", endpoint="http://127.0.0.1:9",  # discard port: nothing listens
            field_map=REMOTE_FIELD_MAP, timeout=0.2,
        ))
        with pytest.raises(ProviderTransportError):
            remote.find_reference("EA-01")

    def test_cache_avoids_repeat_requests(self, stub_server):
        remote = RemoteProvider(ProviderConfig(
            kind="remote", endpoint=stub_server.base_url,
            field_map=REMOTE_FIELD_MAP, video_field_map=REMOTE_VIDEO_FIELD_MAP,
            cache_ttl=600.0,
        ))
        before = stub_server.request_count
        first = remote.find_reference("FU-01")
        second = remote.find_reference("FU-01")
        assert first == second
        assert stub_server.request_count == before + 1

    def test_header_templates_expand_from_environment(self, catalog_records, monkeypatch):
        server = StubCatalogServer(catalog_records)
        base = server.start()
        try:
            config = ProviderConfig(
                kind="remote", endpoint=base, field_map=REMOTE_FIELD_MAP,
                headers={"Authorization": "Bearer ${MCDM_TEST_TOKEN}"}, cache_ttl=0.0,
            )
            remote = RemoteProvider(config)
            monkeypatch.setenv("MCDM_TEST_TOKEN", "sekrit")
            remote.find_reference("AP-01")
            assert server.seen_headers[-1].get("Authorization") == "Bearer sekrit"
            monkeypatch.delenv("MCDM_TEST_TOKEN")
            with pytest.raises(ProviderConfigError):
                remote.find_reference("AP-03")
        finally:
            server.stop()

    def test_bad_field_map_reports_missing_fields(self, stub_server):
        remote = RemoteProvider(ProviderConfig(
            kind="remote", endpoint=stub_server.base_url,
            field_map={"asin": "id"}, cache_ttl=0.0,
        ))
        with pytest.raises(CatalogFormatError, match="field_map"):
            remote.find_reference("AP-01")


class TestProviderConfig:
    def test_local_requires_path(self):
        with pytest.raises(ProviderConfigError):
            ProviderConfig(kind="local")

    def test_remote_requires_endpoint_and_map(self):
        with pytest.raises(ProviderConfigError):
            ProviderConfig(kind="remote", field_map=REMOTE_FIELD_MAP)
        with pytest.raises(ProviderConfigError):
            ProviderConfig(kind="remote", endpoint="http://127.0.0.1:1")

    def test_unknown_kind(self):
        with pytest.raises(ProviderConfigError):
            ProviderConfig(kind="scraper", path="x")

    def test_json_config_file(self, tmp_path, catalog_path):
        path = tmp_path / "provider.json"
        path.write_text(json.dumps({"kind": "local", "path": catalog_path}))
        config = load_provider_config(path)
        assert config.kind == "local"
        provider = provider_from_config(config)
        assert provider.find_reference("FO-01").id == "FO-01"

    def test_toml_config_file(self, tmp_path):
        path = tmp_path / "provider.toml"
        path.write_text(
            'kind = "remote"\n'
            'endpoint = "http://127.0.0.1:1"\n'
            'timeout = 2.5\n'
            'cache_ttl = 60.0\n'
            '[field_map]\n'
            'asin = "id"\n'
            'name = "title"\n'
            'price_usd = "price"\n'
            'stars = "rating"\n'
            'reviews = "review_count"\n'
            '[headers]\n'
            'X-Api-Key = "${MCDM_API_KEY}"\n'
        )
        config = load_provider_config(path)
        assert config.kind == "remote"
        assert config.timeout == 2.5
        assert config.field_map["asin"] == "id"
        assert config.headers["X-Api-Key"] == "${MCDM_API_KEY}"  # expanded at request time

    def test_relative_local_path_resolves_against_config(self, tmp_path, catalog_path):
        import shutil

        shutil.copy(catalog_path, tmp_path / "cat.json")
        path = tmp_path / "provider.json"
        path.write_text(json.dumps({"kind": "local", "path": "cat.json"}))
        config = load_provider_config(path)
        assert provider_from_config(config).find_reference("AP-01").id == "AP-01"

    def test_unknown_keys_rejected(self, tmp_path):
        path = tmp_path / "provider.json"
        path.write_text(json.dumps({"kind": "local", "path": "x", "scrape": True}))
        with pytest.raises(ProviderConfigError, match="scrape"):
            load_provider_config(path)
