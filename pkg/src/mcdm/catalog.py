"""Product catalogs: versioned JSON files, local lookup, generic remote adapters.

The local catalog file is the desk-scale source of truth; "related" locally
means "same category". The remote adapter speaks a small JSON protocol
(details / search / videos) and maps response fields onto Product fields via
a configurable table, so any conforming HTTP backend can stand in for a paid
product API.
"""

from __future__ import annotations

import json
import os
import re
import threading
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping
from urllib.parse import urlsplit

import httpx

from .scoring import Product, VideoStats, product_payload

CATALOG_VERSION = "1"

#: Default remote-response field names; override via ProviderConfig.field_map.
DEFAULT_FIELD_MAP = {
    "id": "id",
    "title": "title",
    "price": "price",
    "rating": "rating",
    "review_count": "review_count",
    "source_url": "source_url",
}
DEFAULT_VIDEO_FIELD_MAP = {
    "review_count": "review_count",
    "play_count": "play_count",
    "url": "url",
    "id": "id",
}

_REQUIRED_PRODUCT_FIELDS = ("id", "title", "price", "rating", "review_count")
_ENV_REF = re.compile(r"\$\{(\w+)\}")


class CatalogError(Exception):
    """Base class for catalog and provider failures."""


class CatalogFormatError(CatalogError):
    """A catalog file or remote response does not match the schema."""


class ProductNotFoundError(CatalogError):
    """No product matches the given key."""


class AmbiguousKeyError(CatalogError):
    """A reference key or URL cannot be resolved to a single product id."""


class EmptyCategoryError(CatalogError):
    """The reference's category holds no other products."""


class ProviderTransportError(CatalogError):
    """The remote provider failed at the transport or protocol level."""


class ProviderConfigError(CatalogError):
    """A provider configuration is incomplete or unreadable."""


@dataclass(frozen=True)
class CatalogFile:
    """A parsed catalog: products plus the id -> category mapping."""

    version: str
    products: tuple[Product, ...]
    categories: Mapping[str, str]

    def get(self, product_id: str) -> Product | None:
        return self._by_id.get(product_id)

    @property
    def _by_id(self) -> dict[str, Product]:
        index = getattr(self, "_index", None)
        if index is None:
            index = {p.id: p for p in self.products}
            object.__setattr__(self, "_index", index)
        return index


@dataclass(frozen=True)
class ProviderConfig:
    """Where product data comes from: a local file or a remote endpoint."""

    kind: str  # "local" | "remote"
    path: str | None = None
    endpoint: str | None = None
    field_map: Mapping[str, str] = field(default_factory=dict)
    video_field_map: Mapping[str, str] = field(default_factory=dict)
    headers: Mapping[str, str] = field(default_factory=dict)  # values may use ${ENV_VAR}
    timeout: float = 10.0
    cache_ttl: float = 600.0

    def __post_init__(self) -> None:
        if self.kind not in ("local", "remote"):
            raise ProviderConfigError(f"kind must be 'local' or 'remote', got {self.kind!r}")
        if self.kind == "local" and not self.path:
            raise ProviderConfigError("local provider requires 'path'")
        if self.kind == "remote":
            if not self.endpoint:
                raise ProviderConfigError("remote provider requires 'endpoint'")
            if not self.field_map:
                raise ProviderConfigError("remote provider requires a 'field_map'")
        if self.timeout <= 0:
            raise ProviderConfigError("timeout must be positive")
        if self.cache_ttl < 0:
            raise ProviderConfigError("cache_ttl must be non-negative")


def _parse_product(record: dict, index: int) -> tuple[Product, str]:
    where = f"products[{index}]"
    if not isinstance(record, dict):
        raise CatalogFormatError(f"{where}: expected an object, got {type(record).__name__}")

    def need(fieldname: str, kind: type) -> object:
        if fieldname not in record:
            raise CatalogFormatError(f"{where}.{fieldname}: missing required field")
        value = record[fieldname]
        if kind is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if not isinstance(value, kind) or isinstance(value, bool):
            raise CatalogFormatError(
                f"{where}.{fieldname}: expected {kind.__name__}, got {type(value).__name__}"
            )
        return value

    video = None
    raw_video = record.get("video")
    if raw_video is not None:
        if not isinstance(raw_video, dict):
            raise CatalogFormatError(f"{where}.video: expected an object or null")
        try:
            video = VideoStats(
                review_count=int(raw_video["review_count"]),
                play_count=int(raw_video["play_count"]),
                url=raw_video.get("url"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CatalogFormatError(f"{where}.video: {exc}") from exc

    try:
        product = Product(
            id=str(need("id", str)),
            title=str(need("title", str)),
            price=float(need("price", float)),
            rating=float(need("rating", float)),
            review_count=int(need("review_count", int)),
            video=video,
            source_url=record.get("source_url"),
        )
    except ValueError as exc:
        raise CatalogFormatError(f"{where}: {exc}") from exc
    category = record.get("category")
    if not isinstance(category, str) or not category:
        raise CatalogFormatError(f"{where}.category: missing or empty")
    return product, category


def parse_catalog(payload: dict) -> CatalogFile:
    """Validate a catalog JSON object and build the CatalogFile."""
    if not isinstance(payload, dict):
        raise CatalogFormatError("catalog must be a JSON object")
    version = payload.get("version")
    if version != CATALOG_VERSION:
        raise CatalogFormatError(f"unsupported catalog version {version!r}, expected {CATALOG_VERSION!r}")
    raw_products = payload.get("products")
    if not isinstance(raw_products, list):
        raise CatalogFormatError("'products' must be an array")

    products: list[Product] = []
    categories: dict[str, str] = {}
    seen: set[str] = set()
    for index, record in enumerate(raw_products):
        product, category = _parse_product(record, index)
        if product.id in seen:
            raise CatalogFormatError(f"products[{index}]: duplicate product id {product.id!r}")
        seen.add(product.id)
        products.append(product)
        categories[product.id] = category
    return CatalogFile(version=CATALOG_VERSION, products=tuple(products), categories=categories)


def load_catalog(source: str | Path | ProviderConfig) -> CatalogFile:
    """Read and validate a catalog file (or a local ProviderConfig's path)."""
    if isinstance(source, ProviderConfig):
        if source.kind != "local":
            raise ProviderConfigError("load_catalog needs a local provider config")
        source = source.path  # type: ignore[assignment]
    path = Path(source)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise
    except json.JSONDecodeError as exc:
        raise CatalogFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_catalog(payload)


def catalog_payload(catalog: CatalogFile) -> dict:
    """JSON-ready form of a catalog; load_catalog round-trips it."""
    records = []
    for product in catalog.products:
        record = product_payload(product)
        record["category"] = catalog.categories[product.id]
        records.append(record)
    return {"version": catalog.version, "products": records}


def save_catalog(catalog: CatalogFile, path: str | Path) -> None:
    Path(path).write_text(json.dumps(catalog_payload(catalog), indent=2) + "\n", encoding="utf-8")


def extract_reference_id(key: str) -> str:
    """Resolve a reference key: a plain id passes through, a URL is parsed.

    For URLs, the id is the segment following "dp" when present, otherwise
    the last path segment.
    """
    key = key.strip()
    if not key:
        raise AmbiguousKeyError("reference key is empty")
    if "://" not in key:
        return key
    parts = urlsplit(key)
    segments = [segment for segment in parts.path.split("/") if segment]
    if not segments:
        raise AmbiguousKeyError(f"URL {key!r} has no path segments to take an id from")
    if "dp" in segments:
        position = segments.index("dp")
        if position + 1 >= len(segments):
            raise AmbiguousKeyError(f"URL {key!r} has a /dp/ segment with no id after it")
        return segments[position + 1]
    return segments[-1]


class LocalCatalogProvider:
    """Serves reference lookup, related-product search and video stats from a catalog file."""

    def __init__(self, catalog: CatalogFile):
        self.catalog = catalog

    def find_reference(self, key: str) -> Product:
        product_id = extract_reference_id(key)
        product = self.catalog.get(product_id)
        if product is None:
            raise ProductNotFoundError(f"no product with id {product_id!r}")
        return product

    def related_products(self, reference: Product, limit: int = 30) -> list[Product]:
        """All same-category products except the reference, in id order."""
        if not 1 <= limit <= 30:
            raise ValueError("limit must be in [1, 30]")
        category = self.catalog.categories.get(reference.id)
        if category is None:
            raise ProductNotFoundError(f"reference {reference.id!r} is not in the catalog")
        related = sorted(
            (
                p
                for p in self.catalog.products
                if p.id != reference.id and self.catalog.categories[p.id] == category
            ),
            key=lambda p: p.id,
        )
        if not related:
            raise EmptyCategoryError(f"category {category!r} has no products besides the reference")
        return related[:limit]

    def video_stats(self, product: Product) -> VideoStats | None:
        return product.video

    def category_of(self, product_id: str) -> str | None:
        return self.catalog.categories.get(product_id)


class RemoteProvider:
    """Generic HTTP adapter: details, search and videos interfaces with a TTL cache.

    Responses are cached by (interface, key); concurrent fetches of the same
    key are allowed and idempotent, with last-writer-wins insertion.
    """

    def __init__(self, config: ProviderConfig, client: httpx.Client | None = None):
        if config.kind != "remote":
            raise ProviderConfigError("RemoteProvider requires a remote config")
        self.config = config
        self._field_map = dict(config.field_map)
        self._video_field_map = dict(config.video_field_map) or dict(DEFAULT_VIDEO_FIELD_MAP)
        self._client = client or httpx.Client(timeout=config.timeout)
        self._cache: dict[tuple[str, str], tuple[float, object]] = {}
        self._lock = threading.Lock()

    def close(self) -> None:
        self._client.close()

    # -- interfaces ------------------------------------------------------

    def find_reference(self, key: str) -> Product:
        product_id = extract_reference_id(key)
        payload = self._cached("details", product_id, lambda: self._get_details(product_id))
        return self._map_product(payload)

    def related_products(self, reference: Product, limit: int = 30) -> list[Product]:
        if not 1 <= limit <= 30:
            raise ValueError("limit must be in [1, 30]")
        key = f"{reference.id}:{limit}"
        payload = self._cached("search", key, lambda: self._get_search(reference.id, limit))
        items = payload.get("items")
        if not isinstance(items, list):
            raise CatalogFormatError("search response: 'items' must be an array")
        products = [self._map_product(item) for item in items]
        if not products:
            raise EmptyCategoryError(f"remote search returned no products related to {reference.id!r}")
        return products[:limit]

    def video_stats(self, product: Product) -> VideoStats | None:
        payload = self._cached("videos", product.id, lambda: self._get_videos(product.id))
        if payload is None:
            return None
        videos = payload.get("videos")
        if not isinstance(videos, list) or not videos:
            return None
        mapped = [self._map_video(entry) for entry in videos]
        # representative video: most plays, ties broken by earliest id
        best = min(mapped, key=lambda v: (-v[0].play_count, v[1]))
        return best[0]

    # -- transport -------------------------------------------------------

    def _headers(self) -> dict[str, str]:
        resolved = {}
        for name, template in self.config.headers.items():
            def expand(match: re.Match) -> str:
                value = os.environ.get(match.group(1))
                if value is None:
                    raise ProviderConfigError(
                        f"header {name!r} references unset environment variable {match.group(1)!r}"
                    )
                return value

            resolved[name] = _ENV_REF.sub(expand, template)
        return resolved

    def _request(self, url: str, params: dict | None = None) -> httpx.Response:
        try:
            return self._client.get(url, params=params, headers=self._headers())
        except httpx.HTTPError as exc:
            raise ProviderTransportError(f"GET {url} failed: {exc}") from exc

    def _get_details(self, product_id: str) -> dict:
        url = f"{self.config.endpoint.rstrip('/')}/products/{product_id}"
        response = self._request(url)
        if response.status_code == 404:
            raise ProductNotFoundError(f"remote provider has no product {product_id!r}")
        if response.status_code != 200:
            raise ProviderTransportError(f"GET {url} returned {response.status_code}")
        return response.json()

    def _get_search(self, reference_id: str, limit: int) -> dict:
        url = f"{self.config.endpoint.rstrip('/')}/search"
        response = self._request(url, params={"reference_id": reference_id, "limit": limit})
        if response.status_code != 200:
            raise ProviderTransportError(f"GET {url} returned {response.status_code}")
        return response.json()

    def _get_videos(self, product_id: str) -> dict | None:
        url = f"{self.config.endpoint.rstrip('/')}/videos/{product_id}"
        response = self._request(url)
        if response.status_code == 404:
            return None  # absence of a video is a normal empty result
        if response.status_code != 200:
            raise ProviderTransportError(f"GET {url} returned {response.status_code}")
        return response.json()

    # -- mapping and caching ---------------------------------------------

    def _map_product(self, item: dict) -> Product:
        if not isinstance(item, dict):
            raise CatalogFormatError("remote product record must be an object")
        data: dict[str, object] = {}
        for remote_field, product_field in self._field_map.items():
            if remote_field in item:
                data[product_field] = item[remote_field]
        missing = [name for name in _REQUIRED_PRODUCT_FIELDS if name not in data]
        if missing:
            raise CatalogFormatError(
                f"remote product record lacks mapped fields {missing}; check field_map"
            )
        try:
            return Product(
                id=str(data["id"]),
                title=str(data["title"]),
                price=float(data["price"]),  # type: ignore[arg-type]
                rating=float(data["rating"]),  # type: ignore[arg-type]
                review_count=int(data["review_count"]),  # type: ignore[arg-type]
                source_url=data.get("source_url"),  # type: ignore[arg-type]
            )
        except (TypeError, ValueError) as exc:
            raise CatalogFormatError(f"remote product record invalid: {exc}") from exc

    def _map_video(self, entry: dict) -> tuple[VideoStats, str]:
        if not isinstance(entry, dict):
            raise CatalogFormatError("remote video record must be an object")
        data: dict[str, object] = {}
        for remote_field, video_field in self._video_field_map.items():
            if remote_field in entry:
                data[video_field] = entry[remote_field]
        try:
            stats = VideoStats(
                review_count=int(data.get("review_count", 0)),  # type: ignore[arg-type]
                play_count=int(data.get("play_count", 0)),  # type: ignore[arg-type]
                url=data.get("url"),  # type: ignore[arg-type]
            )
        except (TypeError, ValueError) as exc:
            raise CatalogFormatError(f"remote video record invalid: {exc}") from exc
        return stats, str(data.get("id", ""))

    def _cached(self, interface: str, key: str, fetch):
        now = time.monotonic()
        with self._lock:
            hit = self._cache.get((interface, key))
            if hit is not None and hit[0] > now:
                return hit[1]
        value = fetch()  # outside the lock: duplicate concurrent fetches are idempotent
        if self.config.cache_ttl > 0:
            with self._lock:
                self._cache[(interface, key)] = (now + self.config.cache_ttl, value)
        return value


def provider_config_from_payload(payload: dict) -> ProviderConfig:
    if not isinstance(payload, dict):
        raise ProviderConfigError("provider config must be an object")
    known = {
        "kind", "path", "endpoint", "field_map", "video_field_map",
        "headers", "timeout", "cache_ttl",
    }
    unknown = set(payload) - known
    if unknown:
        raise ProviderConfigError(f"unknown provider config keys: {sorted(unknown)}")
    return ProviderConfig(
        kind=payload.get("kind", "local"),
        path=payload.get("path"),
        endpoint=payload.get("endpoint"),
        field_map=payload.get("field_map") or {},
        video_field_map=payload.get("video_field_map") or {},
        headers=payload.get("headers") or {},
        timeout=float(payload.get("timeout", 10.0)),
        cache_ttl=float(payload.get("cache_ttl", 600.0)),
    )


def load_provider_config(path: str | Path) -> ProviderConfig:
    """Read a provider config file; .toml parses as TOML, anything else as JSON."""
    path = Path(path)
    raw = path.read_bytes()
    if path.suffix == ".toml":
        try:
            import tomllib  # Python >= 3.11
        except ImportError:  # pragma: no cover
            import tomli as tomllib
        try:
            payload = tomllib.loads(raw.decode("utf-8"))
        except tomllib.TOMLDecodeError as exc:
            raise ProviderConfigError(f"{path}: {exc}") from exc
    else:
        try:
            payload = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ProviderConfigError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    config = provider_config_from_payload(payload)
    if config.kind == "local" and config.path and not Path(config.path).is_absolute():
        config = replace(config, path=str((path.parent / config.path).resolve()))
    return config


def provider_from_config(config: ProviderConfig):
    """Build the provider matching a config's kind."""
    if config.kind == "local":
        return LocalCatalogProvider(load_catalog(config.path))
    return RemoteProvider(config)
