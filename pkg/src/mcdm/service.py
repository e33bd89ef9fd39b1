"""HTTP JSON API: session-based preference elicitation and explained rankings.

A session accumulates a pairwise comparison matrix (-> weights + consistency)
and a reference product, then serves ranked results. A consistency ratio
above 0.1 is advisory at this layer: the response flags it and the UI drives
the revise loop, but the weights are stored and usable.
"""

from __future__ import annotations

import argparse
import json
import os
import secrets
import threading
import time
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from typing import Literal

import uvicorn
from fastapi import APIRouter, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .ahp import (
    AhpError,
    ConsistencyReport,
    InvalidMatrixError,
    PairwiseMatrix,
    WeightVector,
    derive_weights,
    matrix_from_payload,
    weights_payload,
)
from .catalog import (
    AmbiguousKeyError,
    EmptyCategoryError,
    LocalCatalogProvider,
    ProductNotFoundError,
    ProviderTransportError,
    load_catalog,
    load_provider_config,
    provider_from_config,
)
from .scoring import (
    CRITERIA,
    Product,
    ScoringConfig,
    method_weights,
    product_payload,
    rank,
    ranked_result_payload,
)

DEFAULT_SESSION_TTL = 3600.0
DEFAULT_CANDIDATE_LIMIT = 30


class ApiError(Exception):
    """An error with a machine-readable envelope and an HTTP status."""

    def __init__(self, status: int, code: str, message: str, details: object = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.details = details

    def response(self) -> JSONResponse:
        return JSONResponse(
            status_code=self.status,
            content={"error": {"code": self.code, "message": self.message, "details": self.details}},
        )


@dataclass
class Session:
    """Mutable per-user state; transitions are serialized by ``lock``."""

    id: str
    created_at: float
    last_access: float
    matrix: PairwiseMatrix | None = None
    weights: WeightVector | None = None
    consistency: ConsistencyReport | None = None
    reference: Product | None = None
    last_result: dict | None = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


def _isoformat(timestamp: float) -> str:
    return datetime.fromtimestamp(timestamp, tz=timezone.utc).isoformat()


class SessionStore:
    """In-memory session map with idle expiry and an optional JSON snapshot."""

    def __init__(self, ttl: float = DEFAULT_SESSION_TTL, snapshot_path: str | None = None):
        self.ttl = ttl
        self.snapshot_path = snapshot_path
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        if snapshot_path and os.path.exists(snapshot_path):
            self._load_snapshot(snapshot_path)

    def create(self) -> Session:
        now = time.time()
        session = Session(id=secrets.token_urlsafe(16), created_at=now, last_access=now)
        with self._lock:
            self._sessions[session.id] = session
        self._save_snapshot()
        return session

    def get(self, session_id: str) -> Session | None:
        now = time.time()
        with self._lock:
            self._expire(now)
            session = self._sessions.get(session_id)
            if session is not None:
                session.last_access = now
            return session

    def touch(self) -> None:
        self._save_snapshot()

    def _expire(self, now: float) -> None:
        expired = [sid for sid, s in self._sessions.items() if now - s.last_access > self.ttl]
        for sid in expired:
            del self._sessions[sid]

    # -- snapshot ---------------------------------------------------------

    def _save_snapshot(self) -> None:
        if not self.snapshot_path:
            return
        with self._lock:
            payload = {sid: _session_state(s) for sid, s in self._sessions.items()}
        tmp = f"{self.snapshot_path}.tmp"
        with open(tmp, "w", encoding="utf-8") as handle:
            json.dump(payload, handle)
        os.replace(tmp, self.snapshot_path)

    def _load_snapshot(self, path: str) -> None:
        try:
            payload = json.loads(open(path, encoding="utf-8").read())
        except (OSError, json.JSONDecodeError):
            return  # a stale or corrupt snapshot is not fatal
        for sid, state in payload.items():
            session = _session_from_state(sid, state)
            if session is not None:
                self._sessions[sid] = session


def _session_state(session: Session) -> dict:
    return {
        "created_at": session.created_at,
        "last_access": session.last_access,
        "matrix": (
            {"criteria": list(session.matrix.labels), "matrix": session.matrix.entries.tolist()}
            if session.matrix
            else None
        ),
        "reference": product_payload(session.reference) if session.reference else None,
        "last_result": session.last_result,
    }


def _session_from_state(session_id: str, state: dict) -> Session | None:
    try:
        session = Session(
            id=session_id,
            created_at=float(state["created_at"]),
            last_access=float(state["last_access"]),
        )
        if state.get("matrix"):
            session.matrix = matrix_from_payload(state["matrix"])
            session.weights, session.consistency = derive_weights(session.matrix)
        if state.get("reference"):
            raw = dict(state["reference"])
            video = raw.pop("video", None)
            if video:
                from .scoring import VideoStats

                raw["video"] = VideoStats(**video)
            session.reference = Product(**raw)
        session.last_result = state.get("last_result")
        return session
    except (KeyError, TypeError, ValueError, AhpError):
        return None


class ComparisonsPayload(BaseModel):
    criteria: list[str] = Field(min_length=2)
    matrix: list[list[float | str]] = Field(min_length=2)


class ReferencePayload(BaseModel):
    key: str


class RankOptions(BaseModel):
    method: Literal["similarity_only", "equal_weights", "ahp"] = "ahp"
    top_n: int | None = Field(default=None, ge=1, le=30)


def _session_payload(session: Session) -> dict:
    return {
        "id": session.id,
        "created_at": _isoformat(session.created_at),
        "matrix": (
            {"criteria": list(session.matrix.labels), "matrix": session.matrix.entries.tolist()}
            if session.matrix
            else None
        ),
        "weights": session.weights.as_dict() if session.weights else None,
        "consistency": session.consistency.as_dict() if session.consistency else None,
        "reference": product_payload(session.reference) if session.reference else None,
        "last_result": session.last_result,
    }


def create_app(
    provider,
    scoring_config: ScoringConfig | None = None,
    session_ttl: float = DEFAULT_SESSION_TTL,
    snapshot_path: str | None = None,
    cors_origins: tuple[str, ...] = ("*",),
) -> FastAPI:
    """Build the API around a provider (local catalog or remote adapter)."""
    config = scoring_config or ScoringConfig()
    store = SessionStore(ttl=session_ttl, snapshot_path=snapshot_path)
    app = FastAPI(title="mcdm ranking service", version=__version__)
    app.state.provider = provider
    app.state.store = store
    app.state.scoring_config = config
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    api = APIRouter(prefix="/v1")

    def require_session(session_id: str) -> Session:
        session = store.get(session_id)
        if session is None:
            raise ApiError(404, "session_not_found", f"no session {session_id!r}")
        return session

    @app.exception_handler(ApiError)
    async def handle_api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return exc.response()

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(_request: Request, exc: RequestValidationError) -> JSONResponse:
        return ApiError(422, "validation_error", "request body is invalid", exc.errors()).response()

    @app.exception_handler(Exception)
    async def handle_unexpected_error(_request: Request, exc: Exception) -> JSONResponse:
        # every error response carries the machine-readable envelope
        return ApiError(500, "internal_error", f"{type(exc).__name__}: {exc}").response()

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "version": __version__}

    @api.post("/sessions", status_code=201)
    def create_session() -> dict:
        session = store.create()
        return {"id": session.id, "created_at": _isoformat(session.created_at)}

    @api.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return _session_payload(require_session(session_id))

    @api.put("/sessions/{session_id}/comparisons")
    def submit_comparisons(session_id: str, payload: ComparisonsPayload) -> dict:
        session = require_session(session_id)
        if set(payload.criteria) != set(CRITERIA) or len(payload.criteria) != len(CRITERIA):
            raise ApiError(
                422,
                "criteria_mismatch",
                f"criteria must be exactly {list(CRITERIA)}",
                {"got": payload.criteria},
            )
        try:
            matrix = matrix_from_payload({"criteria": payload.criteria, "matrix": payload.matrix})
            weights, report = derive_weights(matrix)
        except InvalidMatrixError as exc:
            raise ApiError(
                422,
                "invalid_matrix",
                "the comparison matrix breaks reciprocal-matrix invariants",
                [
                    {"row": v.row, "col": v.col, "kind": v.kind, "message": v.message}
                    for v in exc.violations
                ],
            )
        except AhpError as exc:
            raise ApiError(422, "invalid_matrix", str(exc))
        with session.lock:
            session.matrix = matrix
            session.weights = weights
            session.consistency = report
        store.touch()
        response = weights_payload(weights, report)
        if not report.acceptable:
            response["advisory"] = (
                f"consistency ratio {report.cr:.4f} exceeds 0.1; revise the judgments before ranking"
            )
        return response

    @api.post("/sessions/{session_id}/reference")
    def set_reference(session_id: str, payload: ReferencePayload) -> dict:
        session = require_session(session_id)
        try:
            product = provider.find_reference(payload.key)
        except AmbiguousKeyError as exc:
            raise ApiError(422, "malformed_key", str(exc))
        except ProductNotFoundError as exc:
            raise ApiError(404, "product_not_found", str(exc))
        except ProviderTransportError as exc:
            raise ApiError(502, "provider_unavailable", str(exc))
        with session.lock:
            session.reference = product
        store.touch()
        return product_payload(product)

    @api.post("/sessions/{session_id}/rank")
    def generate_ranking(session_id: str, options: RankOptions) -> dict:
        session = require_session(session_id)
        with session.lock:
            reference = session.reference
            stored_weights = session.weights
            stored_report = session.consistency
        if reference is None:
            raise ApiError(409, "missing_reference", "set a reference product before ranking")
        if options.method == "ahp":
            if stored_weights is None:
                raise ApiError(409, "missing_matrix", "submit pairwise comparisons before an ahp ranking")
            weights, report = stored_weights, stored_report
        else:
            weights, report = method_weights(options.method)
        try:
            candidates = provider.related_products(reference, limit=DEFAULT_CANDIDATE_LIMIT)
            candidates = [
                c if c.video is not None else replace(c, video=provider.video_stats(c))
                for c in candidates
            ]
        except EmptyCategoryError as exc:
            raise ApiError(409, "no_candidates", str(exc))
        except ProviderTransportError as exc:
            raise ApiError(502, "provider_unavailable", str(exc))
        effective = replace(app.state.scoring_config, top_n=options.top_n or app.state.scoring_config.top_n)
        results = rank(reference, candidates, weights, effective)
        payload = ranked_result_payload(
            reference, results, weights, consistency=report, config=effective, method=options.method
        )
        with session.lock:
            session.last_result = payload
        store.touch()
        return payload

    @api.get("/products/{product_id}")
    def get_product(product_id: str) -> dict:
        try:
            product = provider.find_reference(product_id)
        except ProductNotFoundError as exc:
            raise ApiError(404, "product_not_found", str(exc))
        except ProviderTransportError as exc:
            raise ApiError(502, "provider_unavailable", str(exc))
        return product_payload(product)

    app.include_router(api)
    return app


def main(argv: list[str] | None = None) -> int:
    """Run the service; configuration via flags with environment fallbacks."""
    parser = argparse.ArgumentParser(prog="mcdm-service", description=__doc__)
    parser.add_argument("--host", default=os.environ.get("MCDM_HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(os.environ.get("MCDM_PORT", "8000")))
    source = parser.add_mutually_exclusive_group(required=False)
    source.add_argument("--catalog", default=os.environ.get("MCDM_CATALOG"))
    source.add_argument("--provider-config", default=os.environ.get("MCDM_PROVIDER_CONFIG"))
    parser.add_argument("--session-ttl", type=float, default=float(os.environ.get("MCDM_SESSION_TTL", DEFAULT_SESSION_TTL)))
    parser.add_argument("--snapshot", default=os.environ.get("MCDM_SNAPSHOT"))
    parser.add_argument("--cors-origin", action="append", default=None)
    parser.add_argument("--rating-max", type=float, default=5.0)
    parser.add_argument("--nr-threshold", type=int, default=10_000)
    parser.add_argument("--nvr-threshold", type=int, default=1_000)
    parser.add_argument("--nvp-threshold", type=int, default=100_000)
    parser.add_argument("--top-n", type=int, default=10)
    args = parser.parse_args(argv)

    if args.provider_config:
        provider = provider_from_config(load_provider_config(args.provider_config))
    else:
        catalog_path = args.catalog
        if not catalog_path:
            from .data import sample_catalog_path

            catalog_path = sample_catalog_path()
        provider = LocalCatalogProvider(load_catalog(catalog_path))

    scoring_config = ScoringConfig(
        rating_max=args.rating_max,
        nr_threshold=args.nr_threshold,
        nvr_threshold=args.nvr_threshold,
        nvp_threshold=args.nvp_threshold,
        top_n=args.top_n,
    )
    app = create_app(
        provider,
        scoring_config=scoring_config,
        session_ttl=args.session_ttl,
        snapshot_path=args.snapshot,
        cors_origins=tuple(args.cors_origin) if args.cors_origin else ("*",),
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
