"""HTTP JSON API over the assessment engine, plus static hosting for the UI.

The API adds no arithmetic: every scoring response is the byte output of
the same library calls the CLI uses. Errors map to problem documents of
the form ``{"status", "code", "message", "details"}``. Mutations are
serialised per assessment id, and an entity-version echoed via ETag /
If-Match gives optimistic concurrency for clients that want it.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, Header, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import assessment as assessment_ops
from .assessment import (
    Assessment,
    FactorScores,
    RatingValue,
    assessment_to_dict,
    completeness,
)
from .catalog import TierLevel, catalog_to_dict
from .errors import CcmfError, VersionConflict
from .reporting import chart_data, export, gap_analysis
from .scoring import report_to_json, score_assessment
from .store import Store

DEFAULT_BIND = "127.0.0.1"
DEFAULT_PORT = 8787

_STATUS_BY_CODE = {
    "NotFound": 404,
    "Incomplete": 409,
    "CatalogMismatch": 409,
    "ReportMismatch": 409,
    "VersionConflict": 412,
    "IoError": 500,
    "SerialisationError": 500,
    "CorruptDocument": 500,
    "FormatVersionUnsupported": 500,
}


@dataclass
class ServiceConfig:
    bind: str = DEFAULT_BIND
    port: int = DEFAULT_PORT
    store_root: Optional[Path] = None
    static_dir: Optional[Path] = None

    def __post_init__(self) -> None:
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port must be within 1..65535, got {self.port}")


def _problem(status: int, code: str, message: str, details: Any = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"status": status, "code": code, "message": message, "details": details},
    )


class CreateAssessmentBody(BaseModel):
    organisation: str = Field(min_length=1)
    electives: list[str] = Field(default_factory=list)
    catalog: Optional[str] = None  # "<id>" or "<id>@<version>"; default builtin


class TargetTierBody(BaseModel):
    tier: str


class RatingBody(BaseModel):
    value: int = Field(ge=0, le=2)
    note: Optional[str] = None


class EvaluationBody(BaseModel):
    measured_value: Optional[float] = None
    points: Optional[int] = None
    note: Optional[str] = None


class WeightsBody(BaseModel):
    factors: Optional[dict[str, dict[str, int]]] = None


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig()
    store = Store(config.store_root)
    app = FastAPI(title="ccmf", docs_url=None, redoc_url=None, openapi_url=None)

    locks: dict[str, threading.Lock] = defaultdict(threading.Lock)
    locks_guard = threading.Lock()

    def lock_for(assessment_id: str) -> threading.Lock:
        with locks_guard:
            return locks[assessment_id]

    @app.exception_handler(CcmfError)
    async def handle_domain_error(request: Request, exc: CcmfError) -> JSONResponse:
        status = _STATUS_BY_CODE.get(exc.code, 422)
        return _problem(status, exc.code, exc.message, exc.details)

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(
        request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        return _problem(422, "InvalidBody", "request body failed validation", exc.errors())

    def assessment_response(assessment: Assessment, status_code: int = 200) -> JSONResponse:
        return JSONResponse(
            status_code=status_code,
            content=assessment_to_dict(assessment),
            headers={"ETag": f'"{assessment.entity_version}"'},
        )

    def check_version(assessment: Assessment, if_match: Optional[str]) -> None:
        if if_match is None:
            return
        expected = if_match.strip().strip('"')
        if expected != str(assessment.entity_version):
            raise VersionConflict(
                f"assessment is at entity version {assessment.entity_version}, "
                f"request expected {expected}",
                details={"current": assessment.entity_version},
            )

    # -- catalogs -----------------------------------------------------------

    @app.get("/api/catalogs")
    def list_catalogs() -> dict[str, Any]:
        return {"catalogs": store.list_catalogs()}

    @app.get("/api/catalogs/{ref}")
    def get_catalog(ref: str) -> dict[str, Any]:
        return catalog_to_dict(store.get_catalog_by_ref(ref))

    # -- assessment lifecycle -------------------------------------------------

    @app.get("/api/assessments")
    def list_assessments() -> dict[str, Any]:
        return store.list_assessments().to_dict()

    @app.post("/api/assessments")
    def create_assessment(body: CreateAssessmentBody) -> JSONResponse:
        catalog = (
            store.get_catalog_by_ref(body.catalog)
            if body.catalog
            else store.get_catalog_by_ref("ccmf-builtin")
        )
        assessment = assessment_ops.create_assessment(
            body.organisation, catalog, body.electives
        )
        store.save_assessment(assessment)
        return assessment_response(assessment, status_code=201)

    @app.get("/api/assessments/{assessment_id}")
    def get_assessment(assessment_id: str) -> JSONResponse:
        return assessment_response(store.load_assessment(assessment_id))

    @app.delete("/api/assessments/{assessment_id}", status_code=204)
    def delete_assessment(assessment_id: str) -> Response:
        with lock_for(assessment_id):
            store.delete_assessment(assessment_id)
        return Response(status_code=204)

    @app.get("/api/assessments/{assessment_id}/completeness")
    def get_completeness(assessment_id: str) -> dict[str, Any]:
        assessment = store.load_assessment(assessment_id)
        catalog = store.get_catalog(assessment.catalog_id, assessment.catalog_version)
        return completeness(assessment, catalog).to_dict()

    # -- assessment mutations ---------------------------------------------------

    def _mutate(assessment_id: str, if_match: Optional[str], apply) -> JSONResponse:
        with lock_for(assessment_id):
            assessment = store.load_assessment(assessment_id)
            check_version(assessment, if_match)
            catalog = store.get_catalog(assessment.catalog_id, assessment.catalog_version)
            apply(assessment, catalog)
            store.save_assessment(assessment)
            return assessment_response(assessment)

    @app.put("/api/assessments/{assessment_id}/domains/{domain_id}/target-tier")
    def put_target_tier(
        assessment_id: str,
        domain_id: str,
        body: TargetTierBody,
        if_match: Optional[str] = Header(None, alias="If-Match"),
    ) -> JSONResponse:
        try:
            tier = TierLevel.from_token(body.tier)
        except ValueError as exc:
            return _problem(422, "InvalidBody", str(exc))
        return _mutate(
            assessment_id,
            if_match,
            lambda assessment, catalog: assessment_ops.set_target_tier(
                assessment, catalog, domain_id, tier
            ),
        )

    @app.put("/api/assessments/{assessment_id}/domains/{domain_id}/ratings/{practice_id}")
    def put_rating(
        assessment_id: str,
        domain_id: str,
        practice_id: str,
        body: RatingBody,
        if_match: Optional[str] = Header(None, alias="If-Match"),
    ) -> JSONResponse:
        return _mutate(
            assessment_id,
            if_match,
            lambda assessment, catalog: assessment_ops.rate_practice(
                assessment, catalog, domain_id, practice_id, RatingValue(body.value), body.note
            ),
        )

    @app.put("/api/assessments/{assessment_id}/domains/{domain_id}/evaluations/{metric_id}")
    def put_evaluation(
        assessment_id: str,
        domain_id: str,
        metric_id: str,
        body: EvaluationBody,
        if_match: Optional[str] = Header(None, alias="If-Match"),
    ) -> JSONResponse:
        if (body.measured_value is None) == (body.points is None):
            return _problem(
                422,
                "InvalidBody",
                "provide exactly one of measured_value (quantitative) or points (qualitative)",
            )

        def apply(assessment: Assessment, catalog) -> None:
            if body.measured_value is not None:
                assessment_ops.evaluate_metric_quantitative(
                    assessment, catalog, domain_id, metric_id, body.measured_value, body.note
                )
            else:
                assessment_ops.evaluate_metric_qualitative(
                    assessment, catalog, domain_id, metric_id, body.points, body.note
                )

        return _mutate(assessment_id, if_match, apply)

    @app.put("/api/assessments/{assessment_id}/weights")
    def put_weights(
        assessment_id: str,
        body: WeightsBody,
        if_match: Optional[str] = Header(None, alias="If-Match"),
    ) -> JSONResponse:
        factors = None
        if body.factors is not None:
            factors = {
                domain_id: FactorScores(**scores) for domain_id, scores in body.factors.items()
            }
        return _mutate(
            assessment_id,
            if_match,
            lambda assessment, catalog: assessment_ops.set_weight_profile(
                assessment, catalog, factors, require_complete=factors is not None
            ),
        )

    # -- scoring and reporting ----------------------------------------------------

    def _scored(assessment_id: str, missing_as_zero: bool):
        assessment = store.load_assessment(assessment_id)
        catalog = store.get_catalog(assessment.catalog_id, assessment.catalog_version)
        report = score_assessment(assessment, catalog, missing_as_zero=missing_as_zero)
        return assessment, catalog, report

    @app.post("/api/assessments/{assessment_id}/score")
    def post_score(
        assessment_id: str, missing_as_zero: bool = Query(False)
    ) -> Response:
        _, _, report = _scored(assessment_id, missing_as_zero)
        return Response(content=report_to_json(report), media_type="application/json")

    @app.get("/api/assessments/{assessment_id}/report")
    def get_report(
        assessment_id: str,
        format: str = Query("json"),
        missing_as_zero: bool = Query(False),
    ) -> Response:
        assessment, catalog, report = _scored(assessment_id, missing_as_zero)
        gaps = gap_analysis(assessment, catalog, report)
        payload = export(report, gaps, format)  # raises UnsupportedFormat -> 422
        media_type = "text/csv; charset=utf-8" if format == "csv" else "application/json"
        return Response(content=payload, media_type=media_type)

    @app.get("/api/assessments/{assessment_id}/gaps")
    def get_gaps(
        assessment_id: str, missing_as_zero: bool = Query(False)
    ) -> dict[str, Any]:
        assessment, catalog, report = _scored(assessment_id, missing_as_zero)
        return gap_analysis(assessment, catalog, report).to_dict()

    @app.get("/api/assessments/{assessment_id}/charts")
    def get_charts(
        assessment_id: str, missing_as_zero: bool = Query(False)
    ) -> dict[str, Any]:
        _, _, report = _scored(assessment_id, missing_as_zero)
        return chart_data(report).to_dict()

    if config.static_dir is not None:
        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="static")

    return app


def serve(config: Optional[ServiceConfig] = None) -> None:
    """Run the API until interrupted. Binds loopback-only by default."""
    import uvicorn

    config = config or ServiceConfig()
    store = Store(config.store_root)
    store.root.mkdir(parents=True, exist_ok=True)  # fail fast on an unusable root
    app = create_app(config)
    uvicorn.run(app, host=config.bind, port=config.port, log_level="info")
