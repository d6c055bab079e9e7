"""HTTP facade over the composition engine.

Every endpoint takes the catalog inline, builds what it needs, and returns a
deterministic document; the service holds no state between requests. Run it
with ``uvicorn compograph.api:app``.
"""

from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI, HTTPException

from .. import __version__, affinity, catalog_io, graph, oracle, planner
from ..types import Catalog, TokenError, TypeSet, UnknownServiceError
from .schemas import (
    AffinityRequest,
    AffinityResponse,
    CatalogPayload,
    CatalogValidateRequest,
    CatalogValidateResponse,
    ModelBuildRequest,
    ModelResponse,
    NodePayload,
    OracleCheckRequest,
    OracleCheckResponse,
    PlanPayload,
    PlanSearchRequest,
    PlanSearchResponse,
    RequestEcho,
    ServicePayload,
    StatsPayload,
)


def _to_catalog(payload: CatalogPayload) -> Catalog:
    # route through the JSON parser so validation and issue paths stay single-sourced
    try:
        return catalog_io.parse_catalog_json(payload.model_dump_json())
    except catalog_io.CatalogParseError as exc:
        raise HTTPException(status_code=422, detail=[asdict(issue) for issue in exc.issues])


def _to_payload(catalog: Catalog) -> CatalogPayload:
    return CatalogPayload(
        name=catalog.name,
        services=[
            ServicePayload(name=svc.name, inputs=list(svc.inputs), outputs=list(svc.outputs))
            for svc in catalog.services
        ],
    )


def _typeset(tokens: list[str], label: str) -> TypeSet:
    try:
        return TypeSet(tokens)
    except TokenError as exc:
        raise HTTPException(status_code=422, detail=f"{label}: {exc}")


def _build_model(catalog: Catalog, init: str) -> graph.CompositionModel:
    try:
        return graph.build_model(catalog, init)
    except UnknownServiceError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


def create_app() -> FastAPI:
    app = FastAPI(
        title="compograph",
        version=__version__,
        description="Composition models, plan search, and affinities for typed service catalogs.",
    )

    @app.get("/health")
    def health() -> dict[str, str]:
        return {"status": "ok"}

    @app.post("/catalog/validate", response_model=CatalogValidateResponse)
    def validate_catalog(body: CatalogValidateRequest) -> CatalogValidateResponse:
        try:
            if body.format == "json":
                catalog = catalog_io.parse_catalog_json(body.source)
            else:
                catalog = catalog_io.parse_catalog_text(body.source, default_name=body.name)
        except catalog_io.CatalogParseError as exc:
            raise HTTPException(status_code=422, detail=[asdict(issue) for issue in exc.issues])
        return CatalogValidateResponse(
            catalog=_to_payload(catalog),
            dsl=catalog_io.serialize_catalog(catalog, "dsl"),
        )

    @app.post("/model", response_model=ModelResponse)
    def build_model_endpoint(body: ModelBuildRequest) -> ModelResponse:
        catalog = _to_catalog(body.catalog)
        model = _build_model(catalog, body.init)
        doc = graph.model_to_dict(model)
        return ModelResponse(
            initial=doc["initial"],
            nodes=[NodePayload(**node) for node in doc["nodes"]],
            edges=doc["edges"],
            dot=graph.to_dot(model),
        )

    @app.post("/plans", response_model=PlanSearchResponse, response_model_exclude_none=True)
    def search_plans(body: PlanSearchRequest) -> PlanSearchResponse:
        catalog = _to_catalog(body.catalog)
        request = planner.Request(
            _typeset(body.provided, "provided"),
            _typeset(body.required, "required"),
        )
        model = _build_model(catalog, body.init)
        plans, stats = planner.find_plans(model, catalog, request, max_plans=body.max_plans)
        payloads = []
        for plan in plans:
            executable = None
            missing = None
            if body.check_executability:
                report = oracle.forward_executability(plan.services, catalog, request.provided)
                executable = report.executable
                missing = {i: gap.canonical() for i, gap in report.missing.items() if gap}
            payloads.append(
                PlanPayload(
                    services=list(plan.services),
                    nodes=[
                        NodePayload(service=n.service_name, ti=n.cum_inputs.canonical(), to=n.cum_outputs.canonical())
                        for n in plan.chain
                    ],
                    executable=executable,
                    missing=missing,
                )
            )
        return PlanSearchResponse(
            request=RequestEcho(provided=list(request.provided), required=list(request.required)),
            plans=payloads,
            stats=StatsPayload(states=stats.states_explored, solutions=stats.solutions),
        )

    @app.post("/affinity", response_model=AffinityResponse)
    def affinity_endpoint(body: AffinityRequest) -> AffinityResponse:
        catalog = _to_catalog(body.catalog)
        matrix = affinity.affinity_matrix(catalog)
        return AffinityResponse(
            services=list(catalog.names),
            matrix=[[None if v is None else str(v) for v in row] for row in matrix],
        )

    @app.post("/oracle", response_model=OracleCheckResponse)
    def oracle_endpoint(body: OracleCheckRequest) -> OracleCheckResponse:
        catalog = _to_catalog(body.catalog)
        request = planner.Request(
            _typeset(body.provided, "provided"),
            _typeset(body.required, "required"),
        )
        model = _build_model(catalog, body.init)
        planned, _ = planner.find_plans(model, catalog, request)
        brute = oracle.enumerate_plans_bruteforce(model, catalog, request)
        return OracleCheckResponse(
            match=planned == brute,
            planner=[list(plan.services) for plan in planned],
            bruteforce=[list(plan.services) for plan in brute],
        )

    return app


app = create_app()
