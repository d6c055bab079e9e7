"""Pydantic request/response models for the HTTP facade."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel


class ServicePayload(BaseModel):
    name: str
    inputs: list[str]
    outputs: list[str]


class CatalogPayload(BaseModel):
    name: str
    services: list[ServicePayload] = []


class CatalogValidateRequest(BaseModel):
    source: str
    format: Literal["dsl", "json"] = "dsl"
    name: str = "catalog"


class CatalogValidateResponse(BaseModel):
    catalog: CatalogPayload
    dsl: str


class IssuePayload(BaseModel):
    line: int
    column: int
    kind: str
    message: str


class NodePayload(BaseModel):
    service: str
    ti: str
    to: str


class ModelBuildRequest(BaseModel):
    catalog: CatalogPayload
    init: str


class ModelResponse(BaseModel):
    initial: int
    nodes: list[NodePayload]
    edges: list[list[int]]
    dot: str


class PlanSearchRequest(BaseModel):
    catalog: CatalogPayload
    init: str
    provided: list[str] = []
    required: list[str] = []
    max_plans: int | None = None
    check_executability: bool = False


class RequestEcho(BaseModel):
    provided: list[str]
    required: list[str]


class PlanPayload(BaseModel):
    services: list[str]
    nodes: list[NodePayload]
    executable: bool | None = None
    missing: dict[int, str] | None = None


class StatsPayload(BaseModel):
    states: int
    solutions: int


class PlanSearchResponse(BaseModel):
    request: RequestEcho
    plans: list[PlanPayload]
    stats: StatsPayload


class AffinityRequest(BaseModel):
    catalog: CatalogPayload


class AffinityResponse(BaseModel):
    services: list[str]
    matrix: list[list[str | None]]


class OracleCheckRequest(BaseModel):
    catalog: CatalogPayload
    init: str
    provided: list[str] = []
    required: list[str] = []


class OracleCheckResponse(BaseModel):
    match: bool
    planner: list[list[str]]
    bruteforce: list[list[str]]
