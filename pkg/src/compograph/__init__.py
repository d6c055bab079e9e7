"""Typed web-service composition: catalogs, composition models, plan search."""

__version__ = "0.1.0"

from .affinity import affinity_matrix, can_compose, request_node_affinity, service_affinity
from .catalog_io import (
    CatalogParseError,
    ParseIssue,
    parse_catalog_json,
    parse_catalog_text,
    serialize_catalog,
)
from .graph import (
    CompositionModel,
    Edge,
    Node,
    attach_candidate,
    build_model,
    check_model,
    initial_node,
    model_to_dict,
    to_dot,
)
from .oracle import (
    ExecutabilityReport,
    enumerate_plans_bruteforce,
    forward_executability,
    random_catalog,
)
from .planner import (
    ModelCatalogMismatchError,
    Plan,
    Request,
    SearchState,
    SearchStats,
    extend_state,
    find_plans,
    plans_to_dict,
    seed_states,
)
from .types import (
    Catalog,
    Service,
    TokenError,
    TypeSet,
    UnknownServiceError,
    card,
    includes,
    intersect,
    remove,
    union,
    validate_token,
)

__all__ = [
    "CatalogParseError",
    "Catalog",
    "CompositionModel",
    "Edge",
    "ExecutabilityReport",
    "ModelCatalogMismatchError",
    "Node",
    "ParseIssue",
    "Plan",
    "Request",
    "SearchState",
    "SearchStats",
    "Service",
    "TokenError",
    "TypeSet",
    "UnknownServiceError",
    "affinity_matrix",
    "attach_candidate",
    "build_model",
    "can_compose",
    "card",
    "check_model",
    "enumerate_plans_bruteforce",
    "extend_state",
    "find_plans",
    "forward_executability",
    "includes",
    "initial_node",
    "intersect",
    "model_to_dict",
    "parse_catalog_json",
    "parse_catalog_text",
    "plans_to_dict",
    "random_catalog",
    "remove",
    "request_node_affinity",
    "seed_states",
    "serialize_catalog",
    "service_affinity",
    "to_dot",
    "union",
    "validate_token",
]
