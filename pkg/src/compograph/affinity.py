"""Exact-rational affinity between services, and between a request and a node.

Affinity is the fraction of a consumer's input types that a producer's
output types cover; 1 means full coverage. All arithmetic is exact
(``fractions.Fraction``), never floating point, so comparisons with 1 are
reliable.
"""

from __future__ import annotations

from fractions import Fraction

from .graph import Node
from .types import Catalog, Service, TypeSet, card, intersect


def can_compose(a: Service, b: Service) -> bool:
    """True when at least one output of ``a`` feeds an input of ``b``."""
    return bool(intersect(a.outputs, b.inputs))


def service_affinity(a: Service, b: Service) -> Fraction:
    """How much of ``b``'s input list the outputs of ``a`` cover, in [0, 1]."""
    if a.name == b.name:
        raise ValueError(f"affinity needs two distinct services, got {a.name!r} twice")
    return Fraction(card(intersect(a.outputs, b.inputs)), card(b.inputs))


def request_node_affinity(required: TypeSet, node: Node) -> Fraction:
    """How much of the required set the node's cumulative outputs cover."""
    if not required:
        raise ValueError("affinity over an empty required set is undefined")
    return Fraction(card(intersect(required, node.cum_outputs)), card(required))


def affinity_matrix(catalog: Catalog) -> list[list[Fraction | None]]:
    """Square matrix in service-name order; the diagonal is None."""
    return [
        [None if a.name == b.name else service_affinity(a, b) for b in catalog.services]
        for a in catalog.services
    ]
