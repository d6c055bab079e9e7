"""Independent cross-checks for the planner.

``enumerate_plans_bruteforce`` re-derives plan sets straight from the model
with plain frozenset operations: plain recursion, no visited-state table,
and no code shared with the search in :mod:`compograph.planner`, so the two
can arbitrate each other. ``forward_executability`` is a stricter,
diagnostic-only notion: it simulates running a plan left to right and
reports input types that are not available when each service runs. A plan
can satisfy its request yet fail this check, because plan search only
requires provided-containment against cumulative inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .graph import CompositionModel, Node
from .planner import Plan, Request
from .types import Catalog, Service, TypeSet


def enumerate_plans_bruteforce(model: CompositionModel, catalog: Catalog, request: Request) -> list[Plan]:
    """Exhaustively enumerate every plan; deduplicated, canonically sorted."""
    if not request.required:
        return [Plan((), ())]
    provided = request.provided.members
    own_outputs = {svc.name: svc.outputs.members for svc in catalog.services}
    sources_into: dict[Node, list[Node]] = {}
    for edge in model.edges:
        sources_into.setdefault(edge.target, []).append(edge.source)

    found: set[Plan] = set()

    def grow(chain: tuple[Node, ...], used: frozenset[str], missing: frozenset[str]) -> None:
        if not missing:
            found.add(Plan(tuple(n.service_name for n in chain), chain))
            return
        for prev in sources_into.get(chain[0], ()):
            name = prev.service_name
            if name in used:
                continue
            if not provided <= prev.cum_inputs.members:
                continue
            if not missing <= prev.cum_outputs.members:
                continue
            grow((prev,) + chain, used | {name}, missing - own_outputs[name])

    for node in model.nodes:
        name = node.service_name
        if name not in own_outputs:
            continue
        if not provided <= node.cum_inputs.members:
            continue
        if not request.required.members <= node.cum_outputs.members:
            continue
        grow((node,), frozenset((name,)), request.required.members - own_outputs[name])

    return sorted(found, key=lambda p: (len(p.services), p.services, tuple(n.sort_key() for n in p.chain)))


@dataclass(frozen=True)
class ExecutabilityReport:
    """Per-position unsatisfied inputs of a left-to-right simulation."""

    executable: bool
    missing: dict[int, TypeSet]


def forward_executability(services: Sequence[str], catalog: Catalog, provided: TypeSet) -> ExecutabilityReport:
    """Simulate running the plan left to right from the provided types.

    At each step the report records which of the service's own inputs are
    not yet available; afterwards the service's outputs become available.
    The plan is executable iff every recorded set is empty.
    """
    available = set(provided.members)
    missing: dict[int, TypeSet] = {}
    for position, name in enumerate(services):
        svc = catalog.get(name)
        missing[position] = TypeSet(svc.inputs.members - available)
        available |= svc.outputs.members
    return ExecutabilityReport(all(not gap for gap in missing.values()), missing)


def random_catalog(seed: int, n_services: int, n_types: int) -> Catalog:
    """Deterministic small catalog for property testing.

    Each service draws 1-3 inputs and 1-3 outputs from a universe of
    ``n_types`` tokens; the same seed always yields the same catalog. Sizes
    are kept small so brute-force enumeration stays instant.
    """
    if n_services < 1 or n_types < 1:
        raise ValueError("need at least one service and one type")
    rng = random.Random(seed)
    universe = [f"t{i}" for i in range(1, n_types + 1)]
    services = []
    for i in range(1, n_services + 1):
        inputs = rng.sample(universe, rng.randint(1, min(3, n_types)))
        outputs = rng.sample(universe, rng.randint(1, min(3, n_types)))
        services.append(Service(f"s{i}", TypeSet(inputs), TypeSet(outputs)))
    return Catalog(f"rand-{seed}", tuple(services))
