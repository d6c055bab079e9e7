"""Enumerate all composition plans for a request by backward search.

A plan is seeded at any node whose cumulative outputs cover the whole
required set, then grown backward along graph edges toward the initial
node. Each prepended node must still cover whatever is left of the
required set (affinity 1), the request's provided types must be contained
in its cumulative inputs, and every service may be used at most once. The
required set shrinks by each chosen service's *own* outputs; a state whose
required set is empty is a finished plan and is not extended further.

The search is breadth-first with full-state deduplication, so the explored
state count and the emitted plan set are both deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .affinity import request_node_affinity
from .graph import CompositionModel, Node
from .types import Catalog, TypeSet, includes, remove


class ModelCatalogMismatchError(ValueError):
    """The model being searched was not built from the given catalog."""


@dataclass(frozen=True)
class Request:
    """What the caller brings (provided) and what they want back (required)."""

    provided: TypeSet
    required: TypeSet


@dataclass(frozen=True)
class SearchState:
    """One state of the backward search.

    ``chain`` is ordered source -> sink; its first element is the most
    recently prepended node, the one the next extension must link into.
    ``invocations`` mirrors ``chain`` by service name. ``provided`` is the
    request's constant input set, carried so extensions can re-check it.
    """

    provided: TypeSet
    remaining_services: frozenset[str]
    remaining_required: TypeSet
    chain: tuple[Node, ...]
    invocations: tuple[str, ...]


@dataclass(frozen=True)
class Plan:
    """An ordered service sequence with its witnessing node chain."""

    services: tuple[str, ...]
    chain: tuple[Node, ...]


@dataclass(frozen=True)
class SearchStats:
    states_explored: int
    solutions: int


def _plan_sort_key(plan: Plan) -> tuple:
    return (len(plan.services), plan.services, tuple(n.sort_key() for n in plan.chain))


def seed_states(model: CompositionModel, catalog: Catalog, request: Request) -> list[SearchState]:
    """All single-node starting states, in canonical (service, node) order.

    A node seeds a plan when the provided types are contained in its
    cumulative inputs and it fully covers the required set. The seeded
    state already discounts the service's own outputs from the goal.
    """
    if not request.required:
        raise ValueError("cannot seed a search for an empty required set")
    names = frozenset(catalog.names)
    by_name: dict[str, list[Node]] = {}
    for node in model.nodes:  # model.nodes is already canonically ordered
        by_name.setdefault(node.service_name, []).append(node)
    states = []
    for svc in catalog.services:
        for node in by_name.get(svc.name, ()):
            if not includes(request.provided, node.cum_inputs):
                continue
            if request_node_affinity(request.required, node) != 1:
                continue
            states.append(
                SearchState(
                    provided=request.provided,
                    remaining_services=names - {svc.name},
                    remaining_required=remove(request.required, svc.outputs),
                    chain=(node,),
                    invocations=(svc.name,),
                )
            )
    return states


def extend_state(model: CompositionModel, catalog: Catalog, state: SearchState) -> list[SearchState]:
    """All one-step backward extensions of ``state``, canonically ordered.

    Candidates are the unused services owning a node with an edge into the
    chain's head; the same provided-containment and full-coverage checks
    apply against the current remaining required set.
    """
    if not state.chain:
        raise ValueError("cannot extend a state with an empty chain")
    if not state.remaining_required:
        raise ValueError("goal states are not extended")
    head = state.chain[0]
    predecessors = sorted((e.source for e in model.edges if e.target == head), key=Node.sort_key)
    states = []
    for node in predecessors:
        if node.service_name not in state.remaining_services:
            continue
        svc = catalog.get(node.service_name)
        if not includes(state.provided, node.cum_inputs):
            continue
        if request_node_affinity(state.remaining_required, node) != 1:
            continue
        states.append(
            SearchState(
                provided=state.provided,
                remaining_services=state.remaining_services - {svc.name},
                remaining_required=remove(state.remaining_required, svc.outputs),
                chain=(node,) + state.chain,
                invocations=(svc.name,) + state.invocations,
            )
        )
    return states


def find_plans(
    model: CompositionModel,
    catalog: Catalog,
    request: Request,
    max_plans: int | None = None,
) -> tuple[list[Plan], SearchStats]:
    """Breadth-first enumeration of every plan satisfying ``request``.

    An empty required set is satisfied by the empty plan. Plans come back
    canonically sorted (length, then service sequence); stats count distinct
    states generated, the initial state included. ``max_plans`` stops the
    search after that many plans, still reporting the states generated so
    far.
    """
    if model.catalog != catalog:
        raise ModelCatalogMismatchError(
            f"model was built from catalog {model.catalog_name!r}, not from {catalog.name!r}"
        )
    if max_plans is not None and max_plans <= 0:
        return [], SearchStats(1, 0)
    if not request.required:
        return [Plan((), ())], SearchStats(1, 1)

    initial = SearchState(request.provided, frozenset(catalog.names), request.required, (), ())
    seen: set[SearchState] = {initial}
    goals: list[Plan] = []
    queue: deque[SearchState] = deque()

    def admit(state: SearchState) -> bool:
        """Record a generated state; True when the plan budget is exhausted."""
        if state in seen:
            return False
        seen.add(state)
        if not state.remaining_required:
            goals.append(Plan(state.invocations, state.chain))
            return max_plans is not None and len(goals) >= max_plans
        queue.append(state)
        return False

    done = False
    for state in seed_states(model, catalog, request):
        if admit(state):
            done = True
            break
    while queue and not done:
        current = queue.popleft()
        for successor in extend_state(model, catalog, current):
            if admit(successor):
                done = True
                break
    return sorted(goals, key=_plan_sort_key), SearchStats(len(seen), len(goals))


def plans_to_dict(request: Request, plans: list[Plan], stats: SearchStats) -> dict:
    """JSON-ready form of a plan search result."""
    return {
        "request": {"provided": list(request.provided), "required": list(request.required)},
        "plans": [
            {
                "services": list(plan.services),
                "nodes": [
                    {"service": n.service_name, "ti": n.cum_inputs.canonical(), "to": n.cum_outputs.canonical()}
                    for n in plan.chain
                ],
            }
            for plan in plans
        ],
        "stats": {"states": stats.states_explored, "solutions": stats.solutions},
    }
