"""Composition-model graph: nodes that carry cumulative input/output type sets.

Construction starts from one chosen initial service and keeps attaching
services until nothing new can be added. A service attaches behind a node
when the node's cumulative outputs feed at least one of its inputs and it
still contributes an output type the node does not already provide. The
second condition makes cumulative outputs grow strictly along every edge,
so the graph is acyclic and construction terminates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .types import Catalog, Service, TypeSet, UnknownServiceError, includes, intersect, union


@dataclass(frozen=True)
class Node:
    """One service occurrence plus the types gathered along the path to it.

    Identity is the full triple: the same service can appear several times
    with different cumulative sets, and those are distinct nodes.
    """

    service_name: str
    cum_inputs: TypeSet
    cum_outputs: TypeSet

    def sort_key(self) -> tuple[str, str, str]:
        return (self.service_name, self.cum_inputs.canonical(), self.cum_outputs.canonical())


@dataclass(frozen=True)
class Edge:
    source: Node
    target: Node

    def sort_key(self) -> tuple[str, ...]:
        return self.source.sort_key() + self.target.sort_key()


@dataclass(frozen=True)
class CompositionModel:
    """Directed acyclic graph of feasible invocation orderings.

    Nodes and edges are stored deduplicated in canonical order so that every
    export is byte-reproducible. The source catalog travels with the model;
    that keeps :func:`check_model` self-contained.
    """

    initial: Node
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    catalog: Catalog

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(sorted(set(self.nodes), key=Node.sort_key)))
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges), key=Edge.sort_key)))

    @property
    def catalog_name(self) -> str:
        return self.catalog.name

    def node_index(self) -> dict[Node, int]:
        return {node: i for i, node in enumerate(self.nodes)}


def initial_node(service: Service) -> Node:
    """The root node: cumulative sets start as the service's own sets."""
    return Node(service.name, service.inputs, service.outputs)


def attach_candidate(node: Node, service: Service) -> tuple[Edge, Node] | None:
    """Try to invoke ``service`` after ``node``.

    Succeeds when the node's cumulative outputs overlap the service's inputs
    and the service's outputs are not already subsumed by what the node
    provides. Returns the connecting edge and the new node, or None.
    """
    if not intersect(node.cum_outputs, service.inputs):
        return None
    if includes(service.outputs, node.cum_outputs):
        return None
    target = Node(
        service.name,
        union(node.cum_inputs, service.inputs),
        union(node.cum_outputs, service.outputs),
    )
    return Edge(node, target), target


def build_model(catalog: Catalog, init_name: str) -> CompositionModel:
    """Grow the graph from the initial service until no new edge appears.

    Sweeps all (node, service) pairs in canonical order and repeats the sweep
    until it adds nothing; the edge set only grows, so this reaches the least
    fixpoint. The initial service itself is never re-attached.
    """
    init = initial_node(catalog.get(init_name))
    others = [svc for svc in catalog.services if svc.name != init_name]
    nodes: set[Node] = {init}
    edges: set[Edge] = set()
    changed = True
    while changed:
        changed = False
        for node in sorted(nodes, key=Node.sort_key):
            for svc in others:
                attached = attach_candidate(node, svc)
                if attached is None:
                    continue
                edge, target = attached
                if edge not in edges:
                    edges.add(edge)
                    nodes.add(target)
                    changed = True
    return CompositionModel(init, tuple(nodes), tuple(edges), catalog)


def _label(node: Node) -> str:
    return f"({node.service_name} ti={node.cum_inputs.canonical()} to={node.cum_outputs.canonical()})"


def check_model(model: CompositionModel) -> list[str]:
    """Validate model invariants; returns one message per violation."""
    problems: list[str] = []
    node_set = set(model.nodes)
    if model.initial not in node_set:
        problems.append("initial node is not in the node set")
    targets = {edge.target for edge in model.edges}
    for node in model.nodes:
        try:
            svc = model.catalog.get(node.service_name)
        except UnknownServiceError:
            problems.append(f"node {_label(node)}: service not in catalog {model.catalog_name!r}")
            continue
        if not includes(svc.inputs, node.cum_inputs):
            problems.append(f"node {_label(node)}: cumulative inputs miss the service's own inputs")
        if not includes(svc.outputs, node.cum_outputs):
            problems.append(f"node {_label(node)}: cumulative outputs miss the service's own outputs")
        if node != model.initial and node not in targets:
            problems.append(f"node {_label(node)} has no incoming edge")
    for edge in model.edges:
        if edge.source == edge.target:
            problems.append(f"self-loop at {_label(edge.source)}")
            continue
        if edge.source not in node_set or edge.target not in node_set:
            problems.append(f"edge {_label(edge.source)} -> {_label(edge.target)} has an endpoint outside the node set")
            continue
        try:
            svc = model.catalog.get(edge.target.service_name)
        except UnknownServiceError:
            continue  # already reported on the node
        if not intersect(edge.source.cum_outputs, svc.inputs):
            problems.append(f"edge into {_label(edge.target)}: source outputs feed none of its inputs")
        if includes(svc.outputs, edge.source.cum_outputs):
            problems.append(f"edge into {_label(edge.target)}: target adds no new output type")
        if edge.target.cum_inputs != union(edge.source.cum_inputs, svc.inputs):
            problems.append(f"edge into {_label(edge.target)}: cumulative inputs are not the union")
        if edge.target.cum_outputs != union(edge.source.cum_outputs, svc.outputs):
            problems.append(f"edge into {_label(edge.target)}: cumulative outputs are not the union")
    return problems


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(model: CompositionModel) -> str:
    """Render the model as a DOT digraph; output is byte-stable per model."""
    index = model.node_index()
    lines = [f'digraph "{_dot_escape(model.catalog_name)}" {{']
    for i, node in enumerate(model.nodes):
        # escape each part first so the \n separators survive untouched
        parts = (
            node.service_name,
            f"Ti: {node.cum_inputs.canonical()}",
            f"To: {node.cum_outputs.canonical()}",
        )
        label = "\\n".join(_dot_escape(part) for part in parts)
        attrs = f'label="{label}"'
        if node == model.initial:
            attrs += ", peripheries=2"
        lines.append(f"  n{i} [{attrs}];")
    for edge in model.edges:
        lines.append(f"  n{index[edge.source]} -> n{index[edge.target]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def model_to_dict(model: CompositionModel) -> dict:
    """JSON-ready form: initial node index, node list, edge index pairs."""
    index = model.node_index()
    return {
        "initial": index[model.initial],
        "nodes": [
            {"service": n.service_name, "ti": n.cum_inputs.canonical(), "to": n.cum_outputs.canonical()}
            for n in model.nodes
        ],
        "edges": [[index[e.source], index[e.target]] for e in model.edges],
    }
