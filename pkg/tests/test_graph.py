import random

import pytest

from compograph.catalog_io import parse_catalog_text
from compograph.graph import (
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
from compograph.oracle import random_catalog
from compograph.types import Catalog, TypeSet, UnknownServiceError, card, includes, union

from conftest import N_S1, N_S2A, N_S2B, N_S4, N_S5A, N_S5B, WEATHER_EDGES, WEATHER_NODES


class TestInitialNode:
    def test_weather_initial(self, weather_catalog):
        assert initial_node(weather_catalog.get("s1")) == N_S1

    def test_s4_initial(self, weather_catalog):
        svc = weather_catalog.get("s4")
        assert initial_node(svc) == Node("s4", TypeSet.parse("zipcode"), TypeSet.parse("weather"))

    def test_cumulative_sets_start_as_own_sets(self, weather_catalog):
        for svc in weather_catalog:
            node = initial_node(svc)
            assert node.cum_inputs == svc.inputs
            assert node.cum_outputs == svc.outputs


class TestAttachCandidate:
    def test_feeding_service_attaches(self, weather_catalog):
        attached = attach_candidate(N_S1, weather_catalog.get("s2"))
        assert attached is not None
        edge, target = attached
        assert target == N_S2A
        assert edge == Edge(N_S1, N_S2A)

    def test_disjoint_inputs_block(self, weather_catalog):
        assert attach_candidate(N_S1, weather_catalog.get("s3")) is None

    def test_subsumed_outputs_block(self, weather_catalog):
        # s3 only produces latitude/longitude, which this node already has
        assert attach_candidate(N_S5A, weather_catalog.get("s3")) is None

    def test_same_service_always_blocked_by_subsumption(self, weather_catalog):
        for svc in weather_catalog:
            assert attach_candidate(initial_node(svc), svc) is None


class TestBuildModel:
    def test_weather_nodes_and_edges_exact(self, weather_model):
        assert set(weather_model.nodes) == WEATHER_NODES
        assert {(e.source, e.target) for e in weather_model.edges} == WEATHER_EDGES
        assert weather_model.initial == N_S1

    def test_single_service_catalog(self):
        catalog = parse_catalog_text("only : a -> b", default_name="solo")
        model = build_model(catalog, "only")
        assert model.nodes == (initial_node(catalog.get("only")),)
        assert model.edges == ()

    def test_no_consumer_of_initial_outputs(self):
        catalog = parse_catalog_text("a : x -> y\nb : z -> w\n", default_name="dead-end")
        model = build_model(catalog, "a")
        assert len(model.nodes) == 1
        assert model.edges == ()

    def test_unknown_initial_raises(self, weather_catalog):
        with pytest.raises(UnknownServiceError):
            build_model(weather_catalog, "s9")

    def test_initial_name_never_reappears(self, weather_model):
        s1_nodes = [n for n in weather_model.nodes if n.service_name == "s1"]
        assert s1_nodes == [weather_model.initial]

    def test_fixpoint_idempotent_on_weather(self, weather_model, weather_catalog):
        assert_fixpoint(weather_model, weather_catalog, "s1")

    def test_strict_output_growth_along_edges(self, weather_model):
        for edge in weather_model.edges:
            assert includes(edge.source.cum_inputs, edge.target.cum_inputs)
            assert includes(edge.source.cum_outputs, edge.target.cum_outputs)
            assert card(edge.target.cum_outputs) > card(edge.source.cum_outputs)

    def test_all_nodes_reachable_from_initial(self, weather_model):
        assert reachable_from_initial(weather_model) == set(weather_model.nodes)

    @pytest.mark.parametrize("seed", range(25))
    def test_random_models_sound(self, seed):
        catalog = random_catalog(seed, 1 + seed % 6, 1 + (seed * 3) % 6)
        init = catalog.names[seed % len(catalog.names)]
        model = build_model(catalog, init)
        assert check_model(model) == []
        assert reachable_from_initial(model) == set(model.nodes)
        assert_fixpoint(model, catalog, init)
        for edge in model.edges:
            assert card(edge.target.cum_outputs) > card(edge.source.cum_outputs)

    @pytest.mark.parametrize("seed", range(15))
    def test_monotone_under_catalog_growth(self, seed):
        full = random_catalog(seed, 2 + seed % 5, 2 + seed % 5)
        init = full.names[0]
        rng = random.Random(seed)
        kept = [svc for svc in full if svc.name == init or rng.random() < 0.5]
        sub = Catalog(full.name, tuple(kept))
        small = build_model(sub, init)
        big = build_model(full, init)
        assert set(small.nodes) <= set(big.nodes)


def assert_fixpoint(model, catalog, init_name):
    """One more full sweep over a built model must add nothing."""
    edges = set(model.edges)
    nodes = set(model.nodes)
    for node in model.nodes:
        for svc in catalog:
            if svc.name == init_name:
                continue
            attached = attach_candidate(node, svc)
            if attached is None:
                continue
            edge, target = attached
            assert edge in edges
            assert target in nodes


def reachable_from_initial(model):
    adjacency = {}
    for edge in model.edges:
        adjacency.setdefault(edge.source, []).append(edge.target)
    seen = {model.initial}
    stack = [model.initial]
    while stack:
        for nxt in adjacency.get(stack.pop(), []):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


class TestCheckModel:
    def test_built_model_is_clean(self, weather_model):
        assert check_model(weather_model) == []

    def test_dangling_node_is_one_violation(self, weather_model, weather_catalog):
        svc = weather_catalog.get("s2")
        stray = Node("s2", union(svc.inputs, TypeSet.parse("city")), union(svc.outputs, TypeSet.parse("city")))
        tampered = CompositionModel(
            weather_model.initial,
            weather_model.nodes + (stray,),
            weather_model.edges,
            weather_catalog,
        )
        violations = check_model(tampered)
        assert len(violations) == 1
        assert "no incoming edge" in violations[0]

    def test_non_union_edge_is_one_violation(self, weather_model, weather_catalog):
        # retarget the leaf edge (into the s4 node) at a padded copy of it
        bad_s4 = Node("s4", union(N_S4.cum_inputs, TypeSet.parse("bogus")), N_S4.cum_outputs)
        nodes = tuple(bad_s4 if n == N_S4 else n for n in weather_model.nodes)
        edges = tuple(Edge(e.source, bad_s4) if e.target == N_S4 else e for e in weather_model.edges)
        tampered = CompositionModel(weather_model.initial, nodes, edges, weather_catalog)
        violations = check_model(tampered)
        assert len(violations) == 1
        assert "cumulative inputs are not the union" in violations[0]

    def test_missing_initial_is_reported(self, weather_model, weather_catalog):
        others = tuple(n for n in weather_model.nodes if n != weather_model.initial)
        edges = tuple(e for e in weather_model.edges if weather_model.initial not in (e.source, e.target))
        tampered = CompositionModel(weather_model.initial, others, edges, weather_catalog)
        assert any("initial node" in v for v in check_model(tampered))


class TestExports:
    def test_dot_statement_counts(self, weather_model):
        dot = to_dot(weather_model)
        assert dot.startswith('digraph "weather-ws" {')
        assert sum(1 for line in dot.splitlines() if "[label=" in line) == 6
        assert sum(1 for line in dot.splitlines() if " -> " in line) == 5

    def test_dot_initial_node_doubled(self, weather_model):
        dot = to_dot(weather_model)
        assert dot.count("peripheries=2") == 1
        assert '  n0 [label="s1\\nTi: city\\nTo: latitude,longitude", peripheries=2];' in dot

    def test_dot_single_node_model(self):
        catalog = parse_catalog_text("only : a -> b", default_name="solo")
        dot = to_dot(build_model(catalog, "only"))
        assert sum(1 for line in dot.splitlines() if "[label=" in line) == 1
        assert " -> " not in dot

    def test_dot_is_stable(self, weather_model):
        assert to_dot(weather_model) == to_dot(weather_model)

    def test_model_dict_schema(self, weather_model):
        doc = model_to_dict(weather_model)
        assert set(doc) == {"initial", "nodes", "edges"}
        assert doc["initial"] == 0
        assert doc["nodes"][0] == {"service": "s1", "ti": "city", "to": "latitude,longitude"}
        assert doc["nodes"][5] == {
            "service": "s5",
            "ti": "city,latitude,longitude,road",
            "to": "latitude,longitude,zipcode",
        }
        assert doc["edges"] == [[0, 1], [0, 5], [1, 4], [5, 2], [5, 3]]
