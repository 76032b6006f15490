from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from imforest.errors import InputError
from imforest.families import death_star, pd_grid, t1
from imforest.graph import Graph, complete_bipartite, complete_graph, cycle_graph, disjoint_union, path_graph, star_graph
from imforest.imm import (
    InducedMinorModel,
    SearchBudget,
    Status,
    Violation,
    find_induced_minor,
    find_induced_minor_forest,
    is_induced_subgraph,
    model_from_doc,
    model_to_doc,
    verify_model,
)

from .conftest import forests, graphs, random_forest, to_nx


def _minors_oracle(host: Graph) -> list[nx.Graph]:
    """Every induced minor of `host` up to isomorphism, by exhaustive deletion and contraction."""
    seen: dict[str, list[nx.Graph]] = {}
    out: list[nx.Graph] = []
    todo = [to_nx(host)]
    while todo:
        g = todo.pop()
        key = nx.weisfeiler_lehman_graph_hash(g)
        bucket = seen.setdefault(key, [])
        if any(nx.is_isomorphic(g, h) for h in bucket):
            continue
        bucket.append(g)
        out.append(g)
        for v in list(g.nodes):
            h = g.copy()
            h.remove_node(v)
            todo.append(h)
        for u, v in list(g.edges):
            todo.append(nx.contracted_nodes(g, u, v, self_loops=False))
    return out


def _contains_oracle(host: Graph, pattern: Graph) -> bool:
    p = to_nx(pattern)
    return any(h.number_of_nodes() == p.number_of_nodes() and nx.is_isomorphic(h, p) for h in _minors_oracle(host))


def test_verify_model_examples():
    host = path_graph(3)
    ok = InducedMinorModel.build(host, path_graph(2), {0: {0, 1}, 1: {2}})
    assert verify_model(ok).valid
    k2k1 = Graph(3, [(0, 1)])
    bad = verify_model(InducedMinorModel.build(host, k2k1, {0: {0}, 1: {1}, 2: {2}}))
    assert bad.violation is Violation.EXTRA_EDGE and bad.pattern_vertices == (1, 2)
    c4 = cycle_graph(4)
    assert verify_model(InducedMinorModel.build(c4, path_graph(2), {0: {0, 2}, 1: {1}})).violation is Violation.DISCONNECTED
    assert verify_model(InducedMinorModel.build(host, path_graph(2), {0: {0, 1}, 1: {1, 2}})).violation is Violation.OVERLAP
    assert verify_model(InducedMinorModel.build(host, path_graph(2), {0: {0}})).violation is Violation.KEYS
    assert verify_model(InducedMinorModel.build(host, path_graph(2), {0: {0}, 1: set()})).violation is Violation.EMPTY
    assert verify_model(InducedMinorModel.build(host, path_graph(2), {0: {0}, 1: {2}})).violation is Violation.MISSING_EDGE
    with pytest.raises(InputError):
        verify_model(InducedMinorModel.build(host, path_graph(2), {0: {0}, 1: {9}}))


def test_model_doc_round_trip():
    m = InducedMinorModel.build(path_graph(3), path_graph(2), {0: {0, 1}, 1: {2}})
    assert model_from_doc(model_to_doc(m)) == m
    with pytest.raises(InputError):
        model_from_doc({"host": {}})


@pytest.mark.parametrize(
    "host,pattern,expected",
    [
        (cycle_graph(5), cycle_graph(4), True),
        (cycle_graph(4), complete_graph(3), True),
        (path_graph(6), star_graph(3), False),
        (pd_grid(2), complete_bipartite(2, 2), True),
        (complete_graph(5), Graph(2), False),
        (death_star(3), complete_bipartite(2, 2), True),
        (star_graph(4), Graph(4), True),
    ],
)
def test_known_containments(host, pattern, expected):
    r = find_induced_minor(host, pattern)
    assert r.found is expected
    if r.found:
        assert verify_model(r.model).valid


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6, p=0.45), graphs(max_n=4, p=0.5))
def test_search_matches_exhaustive_oracle(host, pattern):
    r = find_induced_minor(host, pattern)
    assert r.status is not Status.BUDGET_EXHAUSTED
    assert r.found == _contains_oracle(host, pattern)
    if r.found:
        assert verify_model(r.model).valid


@settings(max_examples=60, deadline=None)
@given(forests(max_n=9), forests(max_n=5))
def test_forest_dp_agrees_with_generic(host, pattern):
    a = find_induced_minor(host, pattern)
    b = find_induced_minor_forest(host, pattern)
    assert a.found == b.found
    if b.found:
        assert verify_model(b.model).valid


@pytest.mark.parametrize("seed", range(20))
def test_forest_dp_random_pairs(seed):
    import random

    rng = random.Random(seed)
    host = random_forest(rng.randint(6, 14), rng)
    pattern = random_forest(rng.randint(2, 6), rng)
    a = find_induced_minor(host, pattern)
    b = find_induced_minor_forest(host, pattern)
    assert a.found == b.found


def test_forest_dp_rejects_non_forest_pattern():
    with pytest.raises(InputError):
        find_induced_minor_forest(path_graph(4), cycle_graph(3))


def test_budget_exhaustion_is_distinct():
    r = find_induced_minor(pd_grid(4), t1(2).graph, SearchBudget(max_nodes=5))
    assert r.status is Status.BUDGET_EXHAUSTED and r.model is None
    with pytest.raises(InputError):
        SearchBudget(max_nodes=0)


def test_induced_subgraph():
    r = is_induced_subgraph(path_graph(3), cycle_graph(5))
    assert r.found and verify_model(r.model).valid
    assert all(len(b) == 1 for b in r.model.branch.values())
    assert not is_induced_subgraph(path_graph(4), cycle_graph(4)).found
    assert is_induced_subgraph(Graph(2), disjoint_union(path_graph(1), path_graph(1))).found


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7, p=0.4), st.integers(1, 4))
def test_induced_subgraph_vs_networkx(host, k):
    pattern = path_graph(k)
    gm = nx.algorithms.isomorphism.GraphMatcher(to_nx(host), to_nx(pattern))
    assert is_induced_subgraph(pattern, host).found == gm.subgraph_is_isomorphic()
