from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from imforest.errors import CertificateError, InputError
from imforest.graph import (
    Graph,
    closed_neighborhood,
    complete_bipartite,
    components,
    contract_model,
    cycle_graph,
    disjoint_union,
    girth,
    has_biclique_subgraph,
    has_kst,
    is_connected_set,
    is_forest,
    is_path,
    is_tree,
    path_graph,
    rooted,
    shortest_cycle,
    star_graph,
    tree_path,
)
from imforest.io import (
    canonical_dumps,
    from_edgelist,
    graph_from_doc,
    graph_hash,
    graph_to_doc,
    load_graph,
    to_dot,
    to_edgelist,
)

from .conftest import graphs, to_nx, trees


def test_edges_are_canonical():
    g = Graph(4, [(2, 1), (1, 2), (3, 0)])
    assert g.edges == ((0, 3), (1, 2))
    assert g.num_edges() == 2


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 5)], [(0, 1, 2)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(InputError):
        Graph(3, edges)


def test_negative_n_rejected():
    with pytest.raises(InputError):
        Graph(-1)


def test_labels_do_not_affect_hash():
    a = Graph(2, [(0, 1)], {0: "x"})
    b = Graph(2, [(0, 1)])
    assert graph_hash(a) == graph_hash(b)


def test_doc_round_trip_and_bytes():
    g = Graph(5, [(3, 4), (0, 1), (1, 2)], {2: "mid"})
    text = canonical_dumps(graph_to_doc(g))
    assert text.endswith("\n") and " " not in text
    h = graph_from_doc(graph_to_doc(g))
    assert h == g and h.labels == g.labels
    assert canonical_dumps(graph_to_doc(h)) == text


@pytest.mark.parametrize("doc", [{}, {"n": "3", "edges": []}, {"n": 2, "edges": [[0]]}, {"n": 2, "edges": [[0, True]]}])
def test_malformed_docs(doc):
    with pytest.raises(InputError):
        graph_from_doc(doc)


def test_edgelist_round_trip(tmp_path):
    g = cycle_graph(5)
    assert from_edgelist(to_edgelist(g)) == g
    assert from_edgelist("# comment\n0 1\n\n1 2 # trailing\n", n=4).n == 4
    with pytest.raises(InputError):
        from_edgelist("0 x\n")
    p = tmp_path / "g.txt"
    p.write_text(to_edgelist(g))
    assert load_graph(p) == g
    q = tmp_path / "g.json"
    q.write_text(canonical_dumps(graph_to_doc(g)))
    assert load_graph(q) == g


def test_dot_lists_every_edge():
    g = path_graph(3)
    dot = to_dot(g)
    assert dot.startswith("graph G {") and "0 -- 1;" in dot and "1 -- 2;" in dot


def test_induced_relabels_ascending():
    g = path_graph(5)
    h, remap = g.induced([4, 2, 3])
    assert remap == {2: 0, 3: 1, 4: 2}
    assert h.edges == ((0, 1), (1, 2))


def test_disjoint_union_shifts():
    g = disjoint_union(path_graph(2), cycle_graph(3))
    assert g.n == 5 and g.edges == ((0, 1), (2, 3), (2, 4), (3, 4))


def test_closed_neighborhood_and_components():
    g = path_graph(6)
    assert closed_neighborhood(g, [2]) == {1, 2, 3}
    assert components(g, [2]) == [frozenset({0, 1}), frozenset({3, 4, 5})]
    assert is_connected_set(g, [3, 4]) and not is_connected_set(g, [1, 3])


def test_is_path_and_tree():
    assert is_path(path_graph(4), range(4))
    assert not is_path(star_graph(3), range(4))
    assert not is_path(cycle_graph(4), range(4))
    assert is_tree(star_graph(3)) and is_forest(Graph(3, [(0, 1)])) and not is_tree(Graph(3, [(0, 1)]))


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=9))
def test_girth_matches_networkx(g):
    cyc = shortest_cycle(g)
    ref = nx.girth(to_nx(g))
    assert girth(g) == ref
    if cyc is not None:
        assert len(set(cyc)) == len(cyc)
        assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


def _brute_kst(g: Graph, s: int, t: int) -> bool:
    for a in combinations(g.vertices(), s):
        common = set(g.vertices()) - set(a)
        for v in a:
            common &= set(g.neighbors(v))
        if len(common) >= t:
            return True
    return False


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=10, p=0.5))
def test_biclique_matches_brute_force(g):
    for t in (1, 2, 3):
        assert has_biclique_subgraph(g, t) == _brute_kst(g, t, t)
    assert has_kst(g, 2, 3) == _brute_kst(g, 2, 3)


def test_biclique_examples():
    assert has_biclique_subgraph(complete_bipartite(3, 3), 3)
    assert not has_biclique_subgraph(complete_bipartite(2, 3), 3)
    assert has_kst(complete_bipartite(2, 3), 2, 3)


def test_contract_model_quotient():
    g = path_graph(6)
    q = contract_model(g, [[0, 1], [2, 3], [4, 5]])
    assert q.edges == ((0, 1), (1, 2))
    with pytest.raises(CertificateError):
        contract_model(g, [[0, 1], [1, 2]])


@settings(max_examples=50, deadline=None)
@given(trees(min_n=2, max_n=15))
def test_tree_paths_and_lca(t):
    rt = rooted(t, 0)
    h = to_nx(t)
    for u in t.vertices():
        for v in t.vertices():
            p = tree_path(t, u, v)
            assert p == nx.shortest_path(h, u, v)
            assert rt.path(u, v) == p
    lca = rt.lca(t.n - 1, t.n // 2)
    assert rt.is_ancestor(lca, t.n - 1) and rt.is_ancestor(lca, t.n // 2)
