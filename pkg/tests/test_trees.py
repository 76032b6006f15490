from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from imforest.graph import Graph, is_tree
from imforest.trees import free_trees, iter_free_trees, tree_canonical_form

from .conftest import to_nx, trees

KNOWN_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


def _prufer_decode(seq: tuple[int, ...], n: int) -> Graph:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    edges.append((u, v))
    return Graph(n, edges)


def _brute_force_count(n: int) -> int:
    """Independent route: all labelled trees via Prüfer codes, deduplicated by isomorphism."""
    if n <= 2:
        return 1
    reps: list[nx.Graph] = []
    for seq in itertools.product(range(n), repeat=n - 2):
        h = to_nx(_prufer_decode(seq, n))
        if not any(nx.is_isomorphic(h, r) for r in reps):
            reps.append(h)
    return len(reps)


@pytest.mark.parametrize("n", range(1, 8))
def test_counts_against_brute_force(n):
    assert len(free_trees(n)) == _brute_force_count(n)


@pytest.mark.parametrize("n", range(1, 11))
def test_counts_against_networkx_and_sequence(n):
    got = len(free_trees(n))
    assert got == KNOWN_COUNTS[n - 1]
    if n >= 2:
        assert got == sum(1 for _ in nx.nonisomorphic_trees(n))


@pytest.mark.parametrize("n", range(1, 10))
def test_pairwise_non_isomorphic(n):
    ts = free_trees(n)
    assert all(is_tree(t) and t.n == n for t in ts)
    assert len({tree_canonical_form(t) for t in ts}) == len(ts)


def test_enumeration_is_deterministic():
    assert free_trees(8) == free_trees(8)
    assert [t.n for t in iter_free_trees(4)] == [1, 2, 3, 4, 4]


@settings(max_examples=60, deadline=None)
@given(trees(min_n=1, max_n=12), trees(min_n=1, max_n=12))
def test_canonical_form_decides_isomorphism(a, b):
    same = a.n == b.n and nx.is_isomorphic(to_nx(a), to_nx(b))
    assert (tree_canonical_form(a) == tree_canonical_form(b)) == same
