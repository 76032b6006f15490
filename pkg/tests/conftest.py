from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from imforest.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    h.add_edges_from(g.edges)
    return h


def random_tree(n: int, rng: random.Random) -> Graph:
    return Graph(n, [(i, rng.randrange(i)) for i in range(1, n)])


def random_forest(n: int, rng: random.Random, p_cut: float = 0.2) -> Graph:
    edges = [(i, rng.randrange(i)) for i in range(1, n) if rng.random() > p_cut]
    return Graph(n, edges)


@st.composite
def graphs(draw, max_n: int = 9, p: float = 0.35):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def trees(draw, min_n: int = 1, max_n: int = 12):
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    return Graph(n, [(i, p) for i, p in zip(range(1, n), parents)])


@st.composite
def forests(draw, max_n: int = 10):
    n = draw(st.integers(1, max_n))
    edges = []
    for i in range(1, n):
        p = draw(st.integers(-1, i - 1))
        if p >= 0:
            edges.append((i, p))
    return Graph(n, edges)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
