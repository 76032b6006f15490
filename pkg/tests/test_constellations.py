from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from imforest.constellations import (
    Constellation,
    biclique_model,
    check_interrupted,
    check_interrupted_bruteforce,
    check_zigzagged,
    check_zigzagged_bruteforce,
    constellation_from_doc,
    constellation_to_doc,
    death_star_constellation,
    death_star_grid_constellation,
    enumerate_routes,
    extend_model,
    find_interrupting_order,
    interval_of,
    is_d_ample,
    is_d_ample_bruteforce,
    normalize_ample,
    pd_grid_constellation,
    pd_grid_general_constellation,
    validate,
)
from imforest.errors import InputError
from imforest.graph import Graph, complete_bipartite
from imforest.imm import InducedMinorModel, verify_model


@st.composite
def constellations(draw, max_stars: int = 4, max_paths: int = 3, max_len: int = 9):
    k = draw(st.integers(1, max_stars))
    m = draw(st.integers(1, max_paths))
    paths, edges = [], []
    nxt = k
    for _ in range(m):
        length = draw(st.integers(k, max_len))
        p = list(range(nxt, nxt + length))
        nxt += length
        edges += list(zip(p, p[1:]))
        # every star sees at least one vertex of every path
        for r in range(k):
            edges.append((r, p[draw(st.integers(0, length - 1))]))
        for v in p:
            for r in range(k):
                if draw(st.integers(0, 4)) == 0:
                    edges.append((r, v))
        paths.append(p)
    return Constellation.make(Graph(nxt, sorted(set(edges))), list(range(k)), paths)


def test_fixtures_validate():
    for c in (
        pd_grid_constellation(4),
        pd_grid_general_constellation(5, 3, 2, 1),
        death_star_constellation(4),
        death_star_grid_constellation(4, 3, 2, 2),
    ):
        assert validate(c).ok, validate(c).reason


def test_validate_rejections():
    c = pd_grid_constellation(3)
    g = c.graph
    assert not validate(Constellation.make(g, c.stars[:1] * 2, c.paths))
    short = Constellation.make(g, c.stars, c.paths[:-1])
    assert "not a listed path" in validate(short).reason
    split = Constellation.make(g, c.stars, [c.paths[0][:1], c.paths[0][1:]] + list(c.paths[1:]))
    assert not validate(split)
    adj = Constellation.make(Graph(g.n, list(g.edges) + [(c.stars[0], c.stars[1])]), c.stars, c.paths)
    assert "adjacent" in validate(adj).reason


def test_doc_round_trip():
    c = death_star_grid_constellation(3, 2, 2, 1)
    assert constellation_from_doc(constellation_to_doc(c)) == c
    with pytest.raises(InputError):
        constellation_from_doc({"graph": {}})


def test_route_lengths():
    c = pd_grid_general_constellation(2, 1, 3, 3)
    assert min(r.edges for r in enumerate_routes(c)) == 5
    assert is_d_ample(c, 3) and not is_d_ample(c, 4)


def test_pd_grid_general_ampleness():
    assert is_d_ample(pd_grid_general_constellation(30, 16, 3, 3), 3)
    assert is_d_ample(pd_grid_general_constellation(6, 3, 3, 3), 3)
    assert not is_d_ample(pd_grid_general_constellation(6, 3, 3, 2), 3)


@settings(max_examples=120, deadline=None)
@given(constellations(), st.integers(0, 4))
def test_ampleness_matches_bruteforce(c, d):
    assert is_d_ample(c, d) == is_d_ample_bruteforce(c, d)


@settings(max_examples=120, deadline=None)
@given(constellations())
def test_interrupted_matches_bruteforce(c):
    assert check_interrupted(c) == check_interrupted_bruteforce(c)


@settings(max_examples=120, deadline=None)
@given(constellations(), st.integers(1, 3))
def test_zigzag_matches_bruteforce(c, q):
    assert check_zigzagged(c, q) == check_zigzagged_bruteforce(c, q)


@settings(max_examples=60, deadline=None)
@given(constellations(), st.integers(1, 3))
def test_zigzag_monotone_in_q(c, q):
    if check_zigzagged(c, q):
        assert check_zigzagged(c, q + 1)


def test_order_checks_on_fixtures():
    assert check_zigzagged(pd_grid_constellation(4), 1)
    assert not check_interrupted(pd_grid_constellation(4))
    assert find_interrupting_order(pd_grid_constellation(4)) is None
    assert check_interrupted(death_star_constellation(4))
    assert check_interrupted(death_star_grid_constellation(4, 3, 3, 3))
    with pytest.raises(InputError):
        check_zigzagged(pd_grid_constellation(3), 0)


def test_interval_of():
    c = pd_grid_general_constellation(3, 1, 3, 2)
    s = c.stars[1]
    anchor = c.star_neighbours_on(s, 0)[0]
    iv = interval_of(c, s, c.paths[0][anchor])
    assert iv.members == (c.paths[0][anchor],)
    with pytest.raises(InputError):
        interval_of(c, s, c.paths[0][0])


def test_interval_of_spans_repeated_neighbours():
    # star 0 sees path positions 1 and 3; star 1 sees position 6
    p = list(range(2, 10))
    g = Graph(10, list(zip(p, p[1:])) + [(0, 3), (0, 5), (1, 8)])
    c = Constellation.make(g, [0, 1], [p])
    iv = interval_of(c, 0, 3)
    assert iv.members == (3, 4, 5)


def test_normalize_ample():
    c = pd_grid_general_constellation(10, 2, 3, 3)
    n = normalize_ample(c, 3, 4)
    assert len(n.stars) == 4 and validate(n).ok
    assert is_d_ample(n, 3)
    with pytest.raises(InputError):
        normalize_ample(c, 3, 8)
    with pytest.raises(InputError):
        normalize_ample(c, 6, 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_biclique_model(n):
    m = biclique_model(pd_grid_constellation(n))
    assert verify_model(m).valid
    assert m.pattern.n == 2 * n


def _two_path_model(c):
    """K_{2,6} on paths 0 and 1 of a six-star constellation, leaving path 2 free."""
    pattern = complete_bipartite(2, 6)
    branch = {0: c.paths[0], 1: c.paths[1]}
    branch.update({2 + r: {s} for r, s in enumerate(c.stars)})
    return InducedMinorModel.build(c.graph, pattern, branch)


def test_extend_model_adds_valid_path():
    c = pd_grid_general_constellation(6, 3, 4, 4)
    m = _two_path_model(c)
    z = c.stars[2]
    u = 2 + 2
    out = extend_model(c, m, 2, z, u, 2)
    assert verify_model(out).valid
    assert out.pattern.n == m.pattern.n + 5
    assert out.pattern.has_edge(u, m.pattern.n + 2)


def test_extend_model_errors():
    c = pd_grid_general_constellation(6, 3, 4, 4)
    m = _two_path_model(c)
    z = c.stars[2]
    u = 2 + 2
    with pytest.raises(InputError):
        extend_model(c, m, 0, z, u, 2)  # path already used
    with pytest.raises(InputError):
        extend_model(c, m, 2, z, u, 0)
    with pytest.raises(InputError):
        extend_model(c, m, 2, c.stars[3], u, 2)
    with pytest.raises(InputError):
        extend_model(c, m, 2, z, u, 4)  # not 5-ample
