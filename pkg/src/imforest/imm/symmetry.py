"""Pattern symmetry breaking for the generic search.

For a base order ``a_0, a_1, ...`` of the pattern vertices we compute the
orbit of ``a_i`` under the automorphisms fixing ``a_0 .. a_{i-1}``.  Any model
can be rewritten by an automorphism so that, at every level, the branch set
of ``a_i`` has a smaller minimum host id than the branch set of every other
member of that orbit.  The search enforces those "min(X_a) < min(X_b)" pairs.
"""

from __future__ import annotations

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from ..graph import Graph


def _nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    h.add_edges_from(g.edges)
    return h


def _maps_to(h: nx.Graph, pinned: list[int], a: int, b: int) -> bool:
    """Is there an automorphism fixing ``pinned`` pointwise and sending a to b?"""
    left = h.copy()
    right = h.copy()
    for i, p in enumerate(pinned):
        left.nodes[p]["pin"] = i
        right.nodes[p]["pin"] = i
    left.nodes[a]["pin"] = "t"
    right.nodes[b]["pin"] = "t"
    gm = GraphMatcher(left, right, node_match=lambda x, y: x.get("pin") == y.get("pin"))
    return gm.is_isomorphic()


def _refine(g: Graph, pinned: list[int]) -> list[int]:
    """Colour refinement with pinned vertices individualised; returns colours."""
    colour = [0] * g.n
    for i, p in enumerate(pinned):
        colour[p] = i + 1
    while True:
        sig = [(colour[v], tuple(sorted(colour[w] for w in g.neighbors(v)))) for v in g.vertices()]
        index = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [index[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def orbit_constraints(g: Graph) -> list[tuple[int, int]]:
    """Pairs ``(a, b)``: some minimum-host-id model has min(X_a) < min(X_b)."""
    h = _nx(g)
    pinned: list[int] = []
    pairs: list[tuple[int, int]] = []
    for a in g.vertices():
        colour = _refine(g, pinned)
        candidates = [b for b in g.vertices() if b != a and b not in pinned and colour[b] == colour[a]]
        if not candidates and len(set(colour)) == g.n:
            break
        for b in candidates:
            if _maps_to(h, pinned, a, b):
                pairs.append((a, b))
        pinned.append(a)
    return pairs
