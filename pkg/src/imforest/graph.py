"""Undirected simple graphs on dense integer ids and the elementary predicates on them.

Vertex ids are always ``0..n-1``.  Neighbour iteration is ascending so that every
derived object (components, paths, certificates) is reproducible byte for byte.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import CertificateError, InputError

VertexSet = frozenset


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable undirected simple graph.

    ``labels`` is advisory metadata (role tags written by generators); no
    operation in the package reads it to decide anything.
    """

    __slots__ = ("_n", "_edges", "_adj", "_nbrs", "_labels")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), labels: Mapping[int, str] | None = None):
        if not isinstance(n, int) or n < 0:
            raise InputError(f"vertex count must be a non-negative integer, got {n!r}")
        adj = [0] * n
        canon = set()
        for e in edges:
            if len(e) != 2:
                raise InputError(f"edge {e!r} does not have two endpoints")
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {e!r} references a vertex outside 0..{n - 1}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            canon.add((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = n
        self._edges = tuple(sorted(canon))
        self._adj = tuple(adj)
        self._nbrs = tuple(tuple(_bits(a)) for a in adj)
        lab = {}
        for k, val in (labels or {}).items():
            k = int(k)
            if not 0 <= k < n:
                raise InputError(f"label for nonexistent vertex {k}")
            lab[k] = str(val)
        self._labels = dict(sorted(lab.items()))

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def labels(self) -> dict[int, str]:
        return dict(self._labels)

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def adj_mask(self, v: int) -> int:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def num_edges(self) -> int:
        return len(self._edges)

    def check_vertices(self, vs: Iterable[int]) -> frozenset[int]:
        out = frozenset(vs)
        for v in out:
            if not isinstance(v, int) or not 0 <= v < self._n:
                raise InputError(f"vertex {v!r} is not in 0..{self._n - 1}")
        return out

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph, relabelled in ascending order of old id."""
        keep = sorted(self.check_vertices(vertices))
        remap = {old: new for new, old in enumerate(keep)}
        edges = [(remap[u], remap[v]) for u, v in self._edges if u in remap and v in remap]
        labels = {remap[k]: val for k, val in self._labels.items() if k in remap}
        return Graph(len(keep), edges, labels), remap

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]`` (a permutation of 0..n-1)."""
        if sorted(perm) != list(range(self._n)):
            raise InputError("relabel needs a permutation of 0..n-1")
        edges = [(perm[u], perm[v]) for u, v in self._edges]
        labels = {perm[k]: val for k, val in self._labels.items()}
        return Graph(self._n, edges, labels)

    def with_labels(self, labels: Mapping[int, str]) -> "Graph":
        return Graph(self._n, self._edges, labels)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={len(self._edges)})"


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union; the i-th graph's vertices are shifted by the sizes before it."""
    edges: list[tuple[int, int]] = []
    labels: dict[int, str] = {}
    off = 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        labels.update({k + off: val for k, val in g.labels.items()})
        off += g.n
    return Graph(off, edges, labels)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(s: int, t: int) -> Graph:
    return Graph(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def empty_graph(n: int) -> Graph:
    return Graph(n)


# ---------------------------------------------------------------------------
# elementary predicates


def closed_neighborhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    s = g.check_vertices(s)
    m = mask_of(s)
    for v in s:
        m |= g.adj_mask(v)
    return frozenset(_bits(m))


def _components_mask(g: Graph, allowed: int) -> list[int]:
    comps = []
    rest = allowed
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = g.adj_mask(v) & allowed & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def components(g: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Connected components of ``g - removed``, ordered by minimum vertex id."""
    removed = g.check_vertices(removed)
    allowed = ((1 << g.n) - 1) & ~mask_of(removed)
    return [frozenset(_bits(c)) for c in _components_mask(g, allowed)]


def is_connected_set(g: Graph, s: Iterable[int]) -> bool:
    m = mask_of(g.check_vertices(s))
    if not m:
        return False
    return len(_components_mask(g, m)) == 1


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(_components_mask(g, (1 << g.n) - 1)) == 1


def induced_edge_count(g: Graph, s: Iterable[int]) -> int:
    m = mask_of(s)
    return sum(bin(g.adj_mask(v) & m).count("1") for v in _bits(m)) // 2


def is_path(g: Graph, s: Iterable[int]) -> bool:
    """True iff ``g[s]`` is a simple path (one vertex counts)."""
    s = g.check_vertices(s)
    if not s:
        raise InputError("is_path needs a nonempty vertex set")
    m = mask_of(s)
    if any(bin(g.adj_mask(v) & m).count("1") > 2 for v in s):
        return False
    return is_connected_set(g, s) and induced_edge_count(g, s) == len(s) - 1


def is_forest(g: Graph) -> bool:
    return g.num_edges() == g.n - len(_components_mask(g, (1 << g.n) - 1))


def is_tree(g: Graph) -> bool:
    return g.n > 0 and is_connected(g) and g.num_edges() == g.n - 1


def _bfs_dist(g: Graph, src: int) -> tuple[list[int], list[int]]:
    dist = [-1] * g.n
    parent = [-1] * g.n
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        for w in g.neighbors(u):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent[w] = u
                q.append(w)
    return dist, parent


def shortest_cycle(g: Graph) -> list[int] | None:
    """A shortest cycle as a vertex sequence, or ``None`` for forests.

    BFS from every vertex; ties broken by (length, start vertex, closing edge).
    """
    best: list[int] | None = None
    for s in g.vertices():
        dist, parent = _bfs_dist(g, s)
        for u, v in g.edges:
            if dist[u] < 0 or dist[v] < 0:
                continue
            if parent[u] == v or parent[v] == u:
                continue
            length = dist[u] + dist[v] + 1
            if best is not None and length >= len(best):
                continue
            pu, pv = [u], [v]
            while pu[-1] != s:
                pu.append(parent[pu[-1]])
            while pv[-1] != s:
                pv.append(parent[pv[-1]])
            if set(pu[:-1]) & set(pv[:-1]):
                continue
            best = list(reversed(pu)) + pv[:-1]
    return best


def girth(g: Graph) -> int | float:
    cyc = shortest_cycle(g)
    return math.inf if cyc is None else len(cyc)


def has_kst(g: Graph, s: int, t: int) -> bool:
    """Whether ``g`` has K_{s,t} as a (not necessarily induced) subgraph."""
    if s < 1 or t < 1:
        raise InputError("biclique sides must be at least 1")
    if s > t:
        s, t = t, s
    eligible = [v for v in g.vertices() if g.degree(v) >= t]

    def extend(start: int, chosen: int, common: int) -> bool:
        if chosen == s:
            return bin(common).count("1") >= t
        for i in range(start, len(eligible)):
            v = eligible[i]
            nc = common & g.adj_mask(v)
            if bin(nc).count("1") >= t and extend(i + 1, chosen + 1, nc):
                return True
        return False

    return extend(0, 0, (1 << g.n) - 1)


def has_biclique_subgraph(g: Graph, t: int) -> bool:
    if t < 1:
        raise InputError("t must be at least 1")
    return has_kst(g, t, t)


def contract_model(g: Graph, partition: Sequence[Iterable[int]]) -> Graph:
    """Quotient by disjoint connected sets; vertices outside every set are deleted."""
    sets = [g.check_vertices(p) for p in partition]
    seen = 0
    owner: dict[int, int] = {}
    for i, p in enumerate(sets):
        m = mask_of(p)
        if not p:
            raise CertificateError(f"set {i} is empty", i)
        if m & seen:
            raise CertificateError(f"set {i} overlaps an earlier set", i)
        if not is_connected_set(g, p):
            raise CertificateError(f"set {i} is not connected", i)
        seen |= m
        for v in p:
            owner[v] = i
    edges = set()
    for u, v in g.edges:
        a, b = owner.get(u), owner.get(v)
        if a is not None and b is not None and a != b:
            edges.add((min(a, b), max(a, b)))
    return Graph(len(sets), edges)


# ---------------------------------------------------------------------------
# rooted trees


@dataclass(frozen=True)
class RootedTree:
    tree: Graph
    root: int
    parent: tuple[int, ...]
    depth: tuple[int, ...] = field(repr=False)
    order: tuple[int, ...] = field(repr=False)  # BFS order from the root

    def children(self, v: int) -> tuple[int, ...]:
        return tuple(w for w in self.tree.neighbors(v) if self.parent[w] == v and w != self.root)

    def lca(self, u: int, v: int) -> int:
        while self.depth[u] > self.depth[v]:
            u = self.parent[u]
        while self.depth[v] > self.depth[u]:
            v = self.parent[v]
        while u != v:
            u, v = self.parent[u], self.parent[v]
        return u

    def is_ancestor(self, u: int, v: int) -> bool:
        """u is a (not necessarily strict) ancestor of v."""
        while self.depth[v] > self.depth[u]:
            v = self.parent[v]
        return u == v

    def subtree(self, x: int) -> frozenset[int]:
        out = {x}
        stack = [x]
        while stack:
            u = stack.pop()
            for w in self.children(u):
                out.add(w)
                stack.append(w)
        return frozenset(out)

    def path(self, u: int, v: int) -> list[int]:
        """Vertex sequence of the unique u--v path."""
        a = self.lca(u, v)
        left = [u]
        while left[-1] != a:
            left.append(self.parent[left[-1]])
        right = [v]
        while right[-1] != a:
            right.append(self.parent[right[-1]])
        return left + right[-2::-1]


def rooted(g: Graph, root: int) -> RootedTree:
    if not is_tree(g):
        raise InputError("rooted() needs a tree")
    if not 0 <= root < g.n:
        raise InputError(f"root {root} is not a vertex")
    dist, parent = _bfs_dist(g, root)
    parent[root] = -1
    order = sorted(g.vertices(), key=lambda v: (dist[v], v))
    return RootedTree(g, root, tuple(parent), tuple(dist), tuple(order))


def tree_path(g: Graph, u: int, v: int) -> list[int] | None:
    """A shortest u--v path (ascending-id BFS), or None if disconnected."""
    dist, parent = _bfs_dist(g, u)
    if dist[v] < 0:
        return None
    out = [v]
    while out[-1] != u:
        out.append(parent[out[-1]])
    return out[::-1]


def bits(mask: int) -> list[int]:
    return _bits(mask)
