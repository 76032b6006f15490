"""Tree canonical forms, isomorphism maps and free-tree enumeration."""

from __future__ import annotations

from typing import Iterator

from .errors import InputError
from .graph import Graph, components


class Canon:
    """Memoised AHU canonical strings for rooted subtrees of a forest.

    ``rooted(v, parent)`` is the canonical string of the subtree hanging from
    ``v`` when the edge to ``parent`` is cut (``parent=None``: whole component).
    """

    def __init__(self, g: Graph):
        self.g = g
        self._memo: dict[tuple[int, int | None], str] = {}

    def rooted(self, v: int, parent: int | None = None) -> str:
        key = (v, parent)
        got = self._memo.get(key)
        if got is not None:
            return got
        # iterative post-order to survive long paths
        stack = [(v, parent, False)]
        while stack:
            x, p, ready = stack.pop()
            if (x, p) in self._memo:
                continue
            kids = [w for w in self.g.neighbors(x) if w != p]
            if ready:
                parts = sorted(self._memo[(w, x)] for w in kids)
                self._memo[(x, p)] = "(" + "".join(parts) + ")"
                continue
            stack.append((x, p, True))
            stack.extend((w, x, False) for w in kids if (w, x) not in self._memo)
        return self._memo[key]

    def centers(self, comp: frozenset[int] | set[int]) -> list[int]:
        """One or two centres of the tree induced on ``comp`` (leaf peeling)."""
        comp = set(comp)
        deg = {v: sum(1 for w in self.g.neighbors(v) if w in comp) for v in comp}
        layer = sorted(v for v in comp if deg[v] <= 1)
        left = len(comp)
        while left > 2:
            left -= len(layer)
            nxt = []
            for v in layer:
                for w in self.g.neighbors(v):
                    if w in comp:
                        deg[w] -= 1
                        if deg[w] == 1:
                            nxt.append(w)
                deg[v] = -1
            layer = sorted(nxt)
        return sorted(v for v in comp if deg[v] >= 0)

    def free(self, comp: frozenset[int] | set[int]) -> str:
        cs = self.centers(comp)
        if len(cs) == 1:
            return "V" + self.rooted(cs[0])
        a, b = cs
        return "E" + "".join(sorted((self.rooted(a, b), self.rooted(b, a))))

    def oriented_map(self, r1: int, p1: int | None, r2: int, p2: int | None) -> dict[int, int]:
        """Isomorphism between the subtree at (r1, p1) and the one at (r2, p2)."""
        if self.rooted(r1, p1) != self.rooted(r2, p2):
            raise InputError("subtrees are not isomorphic")
        out: dict[int, int] = {}
        stack = [(r1, p1, r2, p2)]
        while stack:
            x, px, y, py = stack.pop()
            out[x] = y
            kx = sorted((w for w in self.g.neighbors(x) if w != px), key=lambda w: (self.rooted(w, x), w))
            ky = sorted((w for w in self.g.neighbors(y) if w != py), key=lambda w: (self.rooted(w, y), w))
            stack.extend((a, x, b, y) for a, b in zip(kx, ky))
        return out

    def component_map(self, c1: frozenset[int], c2: frozenset[int]) -> dict[int, int]:
        """Isomorphism between two isomorphic tree components."""
        if self.free(c1) != self.free(c2):
            raise InputError("components are not isomorphic")
        a, b = self.centers(c1), self.centers(c2)
        if len(a) == 1:
            return self.oriented_map(a[0], None, b[0], None)
        x1, y1 = a
        for x2, y2 in ((b[0], b[1]), (b[1], b[0])):
            if self.rooted(x1, y1) == self.rooted(x2, y2) and self.rooted(y1, x1) == self.rooted(y2, x2):
                out = self.oriented_map(x1, y1, x2, y2)
                out.update(self.oriented_map(y1, x1, y2, x2))
                return out
        raise InputError("components are not isomorphic")  # pragma: no cover


def tree_canonical_form(g: Graph) -> str:
    """Canonical string of a forest (sorted component forms, '+'-joined)."""
    c = Canon(g)
    return "+".join(sorted(c.free(comp) for comp in components(g)))


def _from_parent_list(parents: list[int]) -> Graph:
    return Graph(len(parents), [(p, v) for v, p in enumerate(parents) if p >= 0])


def free_trees(n: int) -> list[Graph]:
    """All trees on ``n`` vertices up to isomorphism, deterministic order.

    Grown one leaf at a time from the (n-1)-vertex trees, deduplicated by
    canonical form; each tree is relabelled in BFS order from its first
    centre so the output does not depend on the growth history.
    """
    if n < 1:
        raise InputError("n must be >= 1")
    level = {tree_canonical_form(Graph(1)): Graph(1)}
    for size in range(2, n + 1):
        nxt: dict[str, Graph] = {}
        for g in level.values():
            for v in g.vertices():
                h = Graph(size, list(g.edges) + [(v, size - 1)])
                form = tree_canonical_form(h)
                if form not in nxt:
                    nxt[form] = h
        level = nxt
    return [_normalise(level[k]) for k in sorted(level)]


def _normalise(g: Graph) -> Graph:
    c = Canon(g)
    root = c.centers(frozenset(g.vertices()))[0]
    order = [root]
    seen = {root}
    for v in order:
        kids = sorted((w for w in g.neighbors(v) if w not in seen), key=lambda w: (c.rooted(w, v), w))
        for w in kids:
            seen.add(w)
            order.append(w)
    pos = {v: i for i, v in enumerate(order)}
    return g.relabel([pos[v] for v in g.vertices()])


def iter_free_trees(max_n: int) -> Iterator[Graph]:
    for n in range(1, max_n + 1):
        yield from free_trees(n)
