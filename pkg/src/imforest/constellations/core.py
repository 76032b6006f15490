"""Constellations: validation, routes, ampleness, order checks, intervals, model extension."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Iterator, Sequence

from ..errors import InputError
from ..families import (
    death_star,
    death_star_grid,
    death_star_grid_layout,
    death_star_layout,
    pd_grid_general,
    pd_grid_layout,
)
from ..graph import Graph, complete_bipartite, components, mask_of
from ..imm.model import InducedMinorModel
from ..io import graph_from_doc, graph_to_doc


@dataclass(frozen=True)
class Constellation:
    """A graph with an ordered star list and a list of path vertex sequences.

    ``stars`` order is the total order on the stars (first = smallest).
    """

    graph: Graph
    stars: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]
    _where: dict[int, tuple[int, int]] = field(default_factory=dict, compare=False, repr=False)
    _entries: list[list[tuple[int, int]]] = field(default_factory=list, compare=False, repr=False)

    def __post_init__(self) -> None:
        self.graph.check_vertices(self.stars)
        for p in self.paths:
            self.graph.check_vertices(p)
        where = {}
        for i, p in enumerate(self.paths):
            for j, v in enumerate(p):
                where[v] = (i, j)
        object.__setattr__(self, "_where", where)
        rank = {s: r for r, s in enumerate(self.stars)}
        entries = []
        for p in self.paths:
            row = []
            for j, v in enumerate(p):
                for w in self.graph.neighbors(v):
                    if w in rank:
                        row.append((j, rank[w]))
            entries.append(row)
        object.__setattr__(self, "_entries", entries)

    @classmethod
    def make(cls, graph: Graph, stars: Sequence[int], paths: Sequence[Sequence[int]]) -> "Constellation":
        return cls(graph, tuple(stars), tuple(tuple(p) for p in paths))

    def star(self, rank: int) -> int:
        return self.stars[rank]

    def rank(self, star: int) -> int:
        try:
            return self.stars.index(star)
        except ValueError:
            raise InputError(f"{star} is not a star") from None

    def where(self, v: int) -> tuple[int, int]:
        """(path index, position) of a path vertex."""
        try:
            return self._where[v]
        except KeyError:
            raise InputError(f"vertex {v} is not on any path") from None

    def entries(self, path_index: int) -> list[tuple[int, int]]:
        """Sorted (position, star rank) pairs: the star neighbours along a path."""
        return self._entries[path_index]

    def star_neighbours_on(self, star: int, path_index: int) -> list[int]:
        r = self.rank(star)
        return [pos for pos, s in self.entries(path_index) if s == r]

    def adjacent_stars(self, v: int) -> list[int]:
        """Star ranks adjacent to a path vertex."""
        sset = set(self.stars)
        return sorted(self.rank(w) for w in self.graph.neighbors(v) if w in sset)

    def sub(self, star_ranks: Sequence[int], path_indices: Sequence[int]) -> "Constellation":
        """Induced sub-constellation on the given stars (in the given order) and paths."""
        keep = [self.stars[r] for r in star_ranks]
        for i in path_indices:
            keep.extend(self.paths[i])
        g, remap = self.graph.induced(keep)
        return Constellation.make(g, [remap[s] for s in keep[: len(star_ranks)]],
                                  [[remap[v] for v in self.paths[i]] for i in path_indices])


# ---------------------------------------------------------------------------
# documents and fixtures


def constellation_to_doc(c: Constellation) -> dict[str, Any]:
    return {"graph": graph_to_doc(c.graph), "stars": list(c.stars), "paths": [list(p) for p in c.paths]}


def constellation_from_doc(doc: Any) -> Constellation:
    if not isinstance(doc, dict) or not {"graph", "stars", "paths"} <= set(doc):
        raise InputError("constellation document needs 'graph', 'stars' and 'paths'")
    g = graph_from_doc(doc["graph"])
    try:
        stars = [int(s) for s in doc["stars"]]
        paths = [[int(v) for v in p] for p in doc["paths"]]
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed constellation: {exc}") from exc
    return Constellation.make(g, stars, paths)


def pd_grid_constellation(n: int) -> Constellation:
    return pd_grid_general_constellation(n, n, 1, 0)


def pd_grid_general_constellation(stars: int, paths: int, spacing: int = 1, padding: int = 0) -> Constellation:
    g = pd_grid_general(stars, paths, spacing, padding)
    s, p = pd_grid_layout(stars, paths, spacing, padding)
    return Constellation.make(g, s, p)


def death_star_constellation(h: int) -> Constellation:
    g = death_star(h)
    s, p = death_star_layout(h)
    return Constellation.make(g, s, p)


def death_star_grid_constellation(height: int, paths: int, spacing: int = 1, padding: int = 0) -> Constellation:
    g = death_star_grid(height, paths, spacing, padding)
    s, p = death_star_grid_layout(height, paths, spacing, padding)
    return Constellation.make(g, s, p)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(c: Constellation) -> CheckResult:
    g = c.graph
    sset = set(c.stars)
    if len(sset) != len(c.stars):
        return CheckResult(False, "repeated star")
    for s in c.stars:
        for w in g.neighbors(s):
            if w in sset:
                return CheckResult(False, f"stars {min(s, w)} and {max(s, w)} are adjacent")
    seen: set[int] = set()
    for i, p in enumerate(c.paths):
        if not p:
            return CheckResult(False, f"path {i} is empty")
        for v in p:
            if v in sset:
                return CheckResult(False, f"path {i} contains star {v}")
            if v in seen:
                return CheckResult(False, f"vertex {v} appears twice in the path list")
            seen.add(v)
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                return CheckResult(False, f"path {i}: {a} and {b} are not adjacent")
    by_component = {frozenset(p) for p in c.paths}
    for comp in components(g, sset):
        if comp not in by_component:
            return CheckResult(False, f"component with minimum {min(comp)} is not a listed path")
    for i, p in enumerate(c.paths):
        inner = mask_of(p)
        edges = sum(bin(g.adj_mask(v) & inner).count("1") for v in p) // 2
        if edges != len(p) - 1:
            return CheckResult(False, f"path {i} is not an induced path")
    for r, s in enumerate(c.stars):
        for i in range(len(c.paths)):
            if not any(sr == r for _, sr in c.entries(i)):
                return CheckResult(False, f"star {s} has no neighbour on path {i}")
    return CheckResult(True)


# ---------------------------------------------------------------------------
# routes


@dataclass(frozen=True)
class Route:
    """Stars ``s`` and ``t`` (ranks) joined through positions lo..hi of one path."""

    s: int
    t: int
    path: int
    lo: int
    hi: int

    @property
    def edges(self) -> int:
        return self.hi - self.lo + 2


def enumerate_routes(c: Constellation) -> Iterator[Route]:
    """Every route, by brute force over pairs of star-neighbour positions."""
    for i in range(len(c.paths)):
        ent = c.entries(i)
        for a, (pa, sa) in enumerate(ent):
            for pb, sb in ent[a:]:
                if sa != sb:
                    yield Route(sa, sb, i, pa, pb)


def _stars_touching(c: Constellation, path: int, lo: int, hi: int) -> int:
    m = 0
    for pos, r in c.entries(path):
        if lo <= pos <= hi:
            m |= 1 << r
    return m


def _minimal_routes(c: Constellation) -> Iterator[tuple[Route, int]]:
    """Routes that can be minimal for their endpoint pair, with the mask of star
    ranks adjacent to their interior.  Scanning right from each entry stops
    when the starting star reappears (later routes contain a shorter one)."""
    for i in range(len(c.paths)):
        ent = c.entries(i)
        for a, (pa, sa) in enumerate(ent):
            seen = 0
            for pb, sb in ent[a:]:
                seen |= 1 << sb
                if pb != pa and sb == sa:
                    break
                if sb != sa:
                    yield Route(sa, sb, i, pa, pb), seen | _same_pos(ent, pb)


def _same_pos(ent: list[tuple[int, int]], pos: int) -> int:
    m = 0
    for p, r in ent:
        if p == pos:
            m |= 1 << r
    return m


def is_d_ample(c: Constellation, d: int) -> bool:
    """No route on <= d+1 edges, and no star neighbour within distance < d of a path end."""
    if d < 0:
        raise InputError("d must be >= 0")
    return weakly_ample(c, d) and ends_clear(c, d)


def weakly_ample(c: Constellation, d: int) -> bool:
    for i in range(len(c.paths)):
        ent = c.entries(i)
        for (pa, sa), (pb, sb) in zip(ent, ent[1:]):
            if sa != sb and pb - pa + 2 <= d + 1:
                return False
    return True


def ends_clear(c: Constellation, d: int) -> bool:
    for i, p in enumerate(c.paths):
        for pos, _ in c.entries(i):
            if pos < d or pos > len(p) - 1 - d:
                return False
    return True


def is_d_ample_bruteforce(c: Constellation, d: int) -> bool:
    if any(r.edges <= d + 1 for r in enumerate_routes(c)):
        return False
    return ends_clear(c, d)


def normalize_ample(c: Constellation, d: int, s: int) -> Constellation:
    """Drop, for every path end, the star with the neighbour closest to it; keep the first ``s`` others."""
    if s < 1 or len(c.stars) < s + 2 * len(c.paths):
        raise InputError(f"need at least s + 2*paths = {s + 2 * len(c.paths)} stars, have {len(c.stars)}")
    if not weakly_ample(c, d):
        raise InputError(f"constellation is not {d}-ample")
    dropped: set[int] = set()
    for i in range(len(c.paths)):
        ent = c.entries(i)
        first = min(ent)
        last = max(ent)
        dropped.add(first[1])
        dropped.add(last[1])
    keep = [r for r in range(len(c.stars)) if r not in dropped][:s]
    return c.sub(keep, list(range(len(c.paths))))


# ---------------------------------------------------------------------------
# order checks


def check_interrupted(c: Constellation) -> bool:
    """Every route between x and y is adjacent to every z later than both."""
    k = len(c.stars)
    full = (1 << k) - 1
    for route, seen in _minimal_routes(c):
        top = max(route.s, route.t)
        later = full & ~((1 << (top + 1)) - 1)
        if later & ~seen:
            return False
    return True


def check_zigzagged(c: Constellation, q: int) -> bool:
    """Every route leaves fewer than q strictly-between stars non-adjacent."""
    if q < 1:
        raise InputError("q must be >= 1")
    for route, seen in _minimal_routes(c):
        lo, hi = sorted((route.s, route.t))
        between = ((1 << hi) - 1) & ~((1 << (lo + 1)) - 1)
        if bin(between & ~seen).count("1") >= q:
            return False
    return True


def check_interrupted_bruteforce(c: Constellation) -> bool:
    k = len(c.stars)
    for r in enumerate_routes(c):
        seen = _stars_touching(c, r.path, r.lo, r.hi)
        top = max(r.s, r.t)
        for z in range(top + 1, k):
            if not seen >> z & 1:
                return False
    return True


def check_zigzagged_bruteforce(c: Constellation, q: int) -> bool:
    for r in enumerate_routes(c):
        seen = _stars_touching(c, r.path, r.lo, r.hi)
        lo, hi = sorted((r.s, r.t))
        missing = sum(1 for z in range(lo + 1, hi) if not seen >> z & 1)
        if missing >= q:
            return False
    return True


def reorder(c: Constellation, order: Sequence[int]) -> Constellation:
    """Same constellation with stars listed in ``order`` (a permutation of ranks)."""
    return Constellation.make(c.graph, [c.stars[r] for r in order], c.paths)


def find_interrupting_order(c: Constellation, max_stars: int = 8) -> tuple[int, ...] | None:
    """Brute force over all star orders (small constellations only)."""
    if len(c.stars) > max_stars:
        raise InputError(f"order search is limited to {max_stars} stars")
    for perm in permutations(range(len(c.stars))):
        if check_interrupted(reorder(c, perm)):
            return perm
    return None


def find_zigzag_order(c: Constellation, q: int, max_stars: int = 8) -> tuple[int, ...] | None:
    if len(c.stars) > max_stars:
        raise InputError(f"order search is limited to {max_stars} stars")
    for perm in permutations(range(len(c.stars))):
        if check_zigzagged(reorder(c, perm), q):
            return perm
    return None


# ---------------------------------------------------------------------------
# intervals and model extension


@dataclass(frozen=True)
class Interval:
    star: int
    anchor: int
    path: int
    lo: int
    hi: int
    members: tuple[int, ...]


def interval_of(c: Constellation, star: int, anchor: int) -> Interval:
    """Maximal subpath around ``anchor`` whose ends see ``star`` and which sees no other star."""
    r = c.rank(star)
    if not c.graph.has_edge(star, anchor):
        raise InputError(f"{anchor} is not adjacent to star {star}")
    pi, pos = c.where(anchor)
    p = c.paths[pi]
    others: dict[int, bool] = {}
    seesme: dict[int, bool] = {}
    for q, s in c.entries(pi):
        if s == r:
            seesme[q] = True
        else:
            others[q] = True
    if pos in others:
        raise InputError(f"{anchor} is also adjacent to another star")
    lo = pos
    while lo - 1 >= 0 and (lo - 1) not in others:
        lo -= 1
    hi = pos
    while hi + 1 < len(p) and (hi + 1) not in others:
        hi += 1
    while lo not in seesme:
        lo += 1
    while hi not in seesme:
        hi -= 1
    return Interval(star, anchor, pi, lo, hi, tuple(p[lo:hi + 1]))


def extend_model(
    c: Constellation,
    m: InducedMinorModel,
    path_index: int,
    z: int,
    u: int,
    ell: int,
    *,
    check_ample: bool = True,
) -> InducedMinorModel:
    """Hang a fresh (2ell+1)-vertex pattern path from ``u`` using a path the model avoids.

    New pattern vertices get ids ``m.pattern.n ..`` in path order; the middle one
    is adjacent to ``u``.
    """
    if ell < 1:
        raise InputError("ell must be >= 1")
    if m.host != c.graph:
        raise InputError("model host is not the constellation graph")
    if not 0 <= path_index < len(c.paths):
        raise InputError(f"no path {path_index}")
    if u not in m.branch:
        raise InputError(f"pattern vertex {u} not in the model")
    if z not in m.branch[u]:
        raise InputError(f"star {z} is not in the branch set of {u}")
    if z not in set(c.stars):
        raise InputError(f"{z} is not a star")
    if check_ample and not is_d_ample(c, ell + 1):
        raise InputError(f"constellation is not {ell + 1}-ample")
    path = c.paths[path_index]
    if m.used() & set(path):
        raise InputError(f"path {path_index} is already used by the model")
    ns = c.star_neighbours_on(z, path_index)
    if not ns:
        raise InputError(f"star {z} has no neighbour on path {path_index}")
    iv = interval_of(c, z, path[ns[0]])
    if iv.lo - ell < 0 or iv.hi + ell >= len(path):
        raise InputError("not enough room around the interval on the free path")
    before = [path[i] for i in range(iv.lo - ell, iv.lo)]
    after = [path[i] for i in range(iv.hi + 1, iv.hi + 1 + ell)]
    base = m.pattern.n
    sets = [{v} for v in before] + [set(iv.members)] + [{v} for v in after]
    edges = list(m.pattern.edges)
    edges.extend((base + i, base + i + 1) for i in range(2 * ell))
    edges.append((u, base + ell))
    pattern = Graph(base + 2 * ell + 1, edges)
    branch = dict(m.branch)
    for i, s in enumerate(sets):
        branch[base + i] = frozenset(s)
    return InducedMinorModel(m.host, pattern, branch)


def biclique_model(c: Constellation) -> InducedMinorModel:
    """K_{|L|,|S|} with one branch set per path (ids first) and one per star (ids after)."""
    pattern = complete_bipartite(len(c.paths), len(c.stars))
    branch = {i: frozenset(p) for i, p in enumerate(c.paths)}
    branch.update({len(c.paths) + j: frozenset({s}) for j, s in enumerate(c.stars)})
    return InducedMinorModel(c.graph, pattern, branch)
