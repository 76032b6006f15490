"""Generic induced-minor search.

The search labels every host vertex with a pattern vertex (meaning "belongs to
that branch set") or with DEL (deleted).  Each host vertex carries a bitmask
domain of still-possible labels.  After every decision we propagate:

* a host edge between two labelled vertices must be a pattern edge (or join
  two vertices with the same label);
* pattern vertices of degree <= 1 get single-vertex branch sets, which loses no
  generality (shrink such a branch set to one vertex touching the neighbour);
* a deleted vertex could not simply join a neighbouring branch set of a
  pattern vertex of degree >= 2 (take a model with maximal such branch sets);
* pattern automorphisms are broken by ordering the minimum host ids of
  branch sets along a stabiliser chain (see :mod:`.symmetry`);
* every label keeps at least one candidate, the fixed vertices of a label stay
  inside one component of that label's candidates (the rest are pruned), and
  every pattern edge stays realisable between those components.

Variables are chosen by smallest domain, ties by lowest host id; values are
tried in ascending pattern id, then DEL.  Everything is deterministic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum

from ..graph import Graph
from .model import InducedMinorModel, verify_model
from .symmetry import orbit_constraints

DEFAULT_MAX_NODES = 2_000_000
DEFAULT_MAX_MILLIS = 300_000


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = DEFAULT_MAX_NODES
    max_millis: int = DEFAULT_MAX_MILLIS

    def __post_init__(self) -> None:
        from ..errors import InputError

        if self.max_nodes <= 0 or self.max_millis <= 0:
            raise InputError("budgets must be positive")


class Status(str, Enum):
    FOUND = "found"
    NOT_CONTAINED = "not-contained"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class SearchResult:
    status: Status
    model: InducedMinorModel | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


class BudgetExhausted(Exception):
    pass


class Counter:
    """Shared node/time accounting; raises :class:`BudgetExhausted` when spent."""

    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.deadline = time.monotonic() + budget.max_millis / 1000.0

    def tick(self, amount: int = 1) -> None:
        self.nodes += amount
        if self.nodes > self.budget.max_nodes:
            raise BudgetExhausted
        if self.nodes & 255 == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted


def _flood(adj: list[int], allowed: int, seed: int) -> int:
    comp = seed & allowed
    frontier = comp
    while frontier:
        grow = 0
        f = frontier
        while f:
            low = f & -f
            grow |= adj[low.bit_length() - 1]
            f ^= low
        grow &= allowed & ~comp
        comp |= grow
        frontier = grow
    return comp


def _neighbourhood(adj: list[int], mask: int) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= adj[low.bit_length() - 1]
        mask ^= low
    return out


class _Engine:
    def __init__(self, host: Graph, pattern: Graph, counter: Counter):
        self.host = host
        self.pattern = pattern
        self.counter = counter
        n, k = host.n, pattern.n
        self.n, self.k = n, k
        self.DEL = k
        self.adj = [host.adj_mask(v) for v in range(n)]
        self.allow = []
        for a in range(k):
            m = (1 << a) | (1 << k)
            for b in pattern.neighbors(a):
                m |= 1 << b
            self.allow.append(m)
        self.single = [pattern.degree(a) <= 1 for a in range(k)]
        self.pedges = list(pattern.edges)
        self.lt = orbit_constraints(pattern)
        self.order = sorted(range(n), key=lambda v: (-host.degree(v), v))
        self.closed = [m & ~(1 << k) for m in self.allow]
        self.growable = sum(1 << a for a in range(k) if not self.single[a])

    # -- propagation -----------------------------------------------------

    def _assign_effects(self, dom: list[int], u: int, queue: list[int]) -> bool:
        a = dom[u].bit_length() - 1
        if a == self.DEL:
            return True
        bit = 1 << a
        changed: list[int] = []
        allow = self.allow[a]
        m = self.adj[u]
        while m:
            low = m & -m
            w = low.bit_length() - 1
            m ^= low
            nd = dom[w] & allow
            if nd != dom[w]:
                dom[w] = nd
                changed.append(w)
        if self.single[a]:
            for w in range(self.n):
                if w != u and dom[w] & bit:
                    dom[w] &= ~bit
                    changed.append(w)
        for w in changed:
            d = dom[w]
            if d == 0:
                return False
            if d & (d - 1) == 0:
                queue.append(w)
        return True

    def _global(self, dom: list[int], queue: list[int]) -> bool:
        k, n = self.k, self.n
        avail = [0] * k
        fixed = [0] * k
        for u in range(n):
            d = dom[u]
            vb = 1 << u
            if d & (d - 1) == 0:
                a = d.bit_length() - 1
                if a < k:
                    fixed[a] |= vb
                    avail[a] |= vb
                continue
            d &= ~(1 << k)
            while d:
                low = d & -d
                avail[low.bit_length() - 1] |= vb
                d ^= low
        comp = [0] * k
        adj = self.adj
        for a in range(k):
            av = avail[a]
            if not av:
                return False
            fx = fixed[a]
            if fx:
                c = _flood(adj, av, fx & -fx)
                if fx & ~c:
                    return False
                out = av & ~c
                if out:
                    bit = ~(1 << a)
                    while out:
                        low = out & -out
                        w = low.bit_length() - 1
                        out ^= low
                        dom[w] &= bit
                        d = dom[w]
                        if d == 0:
                            return False
                        if d & (d - 1) == 0:
                            queue.append(w)
                comp[a] = c
            else:
                comp[a] = av
        reach: dict[int, int] = {}
        for a, b in self.pedges:
            if comp[a].bit_count() > comp[b].bit_count():
                a, b = b, a
            r = reach.get(a)
            if r is None:
                r = reach[a] = _neighbourhood(adj, comp[a])
            if not r & comp[b]:
                return False
        for a, b in self.lt:
            low = avail[a] & -avail[a]
            upto = (low << 1) - 1
            out = avail[b] & upto
            if out:
                avail[b] &= ~upto
                if out & fixed[b] or not avail[b]:
                    return False
                bit = ~(1 << b)
                while out:
                    low = out & -out
                    w = low.bit_length() - 1
                    out ^= low
                    dom[w] &= bit
                    d = dom[w]
                    if d == 0:
                        return False
                    if d & (d - 1) == 0:
                        queue.append(w)
        return self._maximality(dom, queue)

    def _maximality(self, dom: list[int], queue: list[int]) -> bool:
        k = self.k
        delbit = 1 << k
        labels = delbit - 1
        grow = self.growable
        closed = self.closed
        adj = self.adj
        for v in range(self.n):
            d = dom[v]
            if not d & delbit:
                continue
            touched = 0
            possible = 0
            m = adj[v]
            while m:
                low = m & -m
                m ^= low
                dw = dom[low.bit_length() - 1]
                possible |= dw
                if dw & (dw - 1) == 0:
                    touched |= dw
            touched &= grow
            if not touched:
                continue
            possible &= labels
            while touched:
                low = touched & -touched
                touched ^= low
                if not possible & ~closed[low.bit_length() - 1]:
                    if d == delbit:
                        return False
                    d &= ~delbit
                    dom[v] = d
                    if d & (d - 1) == 0:
                        queue.append(v)
                    break
        return True

    def propagate(self, dom: list[int], queue: list[int]) -> bool:
        done: set[int] = set()
        while True:
            while queue:
                u = queue.pop()
                if u in done:
                    continue
                done.add(u)
                if not self._assign_effects(dom, u, queue):
                    return False
            if not self._global(dom, queue):
                return False
            if not [u for u in queue if u not in done]:
                queue.clear()
                return True

    # -- search ----------------------------------------------------------

    def run(self) -> list[int] | None:
        dom = [(1 << (self.k + 1)) - 1] * self.n
        queue: list[int] = []
        if not self.propagate(dom, queue):
            return None
        return self._search(dom)

    def _search(self, dom: list[int]) -> list[int] | None:
        best, best_size = -1, 1 << 30
        for u in self.order:
            d = dom[u]
            if d & (d - 1):
                size = d.bit_count()
                if size < best_size:
                    best, best_size = u, size
                    if size == 2:
                        break
        if best < 0:
            return dom
        d = dom[best]
        while d:
            low = d & -d
            d ^= low
            self.counter.tick()
            child = list(dom)
            child[best] = low
            if self.propagate(child, [best]):
                got = self._search(child)
                if got is not None:
                    return got
        return None


def _quick_reject(host: Graph, pattern: Graph) -> bool:
    return pattern.n > host.n or pattern.num_edges() > host.num_edges()


def find_induced_minor(host: Graph, pattern: Graph, budget: SearchBudget | None = None) -> SearchResult:
    """Decide whether ``pattern`` is an induced minor of ``host``.

    ``Found`` results carry a model that has passed :func:`verify_model`.
    """
    counter = Counter(budget or SearchBudget())
    if pattern.n == 0:
        return SearchResult(Status.FOUND, InducedMinorModel(host, pattern, {}), 0)
    if _quick_reject(host, pattern):
        return SearchResult(Status.NOT_CONTAINED, None, 0)
    engine = _Engine(host, pattern, counter)
    try:
        dom = engine.run()
    except BudgetExhausted:
        return SearchResult(Status.BUDGET_EXHAUSTED, None, counter.nodes)
    except RecursionError:
        return SearchResult(Status.BUDGET_EXHAUSTED, None, counter.nodes)
    if dom is None:
        return SearchResult(Status.NOT_CONTAINED, None, counter.nodes)
    branch: dict[int, set[int]] = {a: set() for a in range(pattern.n)}
    for u, d in enumerate(dom):
        a = d.bit_length() - 1
        if a < pattern.n:
            branch[a].add(u)
    model = InducedMinorModel.build(host, pattern, branch)
    verdict = verify_model(model)
    if not verdict.valid:
        from ..errors import InvariantError

        raise InvariantError(f"search produced an invalid model: {verdict.message}", "find_induced_minor")
    return SearchResult(Status.FOUND, model, counter.nodes)
