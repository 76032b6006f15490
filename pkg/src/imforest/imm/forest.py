"""Induced-minor containment between forests by dynamic programming.

Root every host tree at its smallest vertex.  In a model of a forest inside a
forest, the branch sets of one pattern component P form a subtree of the
host; its highest vertex lies in some X_h, which roots P at h.  Every other
pattern vertex c then has a parent p(c), the pattern vertex whose branch set
contains the host parent of c's highest vertex.

For a host vertex v and an oriented pattern vertex (h, p) we compute the set
of reachable values "v in X_h, parent direction p": a count vector of the
pattern children of h whose whole pattern subtree is realised below v,
packed together with a count vector of completed pattern components
(isomorphic components and isomorphic child subtrees are counted, not named).
A second set covers "v deleted".  Values are packed integers with a guard
bit per field, so combining two children is one addition plus one mask test.
Only one representative per isomorphism class is computed; the model is
rebuilt top-down and mapped onto the actual vertices with tree isomorphisms.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from ..errors import InputError, InvariantError
from ..graph import Graph, components, is_forest
from ..trees import Canon
from .model import InducedMinorModel, verify_model
from .search import BudgetExhausted, Counter, SearchBudget, SearchResult, Status


@dataclass
class _Packing:
    """Count vector with per-field guard bits."""

    offsets: list[int]
    width: int
    k: int  # added before testing the guard bits
    guard: int
    full: int

    @classmethod
    def of(cls, mults: list[int]) -> "_Packing":
        offsets, off, k, guard, full = [], 0, 0, 0, 0
        for m in mults:
            w = m.bit_length() + 1
            offsets.append(off)
            k |= ((1 << (w - 1)) - 1 - m) << off
            guard |= 1 << (off + w - 1)
            full |= m << off
            off += w
        return cls(offsets, off, k, guard, full)


@dataclass
class _State:
    h: int
    p: int | None
    classes: list[list[int]]  # children of h grouped by rooted canonical form
    pack: _Packing
    kmask: int = 0
    gmask: int = 0


def _combine(a: set[int], b: set[int], k: int, g: int, counter: Counter) -> set[int]:
    counter.tick(len(a) * len(b) // 64 + 1)
    out = set()
    for x in a:
        for y in b:
            s = x + y
            if not (s + k) & g:
                out.add(s)
    return out


class _ForestDP:
    def __init__(self, host: Graph, pattern: Graph, counter: Counter):
        self.host, self.pattern, self.counter = host, pattern, counter
        self.canon = Canon(pattern)
        comps = components(pattern)
        forms: dict[str, int] = {}
        self.class_members: list[list[frozenset[int]]] = []
        for comp in comps:
            f = self.canon.free(comp)
            if f not in forms:
                forms[f] = len(self.class_members)
                self.class_members.append([])
            self.class_members[forms[f]].append(comp)
        self.mpack = _Packing.of([len(m) for m in self.class_members])
        self.comp_class: dict[int, int] = {}
        self.states: list[_State] = []
        self.index: dict[tuple[int, int | None], int] = {}
        for ci, members in enumerate(self.class_members):
            rep = members[0]
            for h in sorted(rep):
                self.comp_class[h] = ci
                for p in [None] + list(pattern.neighbors(h)):
                    kids: dict[str, list[int]] = {}
                    for c in pattern.neighbors(h):
                        if c != p:
                            kids.setdefault(self.canon.rooted(c, h), []).append(c)
                    classes = [kids[key] for key in sorted(kids)]
                    st = _State(h, p, classes, _Packing.of([len(c) for c in classes]))
                    self.index[(h, p)] = len(self.states)
                    self.states.append(st)
        self.sw = max((st.pack.width for st in self.states), default=0)
        self.smask = (1 << self.sw) - 1
        for st in self.states:
            st.kmask = (self.mpack.k << self.sw) | st.pack.k
            st.gmask = (self.mpack.guard << self.sw) | st.pack.guard
        self.dk = self.mpack.k << self.sw
        self.dg = self.mpack.guard << self.sw
        self.full_m = self.mpack.full << self.sw
        self.comp_unit = [1 << (off + self.sw) for off in self.mpack.offsets]
        # per state: (class offset unit, state index of the representative child)
        self.child_links = [
            [(1 << st.pack.offsets[j], self.index[(cls[0], st.h)]) for j, cls in enumerate(st.classes)]
            for st in self.states
        ]
        self.top_states = [i for i, st in enumerate(self.states) if st.p is None]
        self._root_host()

    def _root_host(self) -> None:
        host = self.host
        self.parent = [-1] * host.n
        self.kids: list[list[int]] = [[] for _ in range(host.n)]
        self.post: list[int] = []
        self.roots: list[int] = []
        seen = [False] * host.n
        for r in host.vertices():
            if seen[r]:
                continue
            self.roots.append(r)
            seen[r] = True
            order = [r]
            for v in order:
                for w in host.neighbors(v):
                    if not seen[w]:
                        seen[w] = True
                        self.parent[w] = v
                        self.kids[v].append(w)
                        order.append(w)
            self.post.extend(reversed(order))

    # -- forward pass -------------------------------------------------------

    def _done(self, w: int, st_idx: int) -> set[int]:
        """M-parts of values of w in state st_idx whose children are all placed."""
        cache = self.done_cache[w]
        got = cache.get(st_idx)
        if got is None:
            full = self.states[st_idx].pack.full
            got = {val & ~self.smask for val in self.E[w].get(st_idx, ()) if val & self.smask == full}
            cache[st_idx] = got
        return got

    def _top_opts(self, w: int) -> set[int]:
        out = set(self.D[w])
        for i in self.top_states:
            unit = self.comp_unit[self.comp_class[self.states[i].h]]
            out.update(m + unit for m in self._done(w, i))
        return out

    def _state_opts(self, w: int, i: int) -> set[int]:
        out = set(self.D[w])
        out.update(self.E[w].get(i, ()))
        for unit, j in self.child_links[i]:
            out.update(m + unit for m in self._done(w, j))
        return out

    def run(self) -> bool:
        n = self.host.n
        self.E: list[dict[int, set[int]]] = [dict() for _ in range(n)]
        self.D: list[set[int]] = [set() for _ in range(n)]
        self.done_cache: list[dict[int, set[int]]] = [dict() for _ in range(n)]
        for v in self.post:
            d = {0}
            for w in self.kids[v]:
                d = _combine(d, self._top_opts(w), self.dk, self.dg, self.counter)
            self.D[v] = d
            ev = {}
            for i, st in enumerate(self.states):
                cur = {0}
                for w in self.kids[v]:
                    cur = _combine(cur, self._state_opts(w, i), st.kmask, st.gmask, self.counter)
                    if not cur:
                        break
                if cur:
                    ev[i] = cur
            self.E[v] = ev
        final = {0}
        for r in self.roots:
            final = _combine(final, self._top_opts(r), self.dk, self.dg, self.counter)
        return self.full_m in final

    # -- reconstruction -----------------------------------------------------

    def _split(self, options: list[dict[int, tuple]], target: int, k: int, g: int) -> list[tuple]:
        """Pick one tagged option per child summing to ``target`` (deterministic)."""
        stages: list[dict[int, tuple[int, tuple] | None]] = [{0: None}]
        for opts in options:
            nxt: dict[int, tuple[int, tuple]] = {}
            for x in sorted(stages[-1]):
                for y in sorted(opts):
                    s = x + y
                    if not (s + k) & g and s not in nxt:
                        nxt[s] = (x, opts[y])
            stages.append(nxt)
        if target not in stages[-1]:
            raise InvariantError("value not reachable during reconstruction", "forest-dp")
        picks = []
        cur = target
        for stage in reversed(stages[1:]):
            prev, tag = stage[cur]
            picks.append(tag)
            cur = prev
        picks.reverse()
        return picks

    def _tagged_top(self, w: int) -> dict[int, tuple]:
        out: dict[int, tuple] = {}
        for val in sorted(self.D[w]):
            out.setdefault(val, ("del", val))
        for i in self.top_states:
            unit = self.comp_unit[self.comp_class[self.states[i].h]]
            full = self.states[i].pack.full
            for val in sorted(self.E[w].get(i, ())):
                if val & self.smask == full:
                    out.setdefault((val & ~self.smask) + unit, ("top", i, val))
        return out

    def _tagged_state(self, w: int, i: int) -> dict[int, tuple]:
        out: dict[int, tuple] = {}
        for val in sorted(self.D[w]):
            out.setdefault(val, ("del", val))
        for val in sorted(self.E[w].get(i, ())):
            out.setdefault(val, ("ext", val))
        for j, (unit, ci) in enumerate(self.child_links[i]):
            full = self.states[ci].pack.full
            for val in sorted(self.E[w].get(ci, ())):
                if val & self.smask == full:
                    out.setdefault((val & ~self.smask) + unit, ("child", j, ci, val))
        return out

    def _build_deleted(self, v: int, val: int, comps: list) -> None:
        picks = self._split([self._tagged_top(w) for w in self.kids[v]], val, self.dk, self.dg)
        for w, tag in zip(self.kids[v], picks):
            self._build_top_or_del(w, tag, comps)

    def _build_top_or_del(self, w: int, tag: tuple, comps: list) -> None:
        if tag[0] == "del":
            self._build_deleted(w, tag[1], comps)
        else:
            _, i, val = tag
            sub = self._finish(w, i, val, comps)
            comps.append((self.comp_class[self.states[i].h], sub))

    def _build_state(self, v: int, i: int, val: int, comps: list) -> tuple[set[int], list]:
        st = self.states[i]
        picks = self._split([self._tagged_state(w, i) for w in self.kids[v]], val, st.kmask, st.gmask)
        hset = {v}
        placed: list[tuple[int, dict[int, set[int]]]] = []
        for w, tag in zip(self.kids[v], picks):
            kind = tag[0]
            if kind == "del":
                self._build_deleted(w, tag[1], comps)
            elif kind == "ext":
                hs, more = self._build_state(w, i, tag[1], comps)
                hset |= hs
                placed.extend(more)
            else:
                _, j, ci, cval = tag
                placed.append((j, self._finish(w, ci, cval, comps)))
        return hset, placed

    def _finish(self, w: int, i: int, val: int, comps: list) -> dict[int, set[int]]:
        """Branch sets for the whole oriented pattern subtree of state ``i`` topped at ``w``."""
        st = self.states[i]
        hset, placed = self._build_state(w, i, val, comps)
        out = {st.h: hset}
        used = [0] * len(st.classes)
        for j, sub in placed:
            cls = st.classes[j]
            actual = cls[used[j]]
            used[j] += 1
            mapping = self.canon.oriented_map(cls[0], st.h, actual, st.h)
            for x, hs in sub.items():
                out[mapping[x]] = hs
        return out

    def model(self) -> dict[int, set[int]]:
        comps: list = []
        picks = self._split([self._tagged_top(r) for r in self.roots], self.full_m, self.dk, self.dg)
        for r, tag in zip(self.roots, picks):
            self._build_top_or_del(r, tag, comps)
        branch: dict[int, set[int]] = {}
        used = [0] * len(self.class_members)
        for ci, sub in sorted(comps, key=lambda item: (item[0], min(min(s) for s in item[1].values()))):
            members = self.class_members[ci]
            actual = members[used[ci]]
            used[ci] += 1
            mapping = self.canon.component_map(members[0], actual)
            for x, hs in sub.items():
                branch[mapping[x]] = hs
        return branch


def find_induced_minor_forest(host: Graph, pattern: Graph, budget: SearchBudget | None = None) -> SearchResult:
    """Forest-in-forest induced-minor test; same contract as the generic search."""
    if not is_forest(host) or not is_forest(pattern):
        raise InputError("forest fast path needs forest host and pattern")
    counter = Counter(budget or SearchBudget())
    if pattern.n == 0:
        return SearchResult(Status.FOUND, InducedMinorModel(host, pattern, {}), 0)
    if pattern.n > host.n:
        return SearchResult(Status.NOT_CONTAINED, None, 0)
    dp = _ForestDP(host, pattern, counter)
    try:
        ok = dp.run()
    except BudgetExhausted:
        return SearchResult(Status.BUDGET_EXHAUSTED, None, counter.nodes)
    if not ok:
        return SearchResult(Status.NOT_CONTAINED, None, counter.nodes)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * host.n + 1000))
    try:
        branch = dp.model()
    finally:
        sys.setrecursionlimit(limit)
    model = InducedMinorModel.build(host, pattern, branch)
    verdict = verify_model(model)
    if not verdict.valid:
        raise InvariantError(f"forest search produced an invalid model: {verdict.message}", "forest-dp")
    return SearchResult(Status.FOUND, model, counter.nodes)
