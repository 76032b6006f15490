"""Claw-based negative witnesses, the T1-family test, and the forest classifier."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Any, Iterator, Sequence

from .errors import InconsistencyError, InputError
from .families import MAX_ELL, target_posi
from .graph import (
    Graph,
    closed_neighborhood,
    components,
    contract_model,
    is_connected_set,
    is_forest,
    is_path,
    is_tree,
    mask_of,
    shortest_cycle,
)
from .imm.forest import find_induced_minor_forest
from .imm.model import InducedMinorModel, model_to_doc
from .imm.search import BudgetExhausted, Counter, SearchBudget, Status
from .io import graph_hash

DEFAULT_EXHAUSTIVE_LIMIT = 25


@dataclass(frozen=True, order=True)
class Claw:
    center: int
    leaves: tuple[int, int, int]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset((self.center, *self.leaves))


def enumerate_claws(g: Graph) -> list[Claw]:
    """Every induced K_{1,3}, ordered by centre then leaf triple."""
    out = []
    for v in g.vertices():
        nbrs = sorted(g.neighbors(v))
        for trip in combinations(nbrs, 3):
            if not any(g.has_edge(a, b) for a, b in combinations(trip, 2)):
                out.append(Claw(v, trip))
    return out


def is_claw(g: Graph, vs: frozenset[int] | set[int]) -> bool:
    vs = set(vs)
    if len(vs) != 4:
        return False
    degs = sorted(sum(1 for w in g.neighbors(v) if w in vs) for v in vs)
    return degs == [1, 1, 1, 3]


def _require_tree(t: Graph) -> None:
    if not is_tree(t):
        raise InputError("input must be a tree")


def in_T1_family(t: Graph) -> bool:
    """A path, or a tree with a vertex whose removal leaves only paths."""
    _require_tree(t)
    if is_path(t, t.vertices()):
        return True
    for r in t.vertices():
        if all(is_path(t, comp) for comp in components(t, [r])):
            return True
    return False


def find_two_disjoint_claws(t: Graph) -> tuple[Claw, Claw] | None:
    """Two vertex-disjoint claws (first pair in claw order), or None."""
    _require_tree(t)
    claws = enumerate_claws(t)
    for a, b in combinations(claws, 2):
        if not a.vertices & b.vertices:
            return a, b
    return None


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class NpdWitness:
    """Three sets, each connected and not a path, pairwise separated by closed neighbourhoods."""

    a: frozenset[int]
    b: frozenset[int]
    c: frozenset[int]

    def sets(self) -> tuple[frozenset[int], ...]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class NdsWitness:
    a: Claw
    b: Claw
    c: Claw
    d: Claw
    p: tuple[int, ...]
    q: tuple[int, ...]
    bridge: tuple[int, int] | None


@dataclass(frozen=True)
class CycleWitness:
    cycle: tuple[int, ...]


Witness = NpdWitness | NdsWitness | CycleWitness


def _reach(g: Graph, allowed: set[int], sources: Sequence[int], targets: set[int]) -> tuple[int, ...] | None:
    """Shortest path (BFS, smallest ids first) inside ``allowed`` from a source to a target."""
    prev: dict[int, int | None] = {}
    queue = []
    for s in sorted(sources):
        if s in allowed and s not in prev:
            prev[s] = None
            queue.append(s)
    for v in queue:
        if v in targets:
            out = [v]
            while prev[out[-1]] is not None:
                out.append(prev[out[-1]])  # type: ignore[arg-type]
            return tuple(reversed(out))
        for w in sorted(g.neighbors(v)):
            if w in allowed and w not in prev:
                prev[w] = v
                queue.append(w)
    return None


def _connected_nonpath(g: Graph, vs: frozenset[int]) -> bool:
    return bool(vs) and is_connected_set(g, vs) and not is_path(g, vs)


def check_npd(g: Graph, w: NpdWitness) -> bool:
    sets = w.sets()
    if any(not _connected_nonpath(g, x) for x in sets):
        return False
    for i, x in enumerate(sets):
        others = [sets[j] for j in range(3) if j != i]
        nx = closed_neighborhood(g, x)
        if any(nx & o for o in others):
            return False
        allowed = set(g.vertices()) - nx
        if _reach(g, allowed, sorted(others[0]), set(others[1])) is None:
            return False
    return True


def check_npd_asteroidal(g: Graph, w: NpdWitness) -> bool:
    """Independent re-check: contract the three sets and test for an asteroidal triple."""
    sets = w.sets()
    if any(not _connected_nonpath(g, x) for x in sets):
        return False
    used = set().union(*sets)
    parts = [sorted(x) for x in sets] + [[v] for v in g.vertices() if v not in used]
    h = contract_model(g, parts)
    trio = (0, 1, 2)
    if any(h.has_edge(a, b) for a, b in combinations(trio, 2)):
        return False
    for third in trio:
        a, b = (t for t in trio if t != third)
        allowed = set(h.vertices()) - closed_neighborhood(h, [third])
        if _reach(h, allowed, [a], {b}) is None:
            return False
    return True


def check_nds(g: Graph, w: NdsWitness, mode: str = "theorem") -> bool:
    claws = (w.a, w.b, w.c, w.d)
    for cl in claws:
        if not is_claw(g, cl.vertices) or not all(g.has_edge(cl.center, x) for x in cl.leaves):
            return False
    for x, y in combinations(claws, 2):
        if x.vertices & y.vertices:
            return False
    ab = w.a.vertices | w.b.vertices
    cd = w.c.vertices | w.d.vertices
    for path, side, start, end in ((w.p, cd, w.a, w.b), (w.q, ab, w.c, w.d)):
        if not path or path[0] not in start.vertices or path[-1] not in end.vertices:
            return False
        if any(not g.has_edge(u, v) for u, v in zip(path, path[1:])) or len(set(path)) != len(path):
            return False
        if set(path) & closed_neighborhood(g, side):
            return False
    cross = sorted((u, v) for u in ab for v in g.neighbors(u) if v in cd)
    if len(cross) > 1:
        return False
    if cross:
        if w.bridge is None or tuple(sorted(w.bridge)) != tuple(sorted(cross[0])):
            return False
        centers = {cl.center for cl in claws}
        u, v = cross[0]
        if mode == "lemma":
            leaves_ab = set(w.a.leaves) | set(w.b.leaves)
            leaves_cd = set(w.c.leaves) | set(w.d.leaves)
            if not (u in leaves_ab and v in leaves_cd):
                return False
        elif u in centers or v in centers:
            return False
    elif w.bridge is not None:
        return False
    return True


# ---------------------------------------------------------------------------
# searches


def _chordless_cycles(g: Graph, counter: Counter) -> Iterator[frozenset[int]]:
    """Each induced cycle once, rooted at its minimum vertex."""
    for root in g.vertices():
        def extend(path: list[int], onpath: set[int]) -> Iterator[frozenset[int]]:
            last = path[-1]
            for w in sorted(g.neighbors(last)):
                counter.tick()
                if w < root or w in onpath:
                    continue
                # w may only touch path vertices at its ends
                touch = [u for u in path[1:-1] if g.has_edge(u, w)]
                if touch:
                    continue
                if len(path) >= 2 and g.has_edge(w, root):
                    if w > path[1]:
                        yield frozenset(path + [w])
                    continue
                yield from extend(path + [w], onpath | {w})

        yield from extend([root], {root})


def _budgeted(g: Graph, budget: SearchBudget | None, limit: int) -> Counter:
    if budget is None:
        budget = SearchBudget() if g.n > limit else SearchBudget(max_nodes=10**12, max_millis=10**9)
    return Counter(budget)


@dataclass(frozen=True)
class SearchOutcome:
    status: Status
    witness: Any = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


def _compatible_tuples(ok: list[int], k: int, counter: Counter) -> Iterator[tuple[int, ...]]:
    """Increasing index k-tuples that are pairwise compatible; ``ok[i]`` is the bitmask of partners of i."""
    def go(chosen: tuple[int, ...], allowed: int) -> Iterator[tuple[int, ...]]:
        if len(chosen) == k:
            yield chosen
            return
        while allowed:
            low = allowed & -allowed
            i = low.bit_length() - 1
            allowed ^= low
            counter.tick()
            yield from go(chosen + (i,), allowed & ok[i])

    yield from go((), (1 << len(ok)) - 1)


def find_npd_witness(g: Graph, budget: SearchBudget | None = None, limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> SearchOutcome:
    """Triples of disjoint claws (and induced cycles when ``g`` has cycles).

    Up to ``limit`` vertices the search is unbudgeted (exhaustive); above it
    the default node budget applies unless one is given.
    """
    counter = _budgeted(g, budget, limit)
    try:
        cands: list[frozenset[int]] = [c.vertices for c in enumerate_claws(g)]
        if not is_forest(g):
            cands.extend(sorted(_chordless_cycles(g, counter), key=lambda s: (len(s), sorted(s))))
        nbh = [closed_neighborhood(g, x) for x in cands]
        comp_cache: dict[int, dict[int, int]] = {}

        def comp_of(i: int) -> dict[int, int]:
            if i not in comp_cache:
                label = {}
                for k, comp in enumerate(components(g, nbh[i])):
                    for v in comp:
                        label[v] = k
                comp_cache[i] = label
            return comp_cache[i]

        def same_side(i: int, x: frozenset[int], y: frozenset[int]) -> bool:
            lab = comp_of(i)
            return lab[next(iter(x))] == lab[next(iter(y))]

        # partners: neither set meets the closed neighbourhood of the other
        ok = [mask_of(j for j in range(len(cands)) if j > i and not (nbh[i] & cands[j] or nbh[j] & cands[i]))
              for i in range(len(cands))]
        for i, j, k in _compatible_tuples(ok, 3, counter):
            a, b, c = cands[i], cands[j], cands[k]
            if same_side(i, b, c) and same_side(j, a, c) and same_side(k, a, b):
                return SearchOutcome(Status.FOUND, NpdWitness(a, b, c), counter.nodes)
    except BudgetExhausted:
        return SearchOutcome(Status.BUDGET_EXHAUSTED, None, counter.nodes)
    return SearchOutcome(Status.NOT_CONTAINED, None, counter.nodes)


def _nds_for(g: Graph, a: Claw, b: Claw, c: Claw, d: Claw, mode: str) -> NdsWitness | None:
    ab = a.vertices | b.vertices
    cd = c.vertices | d.vertices
    cross = [(u, v) for u in sorted(ab) for v in sorted(g.neighbors(u)) if v in cd]
    if len(cross) > 1:
        return None
    bridge = cross[0] if cross else None
    if bridge is not None:
        u, v = bridge
        if mode == "lemma":
            if u not in set(a.leaves) | set(b.leaves) or v not in set(c.leaves) | set(d.leaves):
                return None
        elif u in (a.center, b.center, c.center, d.center) or v in (a.center, b.center, c.center, d.center):
            return None
    allv = set(g.vertices())
    p = _reach(g, allv - closed_neighborhood(g, cd), sorted(a.vertices), set(b.vertices))
    if p is None:
        return None
    q = _reach(g, allv - closed_neighborhood(g, ab), sorted(c.vertices), set(d.vertices))
    if q is None:
        return None
    return NdsWitness(a, b, c, d, p, q, bridge)


def find_nds_witness(
    g: Graph, mode: str = "theorem", budget: SearchBudget | None = None, limit: int = DEFAULT_EXHAUSTIVE_LIMIT
) -> SearchOutcome:
    """Four disjoint claws split into pairs {A,B} and {C,D} with the two separated paths."""
    if mode not in ("lemma", "theorem"):
        raise InputError("mode must be 'lemma' or 'theorem'")
    counter = _budgeted(g, budget, limit)
    claws = enumerate_claws(g)
    try:
        verts = [c.vertices for c in claws]
        ok = [mask_of(j for j in range(len(claws)) if j > i and not verts[i] & verts[j]) for i in range(len(claws))]
        for quad in _compatible_tuples(ok, 4, counter):
            w, x, y, z = (claws[i] for i in quad)
            for pair in (((w, x), (y, z)), ((w, y), (x, z)), ((w, z), (x, y))):
                (a, b), (c, d) = pair
                found = _nds_for(g, a, b, c, d, mode)
                if found is not None:
                    return SearchOutcome(Status.FOUND, found, counter.nodes)
    except BudgetExhausted:
        return SearchOutcome(Status.BUDGET_EXHAUSTED, None, counter.nodes)
    return SearchOutcome(Status.NOT_CONTAINED, None, counter.nodes)


# ---------------------------------------------------------------------------
# classification


class Verdict(str, Enum):
    POSI = "posi"
    NEGA = "nega"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ClassificationResult:
    verdict: Verdict
    variant: str | None = None
    ell: int | None = None
    model: InducedMinorModel | None = None
    witness: Any = None
    route: str | None = None  # how the witness was obtained

    @property
    def kind(self) -> str | None:
        if isinstance(self.witness, NpdWitness):
            return "npd"
        if isinstance(self.witness, NdsWitness):
            return "nds"
        if isinstance(self.witness, CycleWitness):
            return "cycle"
        return None


def _two_component_witness(f: Graph) -> NdsWitness | None:
    bad = []
    for comp in components(f):
        sub, remap = f.induced(comp)
        if not in_T1_family(sub):
            back = {new: old for old, new in remap.items()}
            pair = find_two_disjoint_claws(sub)
            assert pair is not None
            bad.append([Claw(back[cl.center], tuple(back[x] for x in cl.leaves)) for cl in pair])  # type: ignore[misc]
        if len(bad) == 2:
            (a, b), (c, d) = bad
            return _nds_for(f, a, b, c, d, "theorem")
    return None


EARLY_ELLS = (2, 3, 4)
# tried after the witness searches, before the decisive ell = max(2, |V|)
LATE_ELLS = (5, 6, 8, 11, 16, 23)


def _try_embed(f: Graph, ell: int, budget: SearchBudget | None) -> tuple[ClassificationResult | None, bool]:
    exhausted = False
    for variant in ("t2", "t3"):
        res = find_induced_minor_forest(target_posi(variant, ell), f, budget)
        if res.status is Status.FOUND:
            return ClassificationResult(Verdict.POSI, variant, ell, res.model, route="embedding"), False
        if res.status is Status.BUDGET_EXHAUSTED:
            exhausted = True
    return None, exhausted


def classify_forest(f: Graph, budget: SearchBudget | None = None) -> ClassificationResult:
    """Posi with a model into a target, or Nega with a witness.

    Embeddings are tried for a few small ell first (any success is a valid
    certificate), then the witness searches, then a sparse ladder of larger
    ell, and finally ell = max(2, |V|),
    which is large enough for every posi forest.  If that last attempt fails
    too, the two characterisations disagree and InconsistencyError is raised.
    """
    if not is_forest(f):
        return ClassificationResult(Verdict.NEGA, witness=CycleWitness(tuple(shortest_cycle(f))), route="cycle")
    top = max(2, f.n)
    exhausted = False
    for ell in EARLY_ELLS:
        if ell >= top:
            break
        found, ex = _try_embed(f, ell, budget)
        if found:
            return found
        exhausted |= ex
    w = _two_component_witness(f)
    if w is not None:
        return ClassificationResult(Verdict.NEGA, witness=w, route="two-non-T1-components")
    out = find_npd_witness(f, budget)
    if out.found:
        return ClassificationResult(Verdict.NEGA, witness=out.witness, route="npd")
    out2 = find_nds_witness(f, "theorem", budget)
    if out2.found:
        return ClassificationResult(Verdict.NEGA, witness=out2.witness, route="nds")
    exhausted |= Status.BUDGET_EXHAUSTED in (out.status, out2.status)
    for ell in LATE_ELLS:
        if ell >= top:
            break
        found, ex = _try_embed(f, ell, budget)
        if found:
            return found
        exhausted |= ex
    if top > MAX_ELL:
        return ClassificationResult(Verdict.INDETERMINATE, route="size")
    found, ex = _try_embed(f, top, budget)
    if found:
        return found
    if ex or exhausted:
        return ClassificationResult(Verdict.INDETERMINATE, route="budget")
    raise InconsistencyError(
        f"forest {graph_hash(f)[:12]} is neither embeddable at ell={top} nor carries a claw witness"
    )


def witness_to_doc(g: Graph, w: Any) -> dict[str, Any]:
    base: dict[str, Any] = {"graph": graph_hash(g)}
    if isinstance(w, NpdWitness):
        base.update(kind="npd", sets={"A": sorted(w.a), "B": sorted(w.b), "C": sorted(w.c)})
    elif isinstance(w, NdsWitness):
        def claw(c: Claw) -> dict[str, Any]:
            return {"center": c.center, "leaves": list(c.leaves)}

        base.update(kind="nds", claws={"A": claw(w.a), "B": claw(w.b), "C": claw(w.c), "D": claw(w.d)},
                    paths={"P": list(w.p), "Q": list(w.q)},
                    bridge=list(w.bridge) if w.bridge else None)
    elif isinstance(w, CycleWitness):
        base.update(kind="cycle", cycle=list(w.cycle))
    else:
        raise InputError(f"not a witness: {w!r}")
    return base


def witness_from_doc(doc: Any) -> Any:
    try:
        kind = doc["kind"]
        if kind == "npd":
            s = doc["sets"]
            return NpdWitness(frozenset(s["A"]), frozenset(s["B"]), frozenset(s["C"]))
        if kind == "nds":
            cl = {k: Claw(int(v["center"]), tuple(int(x) for x in v["leaves"])) for k, v in doc["claws"].items()}
            br = doc.get("bridge")
            return NdsWitness(cl["A"], cl["B"], cl["C"], cl["D"], tuple(doc["paths"]["P"]),
                              tuple(doc["paths"]["Q"]), tuple(br) if br else None)
        if kind == "cycle":
            return CycleWitness(tuple(doc["cycle"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed witness document: {exc}") from exc
    raise InputError(f"unknown witness kind {doc.get('kind')!r}")


def check_witness(g: Graph, w: Any, mode: str = "theorem") -> bool:
    if isinstance(w, NpdWitness):
        return check_npd(g, w)
    if isinstance(w, NdsWitness):
        return check_nds(g, w, mode)
    if isinstance(w, CycleWitness):
        cyc = w.cycle
        return (len(cyc) >= 3 and len(set(cyc)) == len(cyc)
                and all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))))
    return False


def classification_to_doc(f: Graph, r: ClassificationResult) -> dict[str, Any]:
    doc: dict[str, Any] = {"input": graph_hash(f), "verdict": r.verdict.value}
    if r.verdict is Verdict.POSI:
        doc.update(variant=r.variant, ell=r.ell, model=model_to_doc(r.model))
    elif r.verdict is Verdict.NEGA:
        doc.update(route=r.route, witness=witness_to_doc(f, r.witness))
    return doc
