"""Induced-subgraph embedding by backtracking (used as the T1-family oracle)."""

from __future__ import annotations

from ..graph import Graph, components
from .model import InducedMinorModel
from .search import BudgetExhausted, Counter, SearchBudget, SearchResult, Status


def _pattern_order(pattern: Graph) -> list[int]:
    """BFS order per component, components by descending size then min id,
    starting each at a maximum-degree vertex."""
    order: list[int] = []
    for comp in sorted(components(pattern), key=lambda c: (-len(c), min(c))):
        start = max(sorted(comp), key=pattern.degree)
        seen = {start}
        queue = [start]
        for v in queue:
            for w in sorted(pattern.neighbors(v), key=lambda x: (-pattern.degree(x), x)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        order.extend(queue)
    return order


def find_induced_embedding(pattern: Graph, host: Graph, budget: SearchBudget | None = None) -> tuple[Status, dict[int, int] | None, int]:
    counter = Counter(budget or SearchBudget())
    if pattern.n > host.n:
        return Status.NOT_CONTAINED, None, 0
    order = _pattern_order(pattern)
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[w for w in pattern.neighbors(v) if pos[w] < pos[v]] for v in order]
    earlier_non = [[w for w in order[:i] if not pattern.has_edge(w, v)] for i, v in enumerate(order)]
    hadj = [host.adj_mask(v) for v in host.vertices()]
    all_mask = (1 << host.n) - 1
    image: dict[int, int] = {}

    def go(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        cand = all_mask & ~used
        for w in earlier[i]:
            cand &= hadj[image[w]]
        for w in earlier_non[i]:
            cand &= ~hadj[image[w]]
        deg = pattern.degree(v)
        while cand:
            low = cand & -cand
            cand ^= low
            x = low.bit_length() - 1
            if host.degree(x) < deg:
                continue
            counter.tick()
            image[v] = x
            if go(i + 1, used | low):
                return True
            del image[v]
        return False

    try:
        ok = go(0, 0)
    except BudgetExhausted:
        return Status.BUDGET_EXHAUSTED, None, counter.nodes
    if not ok:
        return Status.NOT_CONTAINED, None, counter.nodes
    return Status.FOUND, dict(sorted(image.items())), counter.nodes


def is_induced_subgraph(pattern: Graph, host: Graph, budget: SearchBudget | None = None) -> SearchResult:
    """Same result shape as the minor searches; the model uses singleton branch sets."""
    status, image, nodes = find_induced_embedding(pattern, host, budget)
    if status is not Status.FOUND:
        return SearchResult(status, None, nodes)
    model = InducedMinorModel.build(host, pattern, {v: {x} for v, x in image.items()})
    return SearchResult(status, model, nodes)
