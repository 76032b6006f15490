"""The small trees used as named examples: two npd-minimal and two nds-minimal trees."""

from __future__ import annotations

from .graph import Graph


def npd_tree(left: bool = True) -> Graph:
    """Centre 0 with three arms v-x1-x2-x3; two extra leaves on x2 (left) or x3 (right). 16 vertices."""
    edges = []
    n = 1
    for _ in range(3):
        x1, x2, x3, x4, x5 = range(n, n + 5)
        n += 5
        at = x2 if left else x3
        edges += [(0, x1), (x1, x2), (x2, x3), (at, x4), (at, x5)]
    return Graph(n, edges)


def nds_tree_left() -> Graph:
    """Path a1..a5 where a1, a2, a4, a5 each carry three leaves. 17 vertices."""
    edges = [(i, i + 1) for i in range(4)]
    n = 5
    for a in (0, 1, 3, 4):
        for _ in range(3):
            edges.append((a, n))
            n += 1
    return Graph(n, edges)


def nds_tree_right() -> Graph:
    """Path a1..a10 with leaves: two on a1, one on a4, one on a7, two on a10. 16 vertices.

    The claws sit at a1, a4 (left pair) and a7, a10 (right pair); a5-a6 is the
    single edge between the two sides.
    """
    edges = [(i, i + 1) for i in range(9)]
    n = 10
    for a in (0, 0, 3, 6, 9, 9):
        edges.append((a, n))
        n += 1
    return Graph(n, edges)


FIGURES = {
    "npd-left": lambda: npd_tree(True),
    "npd-right": lambda: npd_tree(False),
    "nds-left": nds_tree_left,
    "nds-right": nds_tree_right,
}
