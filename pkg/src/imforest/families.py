"""Constructors for the named graph families, with fixed vertex-id layouts.

Layouts (all ids dense, documented here and echoed in each graph's labels):

* ``pd_grid_general(stars, paths, spacing, padding)``: path ``j`` (0-based) has
  ``L = 2*padding + (stars-1)*spacing + 1`` vertices ``j*L .. j*L+L-1`` in path
  order; star ``i`` (0-based) is vertex ``paths*L + i`` and is adjacent to column
  ``padding + i*spacing`` (0-based) of every path.  ``pd_grid(n)`` is the
  special case ``(n, n, 1, 0)``.
* ``death_star(h)``: the path vertices come first in path order (``2**h - 1`` of
  them), then the stars in insertion order.  Position ``i`` was created at step
  ``h - v`` where ``v`` is the 2-adic valuation of ``i + 1``.
* trees: see :class:`FamilyTree` and the individual constructors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import InputError
from .graph import Graph, RootedTree, disjoint_union, rooted

MAX_HEIGHT = 20
MAX_ELL = 64


class Family(str, Enum):
    PD_GRID = "pd-grid"
    PD_GRID_GENERAL = "pd-grid-general"
    DEATH_STAR = "death-star"
    DEATH_STAR_SUBDIV = "death-star-subdivided"
    DEATH_STAR_GRID = "death-star-grid"
    T1 = "t1"
    T2PRIME = "t2prime"
    T3PRIME = "t3prime"
    T2 = "t2"
    T3 = "t3"
    T4 = "t4"
    S_ELL = "s-ell"
    TARGET_POSI = "target-posi"


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InputError(msg)


def _check_ell(ell: int, low: int) -> None:
    _need(isinstance(ell, int) and ell >= low, f"ell must be an integer >= {low}, got {ell!r}")
    _need(ell <= MAX_ELL, f"ell={ell} exceeds the size guard {MAX_ELL}")


# ---------------------------------------------------------------------------
# star/path graphs


def pd_grid_general(stars: int, paths: int, spacing: int = 1, padding: int = 0) -> Graph:
    _need(stars >= 1 and paths >= 1, "stars and paths must be >= 1")
    _need(spacing >= 1, "spacing must be >= 1")
    _need(padding >= 0, "padding must be >= 0")
    length = 2 * padding + (stars - 1) * spacing + 1
    edges = []
    labels = {}
    for j in range(paths):
        base = j * length
        for c in range(length):
            labels[base + c] = f"path:{j}:{c}"
            if c + 1 < length:
                edges.append((base + c, base + c + 1))
    for i in range(stars):
        s = paths * length + i
        labels[s] = f"star:{i}"
        col = padding + i * spacing
        edges.extend((s, j * length + col) for j in range(paths))
    return Graph(paths * length + stars, edges, labels)


def pd_grid_layout(stars: int, paths: int, spacing: int = 1, padding: int = 0) -> tuple[list[int], list[list[int]]]:
    """(stars in column order, path vertex sequences) for :func:`pd_grid_general`."""
    length = 2 * padding + (stars - 1) * spacing + 1
    path_lists = [list(range(j * length, (j + 1) * length)) for j in range(paths)]
    return [paths * length + i for i in range(stars)], path_lists


def pd_grid(n: int) -> Graph:
    _need(isinstance(n, int) and n >= 1, f"n must be >= 1, got {n!r}")
    return pd_grid_general(n, n, 1, 0)


def _level(pos: int, height: int) -> int:
    v = ((pos + 1) & -(pos + 1)).bit_length() - 1
    return height - v


def _death_star_guard(h: int) -> None:
    _need(isinstance(h, int) and h >= 1, f"height must be >= 1, got {h!r}")
    _need(h <= MAX_HEIGHT, f"height {h} exceeds the size guard {MAX_HEIGHT}")


def death_star(h: int) -> Graph:
    _death_star_guard(h)
    p = (1 << h) - 1
    edges = [(i, i + 1) for i in range(p - 1)]
    labels = {i: f"path:{i}" for i in range(p)}
    for k in range(1, h + 1):
        labels[p + k - 1] = f"star:{k}"
    edges.extend((p + _level(i, h) - 1, i) for i in range(p))
    return Graph(p + h, edges, labels)


def death_star_layout(h: int) -> tuple[list[int], list[list[int]]]:
    p = (1 << h) - 1
    return [p + k for k in range(h)], [list(range(p))]


def death_star_subdivided(h: int) -> Graph:
    """Death star with every edge of its path subdivided once.

    Path vertices ``0 .. 2p-2`` in order (even positions are the original ones),
    then the ``h`` stars.
    """
    _death_star_guard(h)
    p = (1 << h) - 1
    q = 2 * p - 1
    edges = [(i, i + 1) for i in range(q - 1)]
    labels = {i: f"path:{i}" for i in range(q)}
    for k in range(1, h + 1):
        labels[q + k - 1] = f"star:{k}"
    edges.extend((q + _level(i, h) - 1, 2 * i) for i in range(p))
    return Graph(q + h, edges, labels)


def death_star_grid(height: int, paths: int, spacing: int = 1, padding: int = 0) -> Graph:
    """Several copies of the death-star path sharing one set of stars.

    Each path is the height-``height`` death-star path with ``spacing - 1``
    extra vertices on every edge and ``padding`` vertices added at both ends;
    star ``k`` (insertion step ``k``, id ``paths*L + k - 1``) sees, on every
    path, the positions created at step ``k``.  With the insertion order the
    result is an interrupted constellation; with ``spacing, padding >= d`` it
    is d-ample in the strengthened sense.
    """
    _death_star_guard(height)
    _need(paths >= 1 and spacing >= 1 and padding >= 0, "bad death-star-grid parameters")
    p = (1 << height) - 1
    length = 2 * padding + (p - 1) * spacing + 1
    edges = []
    labels = {}
    for j in range(paths):
        base = j * length
        for c in range(length):
            labels[base + c] = f"path:{j}:{c}"
            if c + 1 < length:
                edges.append((base + c, base + c + 1))
    for k in range(1, height + 1):
        labels[paths * length + k - 1] = f"star:{k}"
    for i in range(p):
        s = paths * length + _level(i, height) - 1
        col = padding + i * spacing
        edges.extend((s, j * length + col) for j in range(paths))
    return Graph(paths * length + height, edges, labels)


def death_star_grid_layout(height: int, paths: int, spacing: int = 1, padding: int = 0) -> tuple[list[int], list[list[int]]]:
    p = (1 << height) - 1
    length = 2 * padding + (p - 1) * spacing + 1
    return ([paths * length + k for k in range(height)],
            [list(range(j * length, (j + 1) * length)) for j in range(paths)])


# ---------------------------------------------------------------------------
# trees


@dataclass(frozen=True)
class FamilyTree:
    """A generated tree plus the named vertices the constructions refer to.

    ``glued`` maps each vertex carrying a copy of T_{1,ell} to that copy's
    paths (each a vertex sequence whose centre is adjacent to the vertex).
    """

    graph: Graph
    root: int
    named: dict[str, int] = field(default_factory=dict)
    original_leaves: tuple[int, ...] = ()
    pendants: dict[str, tuple[int, ...]] = field(default_factory=dict)
    glued: dict[int, tuple[tuple[int, ...], ...]] = field(default_factory=dict)

    def rooted(self) -> RootedTree:
        return rooted(self.graph, self.root)

    @property
    def n(self) -> int:
        return self.graph.n


class _Builder:
    def __init__(self) -> None:
        self.n = 0
        self.edges: list[tuple[int, int]] = []
        self.labels: dict[int, str] = {}

    def add(self, label: str) -> int:
        v = self.n
        self.n += 1
        self.labels[v] = label
        return v

    def chain(self, start: int | None, count: int, label: str) -> list[int]:
        """Append ``count`` new vertices forming a path hanging from ``start``."""
        out = []
        prev = start
        for i in range(count):
            v = self.add(f"{label}:{i}")
            if prev is not None:
                self.edges.append((prev, v))
            out.append(v)
            prev = v
        return out

    def glue_t1(self, at: int, ell: int) -> tuple[tuple[int, ...], ...]:
        paths = []
        for j in range(ell):
            seq = self.chain(None, 2 * ell + 1, f"t1@{at}:{j}")
            self.edges.append((at, seq[ell]))
            paths.append(tuple(seq))
        return tuple(paths)

    def graph(self) -> Graph:
        return Graph(self.n, self.edges, self.labels)


def t1(ell: int) -> FamilyTree:
    """Root 0 adjacent to the centre of ``ell`` paths on ``2*ell+1`` vertices.

    Path ``j`` occupies ids ``1 + j*(2ell+1) ..`` in path order.
    """
    _check_ell(ell, 1)
    b = _Builder()
    r = b.add("root")
    paths = b.glue_t1(r, ell)
    return FamilyTree(b.graph(), r, {"root": r}, glued={r: paths})


_SKELETON_PENDANTS = {"t2": ("a2",), "t3": ("b1",), "t4": ("a2", "b1")}


def _skeleton(ell: int, variant: str) -> tuple[_Builder, dict, tuple[int, ...], dict]:
    """T'_{2}, T'_{3} or T'_{4} with ids:

    0 root; 1..ell the unsubdivided leaves; x-branch a_1..a_{ell+1} then its leaf;
    y-branch b_1..b_{ell+1} then its leaf; pendant ell-edge paths from a_{ell+1},
    from b_{ell+1}, then (by variant) from a_2 and/or from b_1.
    """
    b = _Builder()
    root = b.add("root")
    short = [b.add(f"c{i + 1}") for i in range(ell)]
    xb = b.chain(root, ell + 2, "xbranch")
    yb = b.chain(root, ell + 2, "ybranch")
    named = {"root": root, "x": xb[0], "y": yb[0], "leaf_x": xb[-1], "leaf_y": yb[-1]}
    for c in short:
        b.edges.append((root, c))
    pendants = {
        "from_leaf_x_parent": tuple(b.chain(xb[ell], ell, "pend_xl")),
        "from_leaf_y_parent": tuple(b.chain(yb[ell], ell, "pend_yl")),
    }
    for which in _SKELETON_PENDANTS[variant]:
        at = xb[1] if which == "a2" else yb[0]
        key = "from_x_child" if which == "a2" else "from_y"
        pendants[key] = tuple(b.chain(at, ell, f"pend_{which}"))
    named.update({f"a{i + 1}": v for i, v in enumerate(xb[:-1])})
    named.update({f"b{i + 1}": v for i, v in enumerate(yb[:-1])})
    originals = tuple(short) + (xb[-1], yb[-1])
    return b, named, originals, pendants


def _prime(ell: int, variant: str) -> FamilyTree:
    _check_ell(ell, 2)
    b, named, originals, pendants = _skeleton(ell, variant)
    return FamilyTree(b.graph(), named["root"], named, originals, pendants)


def t2prime(ell: int) -> FamilyTree:
    return _prime(ell, "t2")


def t3prime(ell: int) -> FamilyTree:
    return _prime(ell, "t3")


def t4prime(ell: int) -> FamilyTree:
    return _prime(ell, "t4")


def _full(ell: int, variant: str) -> FamilyTree:
    _check_ell(ell, 2)
    b, named, originals, pendants = _skeleton(ell, variant)
    glued = {}
    for at in sorted(originals + (named["x"],)):
        glued[at] = b.glue_t1(at, ell)
    return FamilyTree(b.graph(), named["root"], named, originals, pendants, glued)


def t2(ell: int) -> FamilyTree:
    """T'_2 with a copy of T_{1,ell} glued (root identified) at x and every original leaf.

    Copies are appended after the skeleton in ascending order of glue vertex.
    """
    return _full(ell, "t2")


def t3(ell: int) -> FamilyTree:
    return _full(ell, "t3")


def t4(ell: int) -> FamilyTree:
    """T_2 plus the extra ell-edge path hanging from y that T_3 has."""
    return _full(ell, "t4")


def s_ell(ell: int) -> FamilyTree:
    """A (2ell+1)-vertex spine 0..2ell with T_{1,ell} copies rooted at spine
    positions 1, ell+1, ell+2, 2ell+1 (1-indexed) and ell-vertex paths hanging
    from positions 2, 2ell and ell (1-indexed), appended in that order.
    """
    _check_ell(ell, 2)
    b = _Builder()
    spine = b.chain(None, 2 * ell + 1, "spine")
    glued = {}
    for pos in (1, ell + 1, ell + 2, 2 * ell + 1):
        at = spine[pos - 1]
        glued[at] = b.glue_t1(at, ell)
    pendants = {}
    for pos in (2, 2 * ell, ell):
        pendants[f"at_{pos}"] = tuple(b.chain(spine[pos - 1], ell, f"pend{pos}"))
    return FamilyTree(b.graph(), spine[0], {"first": spine[0], "last": spine[-1]}, (), pendants, glued)


def target_posi(variant: str, ell: int) -> Graph:
    """``t2(ell)`` (or ``t3``) followed by ``ell`` disjoint copies of ``t1(ell)``."""
    variant = variant.lower()
    _need(variant in ("t2", "t3", "t4"), f"unknown variant {variant!r}")
    _check_ell(ell, 2)
    main = {"t2": t2, "t3": t3, "t4": t4}[variant](ell)
    one = t1(ell).graph
    return disjoint_union(main.graph, *([one] * ell))


def build(family: str | Family, *params: int | str) -> Graph:
    """Dispatch used by the CLI: family name + positional parameters -> graph."""
    fam = Family(family)
    try:
        if fam is Family.TARGET_POSI:
            variant, ell = params
            return target_posi(str(variant), int(ell))
        ints = [int(p) for p in params]
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad parameters for {fam.value}: {params!r}") from exc
    table = {
        Family.PD_GRID: (pd_grid, 1),
        Family.PD_GRID_GENERAL: (pd_grid_general, 4),
        Family.DEATH_STAR: (death_star, 1),
        Family.DEATH_STAR_SUBDIV: (death_star_subdivided, 1),
        Family.DEATH_STAR_GRID: (death_star_grid, 4),
    }
    if fam in table:
        fn, arity = table[fam]
        _need(len(ints) == arity, f"{fam.value} takes {arity} parameter(s)")
        return fn(*ints)
    trees = {Family.T1: t1, Family.T2PRIME: t2prime, Family.T3PRIME: t3prime, Family.T2: t2,
             Family.T3: t3, Family.T4: t4, Family.S_ELL: s_ell}
    _need(len(ints) == 1, f"{fam.value} takes 1 parameter")
    return trees[fam](ints[0]).graph
