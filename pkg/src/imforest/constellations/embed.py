"""Explicit induced-minor models of the forest targets inside ordered constellations.

Both constructions pick a few routes, cut the host path carrying the main
route into named pieces (intervals, short pendant runs, connectors), assign
those pieces to the vertices of a skeleton tree, and then hang one fresh
pattern path per remaining free path with :func:`extend_model`.

Every intermediate and the final model are checked with ``verify_model``;
a failing check raises :class:`InvariantError` naming the stage.  Named
intermediates are written into the optional ``trace`` dict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from ..errors import InputError, InvariantError
from ..families import FamilyTree, t1, t2, t2prime, t3, t3prime, t4, t4prime, target_posi
from ..graph import Graph, disjoint_union, empty_graph
from ..imm.model import InducedMinorModel, verify_model
from .core import Constellation, check_interrupted, check_zigzagged, extend_model, interval_of, is_d_ample


@dataclass(frozen=True)
class _Route:
    s: int  # star rank at the first end
    t: int  # star rank at the second end
    path: int
    lo: int  # position of the neighbour of s
    hi: int  # position of the neighbour of t (may be left of lo)

    def vertices(self, c: Constellation) -> set[int]:
        a, b = sorted((self.lo, self.hi))
        return {c.stars[self.s], c.stars[self.t], *c.paths[self.path][a:b + 1]}


def _shortest_route(c: Constellation, a: set[int], b: set[int], paths: Sequence[int]) -> _Route:
    """Shortest route from a star in ``a`` to a star in ``b`` (ranks), ties by path then left end.

    ``s`` is always the ``a`` end, whichever side of the path it is on.
    """
    best: tuple[int, int, int] | None = None
    found: _Route | None = None
    for i in paths:
        ent = c.entries(i)
        for pa, sa in ent:
            if sa not in a:
                continue
            for pb, sb in ent:
                if sb not in b or sb == sa:
                    continue
                key = (abs(pb - pa), i, min(pa, pb))
                if best is None or key < best:
                    best = key
                    found = _Route(sa, sb, i, pa, pb)
    if found is None:
        raise InvariantError("no route between the requested stars", "route")
    return found


def _direct_route(c: Constellation, star: int, path: int) -> _Route:
    """A route from ``star`` whose interior sees exactly its two endpoints; leftmost one."""
    ent = c.entries(path)
    options = []
    for (pa, sa), (pb, sb) in zip(ent, ent[1:]):
        if sa == sb or pa == pb or star not in (sa, sb):
            continue
        other = sb if sa == star else sa
        options.append((min(pa, pb), _Route(star, other, path, pa if sa == star else pb, pb if sa == star else pa)))
    if not options:
        raise InvariantError(f"star {c.stars[star]} has no direct route on path {path}", "direct-routes")
    return min(options, key=lambda o: o[0])[1]


class _Line:
    """A host path read in the direction of a route (from its ``s`` end to its ``t`` end)."""

    def __init__(self, c: Constellation, route: _Route):
        p = c.paths[route.path]
        self.c = c
        self.flip = route.lo > route.hi
        self.seq = list(reversed(p)) if self.flip else list(p)
        self.start = self.idx(p[route.lo])
        self.end = self.idx(p[route.hi])
        self.path = route.path

    def idx(self, v: int) -> int:
        _, pos = self.c.where(v)
        return len(self.seq) - 1 - pos if self.flip else pos

    def at(self, i: int, what: str) -> int:
        if not 0 <= i < len(self.seq):
            raise InvariantError(f"{what} runs off the end of the path", "pieces")
        return self.seq[i]

    def interval(self, star: int, anchor: int) -> tuple[int, int]:
        iv = interval_of(self.c, star, anchor)
        ends = sorted((self.idx(self.c.paths[iv.path][iv.lo]), self.idx(self.c.paths[iv.path][iv.hi])))
        return ends[0], ends[1]

    def span(self, lo: int, hi: int) -> list[int]:
        return self.seq[lo:hi + 1] if lo <= hi else []

    def run(self, first: int, step: int, count: int, what: str) -> list[int]:
        return [self.at(first + step * k, what) for k in range(count)]

    def star_ranks(self, i: int) -> list[int]:
        return self.c.adjacent_stars(self.seq[i])


def _group(chain: Sequence[Sequence[int]], slots: int, what: str) -> tuple[list[set[int]], set[int]]:
    """Split a contiguous run of pieces into ``slots`` consecutive groups.

    Surplus pieces are merged into the last group; with no slots everything
    is returned as the leftover to merge into the next anchor.
    """
    parts = [set(p) for p in chain if p]
    if len(parts) < slots:
        raise InvariantError(f"{what}: {len(parts)} pieces for {slots} tree vertices", "grouping")
    if slots == 0:
        return [], set().union(*parts) if parts else set()
    return parts[: slots - 1] + [set().union(*parts[slots - 1:])], set()


def _check(m: InducedMinorModel, stage: str) -> None:
    v = verify_model(m)
    if not v.valid:
        raise InvariantError(f"{v.violation.value}: {v.message}", stage)


def _finish(
    c: Constellation,
    variant: str,
    ell: int,
    skeleton: dict[int, set[int]],
    glue_star: dict[int, int],
    isolated: Sequence[int],
    free_paths: Sequence[int],
    trace: dict[str, Any] | None,
) -> InducedMinorModel:
    prime: FamilyTree = {"t2": t2prime, "t3": t3prime, "t4": t4prime}[variant](ell)
    full: FamilyTree = {"t2": t2, "t3": t3, "t4": t4}[variant](ell)
    t1n = t1(ell).n
    base = disjoint_union(prime.graph, empty_graph(len(isolated)))
    branch = {p: frozenset(vs) for p, vs in skeleton.items()}
    for j, s in enumerate(isolated):
        branch[prime.n + j] = frozenset({s})
    m = InducedMinorModel(c.graph, base, branch)
    _check(m, "skeleton-model")
    if trace is not None:
        trace["skeleton_model"] = {p: sorted(vs) for p, vs in sorted(m.branch.items())}

    free = iter(free_paths)
    to_target = {p: p for p in range(prime.n)}
    for j in range(len(isolated)):
        to_target[prime.n + j] = full.n + j * t1n
    jobs: list[tuple[int, int, list[int]]] = []
    for gp in sorted(full.glued):
        for k in range(ell):
            jobs.append((gp, glue_star[gp], list(full.glued[gp][k])))
    for j, s in enumerate(isolated):
        off = full.n + j * t1n
        for k in range(ell):
            jobs.append((prime.n + j, s, [off + 1 + k * (2 * ell + 1) + i for i in range(2 * ell + 1)]))
    used_paths = []
    for u, star, target_ids in jobs:
        try:
            pi = next(free)
        except StopIteration:
            raise InvariantError("ran out of free paths", "extension") from None
        first = m.pattern.n
        m = extend_model(c, m, pi, star, u, ell, check_ample=False)
        used_paths.append(pi)
        for i, t in enumerate(target_ids):
            to_target[first + i] = t
    if trace is not None:
        trace["extension_paths"] = used_paths

    target = target_posi(variant, ell)
    mapped = sorted(tuple(sorted((to_target[a], to_target[b]))) for a, b in m.pattern.edges)
    if len(to_target) != target.n or mapped != sorted(target.edges):
        raise InvariantError("constructed pattern does not match the target layout", "relabel")
    final = InducedMinorModel(c.graph, target, {to_target[p]: vs for p, vs in sorted(m.branch.items())})
    _check(final, "final-model")
    return final


def _named(prime: FamilyTree, key: str) -> int:
    return prime.named[key]


def _assign_pendant(skel: dict[int, set[int]], ids: Sequence[int], vertices: Sequence[int]) -> None:
    for p, v in zip(ids, vertices):
        skel[p] = {v}


def embed_zigzagged(
    c: Constellation, ell: int, q: int, trace: dict[str, Any] | None = None
) -> InducedMinorModel:
    """Model of ``t4(ell)`` plus ``ell`` copies of ``t1(ell)`` in a q-zigzagged, (ell+1)-ample constellation."""
    if not (ell > q >= 1):
        raise InputError("need ell > q >= 1")
    need_s = 2 * (q + 2) * (q + ell + 2)
    need_p = (2 * ell + 3) * ell + 2
    if len(c.stars) < need_s:
        raise InputError(f"need at least {need_s} stars, have {len(c.stars)}")
    if len(c.paths) < need_p:
        raise InputError(f"need at least {need_p} paths, have {len(c.paths)}")
    if not is_d_ample(c, ell + 1):
        raise InputError(f"constellation is not {ell + 1}-ample")
    if not check_zigzagged(c, q):
        raise InputError(f"constellation is not {q}-zigzagged")
    tr: dict[str, Any] = trace if trace is not None else {}
    S = c.stars

    def s(i: int) -> int:  # 1-indexed rank
        return i - 1

    step = 2 * (q + 1)
    eta = step * (q + ell + 2) + q
    tr["eta"] = eta
    # direct routes on the first path from every step-th star
    routes = []
    for i in range(1, q + ell + 2):
        r = _direct_route(c, s(step * i), 0)
        h = r.t + 1
        if not (step * i - q <= h <= step * i + q):
            raise InvariantError(f"direct route from s_{step * i} ends at s_{h}, outside the window", "direct-routes")
        routes.append(r)
    tr["direct_routes"] = [sorted(r.vertices(c)) for r in routes]
    tr["direct_route_ends"] = [(S[r.s], S[r.t]) for r in routes]

    window = set(range(s(step * (q + ell + 2)), s(step * (q + ell + 2) + q) + 1))
    main = _shortest_route(c, {s(1)}, window, range(1, len(c.paths)))
    line = _Line(c, main)
    x, y = S[main.s], S[main.t]
    interior = line.span(line.start, line.end)
    tr.update(x=x, y=y, main_path=main.path, main_route=interior)
    seen = set()
    for i in range(line.start, line.end + 1):
        seen.update(line.star_ranks(i))
    if any(r >= eta for r in seen):
        raise InvariantError("main route sees a star beyond the reserved range", "main-route")

    chosen = [r for r in routes if r.s in seen and r.t in seen][: ell + 2]
    if len(chosen) < ell + 2:
        raise InvariantError(f"only {len(chosen)} direct routes have both ends on the main route", "selection")
    zs = [S[r.s] for r in chosen] + [S[r.t] for r in chosen]
    tr["z"] = zs
    zrank = {c.rank(z): k % (ell + 2) for k, z in enumerate(zs)}

    def route_of(i: int) -> int | None:
        for r in line.star_ranks(i):
            if r in zrank:
                return zrank[r]
        return None

    hits = [i for i in range(line.start, line.end + 1) if route_of(i) is not None]
    if not hits:
        raise InvariantError("main route sees none of the selected routes", "selection")
    xi, yi = hits[0], hits[-1]
    ix, iy = route_of(xi), route_of(yi)
    if ix == iy:
        raise InvariantError("first and last selected route coincide", "selection")
    tr.update(x_prime=line.seq[xi], y_prime=line.seq[yi], i_x_prime=ix, i_y_prime=iy)

    ix_lo, ix_hi = line.interval(x, line.seq[line.start])
    iy_lo, iy_hi = line.interval(y, line.seq[line.end])
    xs = S[line.star_ranks(xi)[0]]
    ys = S[line.star_ranks(yi)[0]]
    ixp_lo, ixp_hi = line.interval(xs, line.seq[xi])
    iyp_lo, iyp_hi = line.interval(ys, line.seq[yi])
    u = line.run(ix_lo - 1, -1, ell, "u")
    up = line.run(ix_hi + 1, 1, ell, "u'")
    v = line.run(iy_hi + 1, 1, ell, "v")
    vp = line.run(iy_lo - 1, -1, ell, "v'")
    w = line.run(ixp_hi + 1, 1, ell, "w")
    wp = line.run(iyp_lo - 1, -1, ell, "w'")
    J = line.span(ix_hi + ell + 1, ixp_lo - 1)
    Jp = line.span(iyp_hi + 1, iy_lo - ell - 1)

    # root: shortest window strictly between the w and w' runs seeing every chosen route
    lo_b, hi_b = ixp_hi + ell + 1, iyp_lo - ell - 1
    best = None
    for a in range(lo_b, hi_b + 1):
        got: set[int] = set()
        for b in range(a, hi_b + 1):
            for r in line.star_ranks(b):
                if r in zrank:
                    got.add(zrank[r])
            if len(got) == ell + 2:
                if best is None or b - a < best[1] - best[0]:
                    best = (a, b)
                break
    if best is None:
        raise InvariantError("no root window sees every selected route", "root")
    R = line.span(*best)
    tr.update(
        I_x=line.span(ix_lo, ix_hi), I_y=line.span(iy_lo, iy_hi),
        I_x_prime=line.span(ixp_lo, ixp_hi), I_y_prime=line.span(iyp_lo, iyp_hi),
        u=u, u_prime=up, v=v, v_prime=vp, w=w, w_prime=wp, J=J, J_prime=Jp, R=R,
    )

    prime = t4prime(ell)
    nm = prime.named
    skel: dict[int, set[int]] = {nm["root"]: set(R)}
    others = [k for k in range(ell + 2) if k not in (ix, iy)]
    for leaf, k in zip(range(1, ell + 1), others):
        skel[leaf] = chosen[k].vertices(c)
    skel[nm["a1"]] = chosen[ix].vertices(c)
    skel[nm["a2"]] = set(line.span(ixp_lo, ixp_hi))
    _assign_pendant(skel, prime.pendants["from_x_child"], w)
    groups, rest = _group([J] + [[t] for t in reversed(up)], ell - 2, "x-branch")
    for k, g in enumerate(groups):
        skel[nm[f"a{k + 3}"]] = g
    skel[nm[f"a{ell + 1}"]] = set(line.span(ix_lo, ix_hi)) | rest
    _assign_pendant(skel, prime.pendants["from_leaf_x_parent"], u)
    skel[nm["leaf_x"]] = {x}
    skel[nm["b1"]] = set(line.span(iyp_lo, iyp_hi)) | chosen[iy].vertices(c)
    _assign_pendant(skel, prime.pendants["from_y"], wp)
    groups, rest = _group([Jp] + [[t] for t in reversed(vp)], ell - 1, "y-branch")
    for k, g in enumerate(groups):
        skel[nm[f"b{k + 2}"]] = g
    skel[nm[f"b{ell + 1}"]] = set(line.span(iy_lo, iy_hi)) | rest
    _assign_pendant(skel, prime.pendants["from_leaf_y_parent"], v)
    skel[nm["leaf_y"]] = {y}

    glue = {nm["leaf_x"]: x, nm["leaf_y"]: y, nm["a1"]: S[chosen[ix].s]}
    for leaf, k in zip(range(1, ell + 1), others):
        glue[leaf] = S[chosen[k].s]
    isolated = [S[s(eta + j)] for j in range(1, ell + 1)]
    free = [i for i in range(1, len(c.paths)) if i != main.path]
    return _finish(c, "t4", ell, skel, glue, isolated, free, tr)


def embed_interrupted(
    c: Constellation, ell: int, variant: str = "t2", trace: dict[str, Any] | None = None
) -> InducedMinorModel:
    """Model of ``t2(ell)`` or ``t3(ell)`` plus ``ell`` copies of ``t1(ell)`` in an
    interrupted, (ell+1)-ample constellation."""
    variant = variant.lower()
    if variant not in ("t2", "t3"):
        raise InputError("variant must be t2 or t3")
    if ell < 2:
        raise InputError("ell must be >= 2")
    if len(c.stars) < 2 * ell + 4:
        raise InputError(f"need at least {2 * ell + 4} stars, have {len(c.stars)}")
    need_p = (2 * ell + 3) * ell + 1
    if len(c.paths) < need_p:
        raise InputError(f"need at least {need_p} paths, have {len(c.paths)}")
    if not is_d_ample(c, ell + 1):
        raise InputError(f"constellation is not {ell + 1}-ample")
    if not check_interrupted(c):
        raise InputError("constellation is not interrupted")
    tr: dict[str, Any] = trace if trace is not None else {}
    S = c.stars
    rx, ry, rz = ell, ell + 1, 2 * ell + 3
    x, y, z = S[rx], S[ry], S[rz]
    low = set(range(ell))
    main = _shortest_route(c, {rx}, {ry}, range(len(c.paths)))
    line = _Line(c, main)
    tr.update(x=x, y=y, z=z, main_path=main.path, main_route=line.span(line.start, line.end))
    for i in range(line.start, line.end + 1):
        if low & set(line.star_ranks(i)):
            raise InvariantError("main route sees one of the first ell stars", "main-route")

    def sees_other(i: int, exclude: set[int]) -> list[int]:
        return [r for r in line.star_ranks(i) if r not in exclude]

    hits = [i for i in range(line.start, line.end + 1) if sees_other(i, {rx, ry})]
    if not hits:
        raise InvariantError("main route sees no further star", "main-route")
    xi, yi = hits[0], hits[-1]
    if sees_other(xi, {rx, ry}) != [rz] or sees_other(yi, {rx, ry}) != [rz]:
        raise InvariantError("first/last further star on the main route is not the last star", "main-route")
    ix_lo, ix_hi = line.interval(x, line.seq[line.start])
    iy_lo, iy_hi = line.interval(y, line.seq[line.end])
    ixp_lo, ixp_hi = line.interval(z, line.seq[xi])
    iyp_lo, iyp_hi = line.interval(z, line.seq[yi])
    u = line.run(ix_lo - 1, -1, ell, "u")
    up = line.run(ix_hi + 1, 1, ell, "u'")
    v = line.run(iy_hi + 1, 1, ell, "v")
    vp = line.run(iy_lo - 1, -1, ell, "v'")
    tr.update(x_prime=line.seq[xi], y_prime=line.seq[yi],
              I_x=line.span(ix_lo, ix_hi), I_y=line.span(iy_lo, iy_hi),
              I_x_prime=line.span(ixp_lo, ixp_hi), I_y_prime=line.span(iyp_lo, iyp_hi),
              u=u, u_prime=up, v=v, v_prime=vp)
    isolated = [S[r] for r in range(ell)]
    free = [i for i in range(len(c.paths)) if i != main.path]

    if variant == "t2":
        w = line.run(ixp_hi + 1, 1, ell, "w")
        r_lo = next((i for i in range(ixp_hi + ell + 1, line.end + 1) if line.star_ranks(i)), None)
        if r_lo is None:
            raise InvariantError("no star neighbour after the w run", "root")
        R = line.span(r_lo, iyp_hi)
        leaves_r = sorted(set(range(len(S))) - low - {rx, ry, rz})[:ell]
        J = line.span(ix_hi + ell + 1, ixp_lo - 1)
        Jp = line.span(iyp_hi + 1, iy_lo - ell - 1)
        tr.update(w=w, R=R, J=J, J_prime=Jp, leaves=[S[r] for r in leaves_r])
        prime = t2prime(ell)
        nm = prime.named
        skel: dict[int, set[int]] = {nm["root"]: set(R)}
        for leaf, r in zip(range(1, ell + 1), leaves_r):
            skel[leaf] = {S[r]}
        skel[nm["a1"]] = {z}
        skel[nm["a2"]] = set(line.span(ixp_lo, ixp_hi))
        _assign_pendant(skel, prime.pendants["from_x_child"], w)
        groups, rest = _group([J] + [[t] for t in reversed(up)], ell - 2, "x-branch")
        for k, g in enumerate(groups):
            skel[nm[f"a{k + 3}"]] = g
        skel[nm[f"a{ell + 1}"]] = set(line.span(ix_lo, ix_hi)) | rest
        groups, rest = _group([Jp] + [[t] for t in reversed(vp)], ell, "y-branch")
        for k, g in enumerate(groups):
            skel[nm[f"b{k + 1}"]] = g
        glue = {nm["a1"]: z}
    else:
        f = next((i for i in range(ix_hi + ell + 1, line.end + 1) if sees_other(i, {rz})), None)
        if f is None:
            raise InvariantError("no vertex after the u' run sees a star other than the last", "left-piece")
        zp_rank = sees_other(f, {rz})[0]
        zp = S[zp_rank]
        L = line.span(ix_hi + ell + 1, f)
        leaves_r = sorted(set(range(len(S))) - low - {rx, ry, rz, zp_rank})[:ell]
        need = set(leaves_r)
        got: set[int] = set()
        r_hi = None
        for i in range(f + 1, line.end + 1):
            got.update(line.star_ranks(i))
            if need <= got:
                r_hi = i
                break
        if r_hi is None:
            raise InvariantError("no root piece sees every leaf star", "root")
        Rp = line.span(f + 1, r_hi)
        wp = line.run(iyp_lo - 1, -1, ell, "w'")
        Jpp = line.span(iyp_hi + 1, iy_lo - ell - 1)
        tr.update(z_prime=zp, L=L, R_prime=Rp, w_prime=wp, J_second=Jpp, leaves=[S[r] for r in leaves_r])
        prime = t3prime(ell)
        nm = prime.named
        skel = {nm["root"]: set(Rp) | {z}}
        for leaf, r in zip(range(1, ell + 1), leaves_r):
            skel[leaf] = {S[r]}
        skel[nm["a1"]] = set(L) | {zp}
        groups, rest = _group([[t] for t in reversed(up)], ell - 1, "x-branch")
        for k, g in enumerate(groups):
            skel[nm[f"a{k + 2}"]] = g
        skel[nm[f"a{ell + 1}"]] = set(line.span(ix_lo, ix_hi)) | rest
        skel[nm["b1"]] = set(line.span(iyp_lo, iyp_hi))
        _assign_pendant(skel, prime.pendants["from_y"], wp)
        groups, rest = _group([Jpp] + [[t] for t in reversed(vp)], ell - 1, "y-branch")
        for k, g in enumerate(groups):
            skel[nm[f"b{k + 2}"]] = g
        glue = {nm["a1"]: zp}
    skel[nm[f"b{ell + 1}"]] = skel.get(nm[f"b{ell + 1}"], set()) | set(line.span(iy_lo, iy_hi)) | rest
    _assign_pendant(skel, prime.pendants["from_leaf_x_parent"], u)
    _assign_pendant(skel, prime.pendants["from_leaf_y_parent"], v)
    skel[nm["leaf_x"]] = {x}
    skel[nm["leaf_y"]] = {y}
    glue.update({nm["leaf_x"]: x, nm["leaf_y"]: y})
    for leaf, r in zip(range(1, ell + 1), leaves_r):
        glue[leaf] = S[r]
    return _finish(c, variant, ell, skel, glue, isolated, free, tr)
