"""Induced-minor models (the certificate type) and their verification."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, Mapping

from ..errors import CertificateError, InputError
from ..graph import Graph, is_connected_set, mask_of
from ..io import graph_from_doc, graph_to_doc


@dataclass(frozen=True)
class InducedMinorModel:
    host: Graph
    pattern: Graph
    branch: Mapping[int, frozenset[int]]

    @classmethod
    def build(cls, host: Graph, pattern: Graph, branch: Mapping[int, Iterable[int]]) -> "InducedMinorModel":
        return cls(host, pattern, {int(p): frozenset(vs) for p, vs in sorted(branch.items())})

    def branch_sets(self) -> list[frozenset[int]]:
        return [self.branch[p] for p in sorted(self.branch)]

    def used(self) -> frozenset[int]:
        out: set[int] = set()
        for vs in self.branch.values():
            out |= vs
        return frozenset(out)


class Violation(str, Enum):
    KEYS = "branch-keys-mismatch"
    EMPTY = "empty-branch"
    OVERLAP = "overlapping-branches"
    DISCONNECTED = "disconnected-branch"
    MISSING_EDGE = "missing-adjacency"
    EXTRA_EDGE = "extra-adjacency"


@dataclass(frozen=True)
class Verdict:
    valid: bool
    violation: Violation | None = None
    pattern_vertices: tuple[int, ...] = ()
    host_vertices: tuple[int, ...] = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.valid


_OK = Verdict(True)


def verify_model(m: InducedMinorModel) -> Verdict:
    """Check the model invariants in a fixed order and report the first failure.

    Order: branch keys, empty sets, overlaps, connectivity, then the
    adjacency-iff-edge condition over pattern pairs in lexicographic order.
    """
    host, pattern = m.host, m.pattern
    for p, vs in m.branch.items():
        bad = sorted(v for v in vs if not (isinstance(v, int) and 0 <= v < host.n))
        if bad:
            raise InputError(f"branch set of pattern vertex {p} references nonexistent host vertices {bad}")
    keys = set(m.branch)
    want = set(pattern.vertices())
    if keys != want:
        missing = tuple(sorted(want - keys))
        extra = tuple(sorted(keys - want))
        return Verdict(False, Violation.KEYS, missing + extra,
                       message=f"missing pattern vertices {list(missing)}, unknown keys {list(extra)}")
    for p in sorted(keys):
        if not m.branch[p]:
            return Verdict(False, Violation.EMPTY, (p,), message=f"branch set of {p} is empty")
    owner: dict[int, int] = {}
    for p in sorted(keys):
        for v in sorted(m.branch[p]):
            if v in owner:
                return Verdict(False, Violation.OVERLAP, (owner[v], p), (v,),
                               message=f"host vertex {v} lies in the branch sets of {owner[v]} and {p}")
            owner[v] = p
    for p in sorted(keys):
        if not is_connected_set(host, m.branch[p]):
            return Verdict(False, Violation.DISCONNECTED, (p,), tuple(sorted(m.branch[p])),
                           message=f"branch set of {p} is not connected in the host")
    masks = {p: mask_of(m.branch[p]) for p in keys}
    reach = {}
    for p in keys:
        r = 0
        for v in m.branch[p]:
            r |= host.adj_mask(v)
        reach[p] = r
    order = sorted(keys)
    for i, p in enumerate(order):
        for q in order[i + 1:]:
            touching = bool(reach[p] & masks[q])
            if pattern.has_edge(p, q) and not touching:
                return Verdict(False, Violation.MISSING_EDGE, (p, q),
                               message=f"pattern edge {p}-{q} has no host edge between the branch sets")
            if touching and not pattern.has_edge(p, q):
                witness = next((u, v) for u in sorted(m.branch[p]) for v in host.neighbors(u) if v in m.branch[q])
                return Verdict(False, Violation.EXTRA_EDGE, (p, q), witness,
                               message=f"branch sets of non-adjacent {p} and {q} are joined by host edge {witness}")
    return _OK


def model_to_doc(m: InducedMinorModel) -> dict[str, Any]:
    return {
        "host": graph_to_doc(m.host),
        "pattern": graph_to_doc(m.pattern),
        "branch": {str(p): sorted(m.branch[p]) for p in sorted(m.branch)},
    }


def model_from_doc(doc: Any) -> InducedMinorModel:
    if not isinstance(doc, dict) or not {"host", "pattern", "branch"} <= set(doc):
        raise InputError("certificate needs fields 'host', 'pattern' and 'branch'")
    host = graph_from_doc(doc["host"])
    pattern = graph_from_doc(doc["pattern"])
    raw = doc["branch"]
    if not isinstance(raw, dict):
        raise InputError("'branch' must be a map from pattern id to host id list")
    try:
        branch = {int(k): frozenset(int(v) for v in vs) for k, vs in raw.items()}
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed branch map: {exc}") from exc
    return InducedMinorModel(host, pattern, branch)


def require_valid(m: InducedMinorModel) -> InducedMinorModel:
    v = verify_model(m)
    if not v.valid:
        raise CertificateError(v.message, v.pattern_vertices[0] if v.pattern_vertices else None)
    return m
