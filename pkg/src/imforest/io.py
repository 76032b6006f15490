"""Serialisation: canonical JSON graph documents, DOT export, edge-list import."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .errors import InputError
from .graph import Graph


def canonical_dumps(doc: Any) -> str:
    """The one serialisation used for every document we write (stable bytes)."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def sha256_of(doc: Any) -> str:
    return hashlib.sha256(canonical_dumps(doc).encode()).hexdigest()


def graph_to_doc(g: Graph) -> dict:
    doc: dict[str, Any] = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if g.labels:
        doc["labels"] = {str(k): v for k, v in g.labels.items()}
    return doc


def graph_from_doc(doc: Any) -> Graph:
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise InputError("graph document needs fields 'n' and 'edges'")
    try:
        n = doc["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise InputError("'n' must be an integer")
        edges = [tuple(e) for e in doc["edges"]]
        for e in edges:
            if len(e) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in e):
                raise InputError(f"bad edge entry {list(e)!r}")
        labels = {int(k): v for k, v in (doc.get("labels") or {}).items()}
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed graph document: {exc}") from exc
    return Graph(n, edges, labels)


def graph_hash(g: Graph) -> str:
    """Hash of the canonical form (labels excluded: they are advisory)."""
    return sha256_of({"n": g.n, "edges": [list(e) for e in g.edges]})


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in g.vertices():
        lab = g.labels.get(v)
        lines.append(f'  {v} [label="{v}:{lab}"];' if lab else f"  {v};")
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_edgelist(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def from_edgelist(text: str, n: int | None = None) -> Graph:
    """One ``u v`` pair per line; ``#`` starts a comment; n defaults to max id + 1."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise InputError(f"line {lineno}: non-integer vertex id") from exc
    top = max((max(e) for e in edges), default=-1) + 1
    if n is None:
        n = top
    elif n < top:
        raise InputError(f"n={n} is smaller than the largest id + 1 ({top})")
    return Graph(n, edges)


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def load_graph(path: str | Path) -> Graph:
    """Read a graph from JSON, or from an edge list when the file is not JSON."""
    p = Path(path)
    try:
        text = p.read_text()
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from exc
        if "graph" in doc and "n" not in doc:
            doc = doc["graph"]
        return graph_from_doc(doc)
    return from_edgelist(text)


def write_text(path: str | Path | None, text: str) -> None:
    if path is None:
        import sys

        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
