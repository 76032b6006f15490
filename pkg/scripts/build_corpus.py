"""Regenerate the bundled selfcheck corpus under src/imforest/data/."""

from __future__ import annotations

import hashlib
from pathlib import Path

from imforest.cli import run_captured
from imforest.constellations import biclique_model, pd_grid_constellation
from imforest.figures import npd_tree
from imforest.graph import cycle_graph, disjoint_union
from imforest.imm import InducedMinorModel, model_to_doc
from imforest.io import canonical_dumps, graph_to_doc

DATA = Path(__file__).resolve().parents[1] / "src" / "imforest" / "data"

ITEMS = [
    ("gen-pd-grid-6-dot", ["gen", "pd-grid", "6", "--format", "dot"], 0, False),
    ("verify-knn-pd3", ["verify-cert", "knn_pd3.json"], 0, False),
    ("verify-knn-pd3-moved", ["verify-cert", "knn_pd3_moved.json"], 1, False),
    ("classify-fig3-left", ["classify", "--in", "fig3_left.json"], 1, True),
    ("find-im-2k3-death-star-3", ["find-im", "--host", "family:death-star:3", "--pattern", "two_triangles.json"], 1, True),
    ("find-im-nds-left-death-star-3", ["find-im", "--host", "family:death-star:3", "--pattern", "figure:nds-left"], 1, True),
    ("find-im-forest-t2-in-t4", ["find-im", "--forest-fast", "--host", "family:t4:2", "--pattern", "family:t2:2"], 0, True),
    ("constellation-validate-pd4", ["constellation", "validate", "--family", "pd-grid", "4"], 0, False),
    ("constellation-ample-3", ["constellation", "ample", "--d", "3", "--family", "pd-grid-general", "6", "4", "3", "3"], 0, False),
    ("constellation-zigzag-pd5", ["constellation", "zigzag", "--q", "1", "--family", "pd-grid", "5"], 0, False),
    ("constellation-interrupted-dsg", ["constellation", "interrupted", "--family", "death-star-grid", "8", "15", "3", "3"], 0, False),
    ("embed-zigzag-t4", ["constellation", "embed", "--variant", "t4", "--ell", "2", "--q", "1",
                         "--family", "pd-grid-general", "30", "16", "4", "4"], 0, False),
    ("embed-interrupted-t2", ["constellation", "embed", "--variant", "t2", "--ell", "2",
                              "--family", "death-star-grid", "8", "15", "4", "4"], 0, False),
    ("embed-interrupted-t3", ["constellation", "embed", "--variant", "t3", "--ell", "2",
                              "--family", "death-star-grid", "8", "15", "4", "4"], 0, False),
    ("obstruct-npd-fig3-left", ["obstruct", "npd", "--in", "figure:npd-left"], 0, False),
    ("obstruct-nds-fig6-right", ["obstruct", "nds", "--in", "figure:nds-right", "--mode", "lemma"], 0, False),
    ("obstruct-npd-t2-2", ["obstruct", "npd", "--in", "family:t2:2"], 1, False),
    ("classify-t1-3", ["classify", "--in", "family:t1:3"], 0, True),
    ("classify-fig6-left", ["classify", "--in", "figure:nds-left"], 1, True),
]


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    (DATA / "fig3_left.json").write_text(canonical_dumps(graph_to_doc(npd_tree(True))))
    (DATA / "two_triangles.json").write_text(canonical_dumps(graph_to_doc(disjoint_union(cycle_graph(3), cycle_graph(3)))))
    m = biclique_model(pd_grid_constellation(3))
    (DATA / "knn_pd3.json").write_text(canonical_dumps(model_to_doc(m)))
    branch = {p: set(vs) for p, vs in m.branch.items()}
    moved = sorted(branch[0])[1]
    branch[0].discard(moved)
    branch[4].add(moved)
    bad = InducedMinorModel.build(m.host, m.pattern, branch)
    (DATA / "knn_pd3_moved.json").write_text(canonical_dumps(model_to_doc(bad)))
    items = []
    for i, a, e, b in ITEMS:
        code, out = run_captured(a, DATA)
        if code != e:
            raise SystemExit(f"{i}: exit {code}, expected {e}")
        digest = hashlib.sha256(out.encode()).hexdigest()
        items.append({"id": i, "argv": a, "expect": e, "budgeted": b, "stdout_sha256": digest})
    (DATA / "corpus.json").write_text(canonical_dumps({"items": items}))


if __name__ == "__main__":
    main()
