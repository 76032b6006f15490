"""Command-line entry point.

Exit codes: 0 affirmative/valid, 1 negative/invalid, 2 malformed input,
3 budget exhausted or indeterminate.  Every result is a canonical JSON
document on stdout (or ``--out``) that embeds the hashes of its inputs.

Graph arguments accept a file (JSON or edge list) or a generator spec
``family:NAME:P1:P2...`` (e.g. ``family:pd-grid:4``) or ``figure:NAME``.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import os
import sys
import time
from contextlib import redirect_stdout
from pathlib import Path
from typing import Any, Sequence

from . import constellations as cs
from .errors import CertificateError, ImforestError, InconsistencyError, InputError, InvariantError
from .families import Family, build
from .figures import FIGURES
from .graph import Graph
from .imm import SearchBudget, Status, find_induced_minor, find_induced_minor_forest, model_from_doc, model_to_doc, verify_model
from .io import canonical_dumps, graph_hash, graph_to_doc, load_graph, read_json, to_dot, to_edgelist, write_text
from .obstructions import (
    Verdict,
    classification_to_doc,
    classify_forest,
    find_npd_witness,
    find_nds_witness,
    witness_to_doc,
)

EXIT_OK, EXIT_NO, EXIT_BAD_INPUT, EXIT_BUDGET = 0, 1, 2, 3
ENV_NODES = "IMFOREST_MAX_NODES"
ENV_MILLIS = "IMFOREST_MAX_MS"
CORPUS = Path(__file__).with_name("data") / "corpus.json"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits 2 already; keep usage on stderr
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def _graph_arg(spec: str) -> Graph:
    if spec.startswith("family:"):
        name, *params = spec[len("family:"):].split(":")
        try:
            fam = Family(name)
        except ValueError:
            raise InputError(f"unknown family {name!r}") from None
        return build(fam, *params)
    if spec.startswith("figure:"):
        name = spec[len("figure:"):]
        if name not in FIGURES:
            raise InputError(f"unknown figure {name!r}; choose from {sorted(FIGURES)}")
        return FIGURES[name]()
    return load_graph(spec)


def _budget(args: argparse.Namespace) -> SearchBudget:
    default = SearchBudget()
    try:
        nodes = int(os.environ.get(ENV_NODES, default.max_nodes))
        millis = int(os.environ.get(ENV_MILLIS, default.max_millis))
    except ValueError:
        raise InputError(f"{ENV_NODES}/{ENV_MILLIS} must be integers") from None
    if getattr(args, "budget_nodes", None) is not None:
        nodes = args.budget_nodes
    if getattr(args, "budget_ms", None) is not None:
        millis = args.budget_ms
    if nodes <= 0 or millis <= 0:
        raise InputError("budgets must be positive")
    return SearchBudget(nodes, millis)


def _emit(args: argparse.Namespace, doc: Any) -> None:
    write_text(getattr(args, "out", None), canonical_dumps(doc))


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-nodes", type=int, help="search node budget")
    p.add_argument("--budget-ms", type=int, help="wall-clock budget in milliseconds")


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args: argparse.Namespace) -> int:
    g = build(args.family, *args.params)
    if args.format == "json":
        text = canonical_dumps(graph_to_doc(g))
    elif args.format == "dot":
        text = to_dot(g, args.family.replace("-", "_"))
    else:
        text = to_edgelist(g)
    write_text(args.out, text)
    return EXIT_OK


def cmd_find_im(args: argparse.Namespace) -> int:
    host = _graph_arg(args.host)
    pattern = _graph_arg(args.pattern)
    budget = _budget(args)
    if args.forest_fast:
        res = find_induced_minor_forest(host, pattern, budget)
    else:
        res = find_induced_minor(host, pattern, budget)
    doc = {
        "command": "find-im",
        "host": graph_hash(host),
        "pattern": graph_hash(pattern),
        "engine": "forest" if args.forest_fast else "generic",
        "status": res.status.value,
        "nodes": res.nodes,
        "certificate": model_to_doc(res.model) if res.model else None,
    }
    _emit(args, doc)
    return {Status.FOUND: EXIT_OK, Status.NOT_CONTAINED: EXIT_NO}.get(res.status, EXIT_BUDGET)


def cmd_verify_cert(args: argparse.Namespace) -> int:
    doc = read_json(args.cert)
    if isinstance(doc, dict) and "certificate" in doc:
        doc = doc["certificate"]
        if doc is None:
            raise InputError("result document carries no certificate")
    m = model_from_doc(doc)
    v = verify_model(m)
    out = {
        "command": "verify-cert",
        "host": graph_hash(m.host),
        "pattern": graph_hash(m.pattern),
        "valid": v.valid,
        "violation": v.violation.value if v.violation else None,
        "pattern_vertices": list(v.pattern_vertices),
        "host_vertices": list(v.host_vertices),
        "message": v.message,
    }
    _emit(args, out)
    return EXIT_OK if v.valid else EXIT_NO


def _constellation_arg(args: argparse.Namespace) -> cs.Constellation:
    if args.family:
        name, *params = args.family
        fam = Family(name) if name in {f.value for f in Family} else None
        ints = [int(p) for p in params]
        makers = {
            Family.PD_GRID: cs.pd_grid_constellation,
            Family.PD_GRID_GENERAL: cs.pd_grid_general_constellation,
            Family.DEATH_STAR: cs.death_star_constellation,
            Family.DEATH_STAR_GRID: cs.death_star_grid_constellation,
        }
        if fam not in makers:
            raise InputError(f"no constellation layout for family {name!r}")
        try:
            return makers[fam](*ints)
        except TypeError as exc:
            raise InputError(f"bad parameters for {name}: {params}") from exc
    if not args.input:
        raise InputError("give --in FILE or --family NAME PARAMS...")
    return cs.constellation_from_doc(read_json(args.input))


def cmd_constellation(args: argparse.Namespace) -> int:
    c = _constellation_arg(args)
    doc: dict[str, Any] = {"command": f"constellation {args.action}", "graph": graph_hash(c.graph),
                           "stars": list(c.stars)}
    if args.action == "validate":
        r = cs.validate(c)
        doc.update(valid=r.ok, reason=r.reason)
        ok = r.ok
    elif args.action == "ample":
        ok = cs.is_d_ample(c, args.d)
        doc.update(d=args.d, ample=ok)
    elif args.action == "interrupted":
        ok = cs.check_interrupted(c)
        doc.update(interrupted=ok)
    elif args.action == "zigzag":
        ok = cs.check_zigzagged(c, args.q)
        doc.update(q=args.q, zigzagged=ok)
    else:
        trace: dict[str, Any] = {}
        doc.update(ell=args.ell, variant=args.variant)
        try:
            if args.variant == "t4":
                doc["q"] = args.q
                m = cs.embed_zigzagged(c, args.ell, args.q, trace)
            else:
                m = cs.embed_interrupted(c, args.ell, args.variant, trace)
        except InputError as exc:
            doc.update(status="precondition-failed", error=str(exc))
            _emit(args, doc)
            return EXIT_NO
        except InvariantError as exc:
            doc.update(status="construction-failed", stage=exc.stage, error=str(exc))
            _emit(args, doc)
            return EXIT_NO
        doc.update(status="found", certificate=model_to_doc(m))
        ok = True
    _emit(args, doc)
    return EXIT_OK if ok else EXIT_NO


def cmd_obstruct(args: argparse.Namespace) -> int:
    g = _graph_arg(args.input)
    budget = _budget(args) if (args.budget_nodes or args.budget_ms) else None
    if args.kind == "npd":
        res = find_npd_witness(g, budget)
    else:
        res = find_nds_witness(g, args.mode, budget)
    doc = {"command": f"obstruct {args.kind}", "input": graph_hash(g), "status": res.status.value,
           "nodes": res.nodes, "witness": witness_to_doc(g, res.witness) if res.witness else None}
    if args.kind == "nds":
        doc["mode"] = args.mode
    _emit(args, doc)
    return {Status.FOUND: EXIT_OK, Status.NOT_CONTAINED: EXIT_NO}.get(res.status, EXIT_BUDGET)


def cmd_classify(args: argparse.Namespace) -> int:
    g = _graph_arg(args.input)
    budget = _budget(args)
    try:
        r = classify_forest(g, budget)
    except InconsistencyError as exc:
        print(f"INCONSISTENCY: {exc}", file=sys.stderr)
        _emit(args, {"command": "classify", "input": graph_hash(g), "verdict": "inconsistent", "error": str(exc)})
        return EXIT_BUDGET
    doc = classification_to_doc(g, r)
    doc["command"] = "classify"
    _emit(args, doc)
    if args.emit_witness and r.verdict is Verdict.NEGA:
        write_text(args.emit_witness, canonical_dumps(witness_to_doc(g, r.witness)))
    return {Verdict.POSI: EXIT_OK, Verdict.NEGA: EXIT_NO}.get(r.verdict, EXIT_BUDGET)


def run_captured(argv: Sequence[str], cwd: Path | None = None) -> tuple[int, str]:
    """Run ``main`` in-process, returning (exit code, stdout text)."""
    buf = io.StringIO()
    old = Path.cwd()
    try:
        if cwd is not None:
            os.chdir(cwd)
        with redirect_stdout(buf):
            code = main(list(argv))
    finally:
        os.chdir(old)
    return code, buf.getvalue()


def cmd_selfcheck(args: argparse.Namespace) -> int:
    path = Path(args.corpus) if args.corpus else CORPUS
    if not path.is_file():
        print(f"corpus file not found: {path}", file=sys.stderr)
        return EXIT_BAD_INPUT
    corpus = read_json(path)
    extra: list[str] = []
    if args.budget_nodes is not None:
        extra += ["--budget-nodes", str(args.budget_nodes)]
    if args.budget_ms is not None:
        extra += ["--budget-ms", str(args.budget_ms)]
    failures = 0
    lines = []
    for item in corpus["items"]:
        argv = list(item["argv"])
        if extra and item.get("budgeted"):
            argv += extra
        t0 = time.perf_counter()
        code, out = run_captured(argv, path.parent)
        again = run_captured(argv, path.parent)[1] if args.repeat else out
        dt = time.perf_counter() - t0
        golden = item.get("stdout_sha256")
        digest_ok = golden is None or bool(extra and item.get("budgeted")) or golden == hashlib.sha256(out.encode()).hexdigest()
        if code == EXIT_BUDGET and item["expect"] != EXIT_BUDGET:
            state = "INDETERMINATE"
        elif code == item["expect"] and out == again and digest_ok:
            state = "PASS"
        else:
            state = "FAIL"
            failures += 1
        note = "" if out == again else " (output differs between runs)"
        if not digest_ok:
            note += " (output differs from the recorded digest)"
        lines.append(f"{state:13s} {item['id']:28s} exit={code} expected={item['expect']} {dt:7.2f}s{note}")
    for line in lines:
        print(line, file=sys.stderr)
    print(f"{len(lines) - failures}/{len(lines)} items without failure", file=sys.stderr)
    return EXIT_OK if failures == 0 else EXIT_NO


# ---------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="imforest", description="Induced-minor tools for forests, constellations and obstructions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a family member")
    g.add_argument("family", choices=[f.value for f in Family])
    g.add_argument("params", nargs="*")
    g.add_argument("--format", choices=["json", "dot", "edgelist"], default="json")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    f = sub.add_parser("find-im", help="search for an induced-minor model")
    f.add_argument("--host", required=True)
    f.add_argument("--pattern", required=True)
    f.add_argument("--forest-fast", action="store_true", help="use the forest DP (both graphs must be forests)")
    _add_budget(f)
    f.add_argument("--out")
    f.set_defaults(func=cmd_find_im)

    v = sub.add_parser("verify-cert", help="check a model certificate")
    v.add_argument("cert")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify_cert)

    c = sub.add_parser("constellation", help="constellation checks and constructions")
    c.add_argument("action", choices=["validate", "ample", "interrupted", "zigzag", "embed"])
    c.add_argument("--in", dest="input")
    c.add_argument("--family", nargs="+", metavar="ARG", help="family name then parameters")
    c.add_argument("--d", type=int, default=1)
    c.add_argument("--q", type=int, default=1)
    c.add_argument("--ell", type=int, default=2)
    c.add_argument("--variant", choices=["t2", "t3", "t4"], default="t2")
    c.add_argument("--out")
    c.set_defaults(func=cmd_constellation)

    o = sub.add_parser("obstruct", help="search for an npd or nds witness")
    o.add_argument("kind", choices=["npd", "nds"])
    o.add_argument("--in", dest="input", required=True)
    o.add_argument("--mode", choices=["lemma", "theorem"], default="theorem")
    _add_budget(o)
    o.add_argument("--out")
    o.set_defaults(func=cmd_obstruct)

    k = sub.add_parser("classify", help="classify a forest as posi or nega")
    k.add_argument("--in", dest="input", required=True)
    k.add_argument("--emit-witness")
    _add_budget(k)
    k.add_argument("--out")
    k.set_defaults(func=cmd_classify)

    s = sub.add_parser("selfcheck", help="run the bundled corpus")
    s.add_argument("--corpus")
    s.add_argument("--repeat", action="store_true", help="run each item twice and require identical output")
    _add_budget(s)
    s.set_defaults(func=cmd_selfcheck)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, CertificateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ImforestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO


if __name__ == "__main__":
    raise SystemExit(main())
