"""Command-line front end.

Exit codes: 0 success or derivable, 1 not derivable / audit gaps / failed
verification, 2 input errors (unreadable or invalid model and data files),
3 usage errors (unknown condition, atom or option).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .conditions import (
    ORDER,
    GlobalOnlyCondition,
    UnknownAtom,
    UnknownCondition,
    check_at,
    check_global,
    global_atoms,
    parse_atoms,
    parse_condition,
    point_atoms,
    points_of,
)
from .corpus import MACHINE, CorpusError, list_records, load_corpus, verify
from .formats import ModelFormatError, load_model, number
from .graph import Scope, TableError, audit_consistency, load_graph
from .piecewise import DomainError
from .search import DEFAULT_GRID, cross_validate, sweep
from .topology import FiniteModel, UnknownPoint

OK, NEGATIVE, INPUT_ERROR, USAGE_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2, which is reserved for input errors
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(USAGE_ERROR)


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        out = json.dumps(data, indent=2, sort_keys=True) + "\n"
    else:
        out = text if text.endswith("\n") else text + "\n"
    dest = getattr(args, "out", None)
    if dest:
        Path(dest).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def _conds(names):
    try:
        return [parse_condition(n) for n in names] if names else list(ORDER)
    except UnknownCondition as exc:
        raise UsageError(exc.args[0]) from None


def _atoms(names):
    try:
        return parse_atoms(names or [])
    except UnknownAtom as exc:
        raise UsageError(exc.args[0]) from None


def _scope(args, *conds) -> Scope:
    if args.scope == "auto":
        return Scope.GLOBAL if any(c.global_only for c in conds) else Scope.POINTWISE
    return Scope(args.scope)


def _load_model(path):
    try:
        return load_model(path)
    except ModelFormatError as exc:
        raise InputError(str(exc)) from None


def _point(model, raw):
    if isinstance(model, FiniteModel):
        if raw not in model.space.points:
            raise InputError(f"unknown point {raw!r}; points are {', '.join(model.space.points)}")
        return raw
    try:
        x = number(raw, "--point")
    except ModelFormatError as exc:
        raise InputError(str(exc)) from None
    if not x.is_finite or not model.in_domain(x.fraction):
        raise InputError(f"point {raw} is not in the domain")
    return x.fraction


# --------------------------------------------------------------------------
# check
# --------------------------------------------------------------------------


def cmd_check(args) -> int:
    model = _load_model(args.model)
    conds = _conds(args.condition)
    atoms_at = None
    if args.point is not None:
        x = _point(model, args.point)
        rows = []
        for c in conds:
            v = check_global(c, model) if c.global_only else check_at(c, model, x)
            rows.append((c, "global" if c.global_only else str(x), v))
        atoms_at = sorted(a.value for a in point_atoms(model, x))
        header = f"verdicts at x = {x}"
    else:
        rows = [(c, "global", check_global(c, model)) for c in conds]
        header = "verdicts over the whole domain"
    lines = [f"model: {args.model}", header]
    for c, where, v in rows:
        lines.append(f"  {c.value:<8} {'holds' if v.holds else 'FAILS':<6} [{where}] {c.info.definition}")
        if v.witness:
            lines.append(f"           witness: {v.witness}")
        if v.note:
            lines.append(f"           note: {v.note}")
    table = None
    if args.point is None and isinstance(model, FiniteModel):
        pts = points_of(model)
        table = {}
        lines.append("per-point table (+ holds, - fails)")
        lines.append("  " + " " * 8 + " ".join(f"{p:>3}" for p in pts))
        for c in conds:
            if c.global_only:
                continue
            marks = ["+" if check_at(c, model, p).holds else "-" for p in pts]
            table[c.value] = dict(zip(pts, [m == "+" for m in marks]))
            lines.append(f"  {c.value:<8}" + " ".join(f"{m:>3}" for m in marks))
    hyp = atoms_at if atoms_at is not None else sorted(a.value for a in global_atoms(model))
    lines.append(f"hypotheses satisfied: {', '.join(hyp)}")
    data = {
        "model": str(args.model),
        "point": None if args.point is None else str(args.point),
        "verdicts": [
            {"condition": c.value, "where": w, "holds": v.holds, "witness": v.witness, "note": v.note,
             "definition": c.info.definition}
            for c, w, v in rows
        ],
        "hypotheses": hyp,
    }
    if table is not None:
        data["per_point"] = table
    _emit(args, "\n".join(lines), data)
    return OK


# --------------------------------------------------------------------------
# graph commands
# --------------------------------------------------------------------------


def _graph():
    try:
        return load_graph()
    except TableError as exc:
        raise InputError(str(exc)) from None


def _corpus(extra=None):
    try:
        text = Path(extra).read_text(encoding="utf-8") if extra else None
        return load_corpus(text)
    except (CorpusError, OSError) as exc:
        raise InputError(str(exc)) from None


def _edge_json(e):
    return {"source": e.source.value, "target": e.target.value, "guard": e.guard.label(),
            "scope": e.scope.value, "provenance": e.provenance, "literature": list(e.literature)}


def cmd_implies(args) -> int:
    src, tgt = _conds([args.source, args.target])
    hyps = _atoms(args.hyp)
    scope = _scope(args, src, tgt)
    graph, records = _graph(), _corpus(args.records)
    try:
        res = graph.implies(src, tgt, hyps, scope, records)
    except GlobalOnlyCondition as exc:
        raise UsageError(str(exc)) from None
    hyp_text = ", ".join(sorted(a.value for a in hyps)) or "none"
    head = f"{src} => {tgt} ({scope}; hypotheses: {hyp_text})"
    if res.derivable:
        lines = [f"derivable: {head}"]
        for i, (e, used) in enumerate(res.guard_record, 1):
            lit = f"; literature items {', '.join(map(str, e.literature))}" if e.literature else ""
            guard = f" [uses {used}]" if used else ""
            lines.append(f"  {i}. {e.source} -> {e.target}{guard}: {e.provenance}{lit}")
        data = {"derivable": True, "source": src.value, "target": tgt.value, "scope": scope.value,
                "hypotheses": sorted(a.value for a in hyps), "path": [_edge_json(e) for e in res.steps]}
        _emit(args, "\n".join(lines), data)
        return OK
    lines = [f"not derivable: {head}"]
    ref = res.refutation
    if ref is not None:
        lines.append(f"  refuted by {ref.id} ({ref.tier}): {ref.provenance}")
        if ref.citation:
            lines.append(f"  citation: {ref.citation}")
    else:
        lines.append("  no counterexample record matches these hypotheses")
    data = {"derivable": False, "source": src.value, "target": tgt.value, "scope": scope.value,
            "hypotheses": sorted(a.value for a in hyps),
            "refutation": None if ref is None else {"id": ref.id, "tier": ref.tier,
                                                   "provenance": ref.provenance, "citation": ref.citation}}
    _emit(args, "\n".join(lines), data)
    return NEGATIVE


def cmd_closure(args) -> int:
    srcs = _conds(args.source)
    hyps = _atoms(args.hyp)
    scope = _scope(args, *srcs)
    try:
        reach = _graph().closure(srcs, hyps, scope)
    except GlobalOnlyCondition as exc:
        raise UsageError(str(exc)) from None
    names = [c.value for c in ORDER if c in reach]
    head = " + ".join(c.value for c in srcs)
    hyp_text = ", ".join(sorted(a.value for a in hyps)) or "none"
    text = f"closure of {head} ({scope}; hypotheses: {hyp_text}):\n  " + " ".join(names)
    _emit(args, text, {"sources": [c.value for c in srcs], "scope": scope.value,
                       "hypotheses": sorted(a.value for a in hyps), "closure": names})
    return OK


def cmd_audit(args) -> int:
    graph, records = _graph(), _corpus(args.records)
    rep = audit_consistency(graph, records)
    lines = [
        f"ordered pairs: {rep.pairs}",
        f"derivable without hypotheses: {rep.derivable}",
        f"covered by counterexample records: {rep.covered}",
        f"gaps: {len(rep.gaps)}",
    ]
    lines += [f"  gap {a} -> {b}" for a, b in rep.gaps]
    lines.append(f"soundness violations: {len(rep.violations)}")
    for v in rep.violations:
        path = " -> ".join([v.source.value] + [e.target.value for e in v.derivation.steps])
        lines.append(f"  {v.record}: {v.source} does not imply {v.target} ({v.scope}), yet {path}")
    lines.append(f"literature implications not derivable: {len(rep.unsupported)}")
    lines += [f"  item {it.item}: {it.source} => {it.target}" for it in rep.unsupported]
    lines.append("clean" if rep.clean else "NOT clean")
    data = {
        "pairs": rep.pairs, "derivable": rep.derivable, "covered": rep.covered,
        "gaps": [[a.value, b.value] for a, b in rep.gaps],
        "violations": [{"record": v.record, "source": v.source.value, "target": v.target.value,
                        "scope": v.scope.value} for v in rep.violations],
        "unsupported": [it.item for it in rep.unsupported],
        "clean": rep.clean,
    }
    _emit(args, "\n".join(lines), data)
    return OK if rep.clean else NEGATIVE


def cmd_export_dot(args) -> int:
    hyps = _atoms(args.hyp)
    scope = Scope(args.scope)
    dot = _graph().export_dot(scope, hyps)
    if args.format == "json":
        _emit(args, dot, {"scope": scope.value, "dot": dot})
    else:
        _emit(args, dot, None)
    return OK


# --------------------------------------------------------------------------
# corpus
# --------------------------------------------------------------------------


def _record_json(r):
    return {"id": r.id, "tier": r.tier, "refutes": [[a.value, b.value] for a, b in r.refutes],
            "context": sorted(a.value for a in r.context), "provenance": r.provenance,
            "citation": r.citation, "literature_item": r.literature_item}


def cmd_corpus_list(args) -> int:
    records = _corpus(args.records)
    try:
        found = list_records(records, args.tier, args.source, args.target, args.provenance)
    except UnknownCondition as exc:
        raise UsageError(exc.args[0]) from None
    lines = [f"{len(found)} records"]
    for r in found:
        pairs = ", ".join(f"{a}-/->{b}" for a, b in r.refutes)
        lines.append(f"  {r.id:<18} {r.tier:<16} {pairs}  ({r.provenance})")
    _emit(args, "\n".join(lines), [_record_json(r) for r in found])
    return OK


def cmd_corpus_verify(args) -> int:
    records = _corpus(args.records)
    chosen = [r for r in records if r.tier == MACHINE and (not args.id or r.id in args.id)]
    if args.id:
        known = {r.id: r for r in records}
        for rid in args.id:
            if rid not in known:
                raise UsageError(f"unknown record {rid!r}")
            if known[rid].tier != MACHINE:
                raise UsageError(f"{rid} is {known[rid].tier} and has no model to verify")
    lines, data, failed = [], [], 0
    for r in chosen:
        rep = verify(r)
        failed += not rep.passed
        lines.append(f"{r.id}: {'pass' if rep.passed else 'FAIL'}")
        for o in rep.outcomes:
            lines.append(f"  {'ok ' if o.ok else 'BAD'} {o.expectation.describe()}: {o.detail}")
        data.append({"id": r.id, "passed": rep.passed,
                     "outcomes": [{"expected": o.expectation.describe(), "ok": o.ok, "detail": o.detail}
                                  for o in rep.outcomes]})
    lines.append(f"{len(chosen) - failed}/{len(chosen)} records pass")
    _emit(args, "\n".join(lines), data)
    return OK if failed == 0 else NEGATIVE


# --------------------------------------------------------------------------
# sweeps
# --------------------------------------------------------------------------


def _grid(raw):
    return raw.split(",") if raw else list(DEFAULT_GRID)


def cmd_sweep(args) -> int:
    try:
        rep = sweep(args.n_max, _grid(args.grid), args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = {
        "n_max": rep.n_max, "grid": [str(g) for g in rep.grid], "topologies": rep.topologies,
        "models": rep.models, "points": rep.points, "edge_checks": rep.edge_checks,
        "violations": [{"edge": v.edge, "scope": v.scope.value, "witness": str(v.witness)} for v in rep.violations],
        "pointwise_separations": {f"{a}->{b}": str(w) for (a, b), w in rep.pointwise_sep.items()},
        "global_separations": {f"{a}->{b}": str(w) for (a, b), w in rep.global_sep.items()},
        "twlc_attainment_exceptions": rep.twlc_exceptions,
        "tlc_attainment_exceptions": rep.tlc_exceptions,
    }
    _emit(args, rep.to_text(), data)
    return OK if rep.clean else NEGATIVE


def cmd_cross_validate(args) -> int:
    try:
        rep = cross_validate(args.n_max, _grid(args.grid))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = {"n_max": rep.n_max, "grid": [str(g) for g in rep.grid], "models": rep.models,
            "comparisons": rep.comparisons,
            "mismatches": [{"model": m.model, "condition": m.condition.value, "point": m.point,
                            "reduced": m.reduced, "literal": m.literal} for m in rep.mismatches]}
    _emit(args, rep.to_text(), data)
    return OK if rep.clean else NEGATIVE


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="semicont", description="Lower-semicontinuity-type conditions: checks, implications, counterexamples.")
    p.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    c = sub.add_parser("check", help="verdicts for a model file")
    c.add_argument("model")
    c.add_argument("--point", help="report at this point")
    c.add_argument("--condition", "-c", action="append", help="restrict to these conditions")
    common(c)
    c.set_defaults(func=cmd_check)

    for name, func, help_ in (("implies", cmd_implies, "derive target from source, or cite a refutation"),):
        s = sub.add_parser(name, help=help_)
        s.add_argument("source")
        s.add_argument("target")
        s.add_argument("--hyp", action="append", help="hypothesis atom (repeatable)")
        s.add_argument("--scope", choices=("auto", "pointwise", "global"), default="auto")
        s.add_argument("--records", help="extra counterexample records (YAML)")
        common(s)
        s.set_defaults(func=func)

    s = sub.add_parser("closure", help="everything derivable from the given conditions")
    s.add_argument("source", nargs="+")
    s.add_argument("--hyp", action="append")
    s.add_argument("--scope", choices=("auto", "pointwise", "global"), default="auto")
    common(s)
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("audit", help="check the edge table against the counterexample records")
    s.add_argument("--records", help="extra counterexample records (YAML)")
    common(s)
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("corpus", help="list or verify counterexample records")
    csub = s.add_subparsers(dest="corpus_command", required=True, parser_class=_Parser)
    cl = csub.add_parser("list")
    cl.add_argument("--tier", choices=("machine-checked", "paper-cited"))
    cl.add_argument("--source")
    cl.add_argument("--target")
    cl.add_argument("--provenance", help='"literature" or a substring of the provenance')
    cl.add_argument("--records")
    common(cl)
    cl.set_defaults(func=cmd_corpus_list)
    cv = csub.add_parser("verify")
    cv.add_argument("id", nargs="*")
    cv.add_argument("--records")
    common(cv)
    cv.set_defaults(func=cmd_corpus_verify)

    s = sub.add_parser("sweep", help="exhaustive finite-model sweep")
    s.add_argument("--n-max", type=int, default=4)
    s.add_argument("--grid", help="comma-separated values, default -inf,-1,0,1,+inf")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out")
    common(s)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("cross-validate", help="reduced checker against literal definitions")
    s.add_argument("--n-max", type=int, default=3)
    s.add_argument("--grid")
    common(s)
    s.set_defaults(func=cmd_cross_validate)

    s = sub.add_parser("export-dot", help="the implication diagram in DOT format")
    s.add_argument("--scope", choices=("pointwise", "global"), default="pointwise")
    s.add_argument("--hyp", action="append")
    s.add_argument("--out")
    common(s)
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"semicont: {exc}\n")
        return USAGE_ERROR
    except (InputError, UnknownPoint, DomainError) as exc:
        sys.stderr.write(f"semicont: {exc}\n")
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
