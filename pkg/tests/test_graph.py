import pytest
from hypothesis import given, strategies as st

from semicont.conditions import ORDER, Atom, Condition, GlobalOnlyCondition
from semicont.corpus import load_corpus
from semicont.graph import (
    NONE,
    Edge,
    Guard,
    Scope,
    TableError,
    audit_consistency,
    load_graph,
    parse_edges,
    seed_edges,
)

C = Condition
GRAPH = load_graph()
RECORDS = load_corpus()


def has_edge(scope, src, tgt, guard_text):
    return any(
        (e.source, e.target, e.guard) == (src, tgt, Guard.parse(guard_text)) for e in seed_edges(scope)
    )


def reach_oracle(graph, scope, hyps, src):
    # Warshall over the guard-satisfied adjacency matrix
    idx = {c: i for i, c in enumerate(ORDER)}
    n = len(ORDER)
    r = [[i == j for j in range(n)] for i in range(n)]
    for e in graph.edges_in(scope):
        if e.guard.satisfied(hyps):
            r[idx[e.source]][idx[e.target]] = True
    for k in range(n):
        for i in range(n):
            if r[i][k]:
                for j in range(n):
                    r[i][j] = r[i][j] or r[k][j]
    return {c for c in ORDER if r[idx[src]][idx[c]]}


def test_seed_examples():
    assert has_edge("pointwise", C.LSC, C.LPC, "")
    assert has_edge("pointwise", C.SLQC, C.LQC, "N1")
    assert has_edge("global", C.LM, C.UBSLSCA, "")
    assert len(seed_edges("pointwise")) == 63
    assert len(seed_edges("global")) == 67


def test_global_only_conditions_have_no_pointwise_edges():
    for e in seed_edges("pointwise"):
        assert not e.source.global_only and not e.target.global_only


def test_lsc_implies_twlc():
    d = GRAPH.implies(C.LSC, C.TWLC, (), "pointwise")
    assert d.derivable and d.replay()
    assert d.steps[0].source is C.LSC and d.steps[-1].target is C.TWLC
    assert all(g == "" for _, g in d.guard_record)


def test_slsc_twlc_refuted():
    for scope in ("pointwise", "global"):
        nd = GRAPH.implies(C.SLSC, C.TWLC, (), scope, RECORDS)
        assert not nd.derivable
        assert nd.refutation.id == "CE-SLSC-TWLC"


def test_slqc_lqc_single_guarded_edge():
    d = GRAPH.implies(C.SLQC, C.LQC, [Atom.N1], "pointwise")
    assert len(d.steps) == 1
    assert d.guard_record[0][1] == "N1"
    assert 24 in d.steps[0].literature
    assert not GRAPH.implies(C.SLQC, C.LQC, (), "pointwise").derivable


def test_islsc_rgi_needs_a_hypothesis():
    assert not GRAPH.implies(C.ISLSC, C.RGI).derivable
    assert GRAPH.implies(C.ISLSC, C.RGI, ["N1"]).derivable
    assert GRAPH.implies(C.ISLSC, C.RGI, ["conv-min-seq"], "pointwise").derivable
    assert not GRAPH.implies(C.ISLSC, C.RGI, ["conv-min-seq"], "global").derivable


def test_global_only_in_pointwise_scope():
    with pytest.raises(GlobalOnlyCondition):
        GRAPH.implies(C.UBLSCA, C.BLSCA, (), "pointwise")
    assert GRAPH.implies(C.UBLSCA, C.BLSCA, (), "global").derivable


atom_sets = st.frozensets(st.sampled_from(list(Atom)))


@given(st.sampled_from([c for c in ORDER if not c.global_only]), atom_sets, atom_sets, st.sampled_from(list(Scope)))
def test_closure_is_monotone_in_hypotheses(src, h1, h2, scope):
    small = GRAPH.closure([src], h1, scope)
    big = GRAPH.closure([src], h1 | h2, scope)
    assert small <= big


@given(st.sampled_from(ORDER), atom_sets, st.sampled_from(list(Scope)))
def test_closure_matches_warshall(src, hyps, scope):
    if scope is Scope.POINTWISE and src.global_only:
        return
    assert GRAPH.closure([src], hyps, scope) == reach_oracle(GRAPH, scope, hyps, src)


@given(st.sampled_from(ORDER), st.sampled_from(ORDER), atom_sets)
def test_every_derivation_replays(a, b, hyps):
    d = GRAPH.implies(a, b, hyps, "global")
    if d.derivable:
        assert d.replay()
        assert all(e.guard.satisfied(hyps) for e in d.steps)


def test_replay_rejects_broken_path():
    d = GRAPH.implies(C.LSC, C.TWLC)
    broken = type(d)(d.source, d.target, d.hypotheses, d.scope, d.steps[1:])
    assert not broken.replay()


def test_guard_parsing():
    g = Guard.parse("N1 or conv-min-seq")
    assert len(g.terms) == 2
    assert g.satisfied([Atom.N1]) and g.satisfied([Atom.CONV_MIN_SEQ])
    assert not g.satisfied([])
    assert Guard.parse("N1+no-jump").satisfied([Atom.N1, Atom.NO_JUMP])
    assert not Guard.parse("N1+no-jump").satisfied([Atom.N1])
    assert Guard.parse("") == NONE and NONE.unguarded


def test_table_parser():
    edges = parse_edges("# comment\nLSC | LPC | | both | trivial\n")
    assert [e.scope for e in edges] == [Scope.POINTWISE, Scope.GLOBAL]
    for bad in (
        "LSC | LPC | | both",
        "LSC | XYZ | | both | x",
        "LSC | LPC | bogus-atom | both | x",
        "LSC | LPC | | sideways | x",
        "LSC | LPC | | both | ",
        "UBLSCA | BLSCA | | pointwise | x",
    ):
        with pytest.raises(TableError):
            parse_edges(bad)


def test_export_dot():
    dot = GRAPH.export_dot("pointwise")
    nodes = [l for l in dot.splitlines() if l.strip().startswith('"') and "->" not in l]
    assert len(nodes) == 27
    arrows = [l for l in dot.splitlines() if "->" in l]
    assert len(arrows) == 63
    assert '"SLQC" -> "LQC" [label="N1", style=dashed];' in dot
    with_n1 = GRAPH.export_dot("pointwise", ["N1"])
    assert '"SLQC" -> "LQC" [label="N1"];' in with_n1
    assert all("style=dashed" not in l for l in with_n1.splitlines() if 'label="N1"' in l)
    assert GRAPH.export_dot("pointwise") == dot


def test_audit_clean():
    rep = audit_consistency(GRAPH, RECORDS)
    assert rep.clean, (rep.violations, rep.gaps, rep.unsupported)
    assert rep.pairs == 27 * 26
    assert rep.derivable + rep.covered == rep.pairs


def separated_by(graph, record):
    holds = graph.closure(record.holds_set, record.context, "global")
    fails = graph.ancestors(record.fails_set, record.context, "global")
    return {(a, b) for a in holds for b in fails}


def test_removing_a_record_exposes_exactly_its_pairs():
    gone = next(r for r in RECORDS if r.id == "CE-WLC-STLC")
    rest = [r for r in RECORDS if r is not gone]
    others = set().union(*(separated_by(GRAPH, r) for r in rest))
    expected = {
        (a, b)
        for a, b in separated_by(GRAPH, gone) - others
        if a != b and b not in GRAPH.closure([a], (), "global")
    }
    rep = audit_consistency(GRAPH, rest)
    assert set(rep.gaps) == expected
    assert (C.WLC, C.STLC) in expected and (C.WLC, C.TLC) in expected
    assert not rep.violations


def test_fabricated_edge_is_flagged():
    fake = Edge(C.STLC, C.LSC, NONE, Scope.POINTWISE, "fabricated")
    bad = GRAPH.with_edges([fake, Edge(C.STLC, C.LSC, NONE, Scope.GLOBAL, "fabricated")])
    rep = audit_consistency(bad, RECORDS)
    assert rep.violations
    for v in rep.violations:
        assert v.derivation.replay()
        assert any(e.provenance == "fabricated" for e in v.derivation.steps)
    assert "CE-LPC-SLSC" in {v.record for v in rep.violations}
