from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from semicont.conditions import (
    ORDER,
    Condition,
    GlobalOnlyCondition,
    check_at,
    check_global,
    parse_condition,
    point_atoms,
)
from semicont.conditions.finite import isolated_liminf, punctured_liminf
from semicont.conditions.literal import literal_verdict
from semicont.conditions.propositions import (
    check_lpc_levelsets,
    check_plc_jump_char,
    check_qrgi_char,
    check_rgi_char,
    check_twlc_equivalences,
)
from semicont.extreal import NEG_INF, POS_INF, ExtReal
from semicont.graph import load_graph
from semicont.piecewise import Staircase, piecewise
from semicont.search import cross_validate, proposition_sweep
from semicont.topology import FiniteModel, FiniteSpace, enumerate_spaces, liminf_at

C = Condition
F = Fraction
STEP = piecewise("(-inf,+inf)", [("(-inf,0)", 0), ("[0,+inf)", 1)])
LPC_EX = piecewise("(0,1]", [("(0,1)", 1, 0), ("{1}", 2)])
UBLSCA_EX = piecewise("[-1,1]", [("[-1,0]", -1), ("(0,1)", -1, 1), ("{1}", 1)])
STAIRCASE = piecewise("(-inf,+inf)", [("(-inf,0]", 0)], Staircase(1, 50))
PLC_EX = piecewise("[0,1]", [("{0}", 2), ("(0,1)", 0), ("{1}", 1)])


def sier(fa, fb):
    sp = FiniteSpace(("a", "b"), frozenset(map(frozenset, [(), ("a",), ("a", "b")])))
    return FiniteModel.of(sp, {"a": fa, "b": fb})


def test_catalog_has_27_conditions_two_global_only():
    assert len(ORDER) == 27
    assert {c for c in ORDER if c.global_only} == {C.UBLSCA, C.UBSLSCA}
    assert parse_condition("lsc") is C.LSC


def test_step_function_verdicts():
    assert check_at(C.WLC, STEP, 0).holds
    v = check_at(C.STLC, STEP, 0)
    assert not v.holds and "1/n" in v.witness


def test_sierpinski_lsc_fails_at_b():
    m = sier(0, 1)
    assert liminf_at(m, "b") == ExtReal(0)
    assert not check_at(C.LSC, m, "b").holds
    assert check_at(C.LSC, m, "a").holds


def test_lpc_example():
    assert check_at(C.LPC, LPC_EX, 1).holds
    assert not check_at(C.LSC, LPC_EX, 1).holds


def test_uniform_examples():
    v = check_global(C.UBLSCA, UBLSCA_EX)
    assert v.holds and "a=-1/2" in v.witness
    v = check_at(C.SDSC, UBLSCA_EX, 1)
    assert not v.holds and "1 - 1/n" in v.witness
    assert not check_global(C.UBSLSCA, STAIRCASE).holds
    assert check_global(C.RGI, STAIRCASE).holds


def test_global_only_rejected_pointwise():
    with pytest.raises(GlobalOnlyCondition):
        check_at(C.UBLSCA, sier(0, 1), "a")


def test_unknown_point():
    with pytest.raises(KeyError):
        check_at(C.LSC, sier(0, 1), "z")


def test_all_top_function_satisfies_everything():
    m = sier(POS_INF, POS_INF)
    for c in ORDER:
        assert check_global(c, m).holds, c


def test_twlc_equivalence_examples():
    assert check_twlc_equivalences(sier(0, 1), "b") == (True, True, True, True)
    sp = FiniteSpace(("p", "q"), frozenset(map(frozenset, [(), ("p",), ("q",), ("p", "q")])))
    m = FiniteModel.of(sp, [0, 1])
    assert check_twlc_equivalences(m, "q") == (True, True, True, True)


def test_lpc_levelset_example():
    res = check_lpc_levelsets(sier(1, 0))
    assert res.agree
    assert sier(1, 0).space.is_closed({"b"})


def test_rgi_qrgi_char_sierpinski():
    m = sier(0, 1)
    rgi = check_rgi_char(m, "b")
    assert (rgi.definition, rgi.characterization) == (False, False)
    qrgi = check_qrgi_char(m, "b")
    assert qrgi.definition and qrgi.agree
    assert check_rgi_char(m, "a").definition


def test_plc_jump_char_examples():
    res = check_plc_jump_char(PLC_EX)
    assert res.definition and res.agree
    assert not check_at(C.LQC, PLC_EX, 0).holds
    step = piecewise("(-inf,+inf)", [("(-inf,0]", 0), ("(0,+inf)", 1)])
    res = check_plc_jump_char(step)
    assert res.definition and res.characterization


def test_liminf_attainment_literal_reading():
    # f(x) = x on [0,1] and 1 on (1,2]: at 1 the left values rise to 1,
    # so no neighbourhood has infimum 1 and y = 1 is not below inf_U f
    fn = piecewise("[0,2]", [("[0,1]", 1, 0), ("(1,2]", 1)])
    from semicont.piecewise import analyze_point

    pa = analyze_point(fn, 1)
    assert pa.liminf == ExtReal(1) and not pa.liminf_attained
    # WLC at 1 still holds through y = 0 (the global minimum)
    assert check_at(C.WLC, fn, 1).holds


def test_cross_validation_small():
    rep = cross_validate(2, ("0", "1", "+inf"))
    assert rep.models == 39
    assert rep.clean, rep.to_text()


def test_cross_validation_n3_default_grid():
    rep = cross_validate(3)
    assert rep.models == 3730
    assert rep.clean, rep.to_text()


def test_isolated_fault_is_caught():
    rep = cross_validate(2, ("-1", "0", "1"), liminf=isolated_liminf)
    assert not rep.clean
    assert any(mm.condition is C.LSC for mm in rep.mismatches)


def test_punctured_fault_is_invisible():
    # min(f(x), punctured liminf) is the true liminf, and the reduced checker
    # only ever uses the liminf through comparisons that also involve f(x).
    # So this planted fault cannot change a verdict; pinned as a finding.
    rep = cross_validate(3, liminf=punctured_liminf)
    assert rep.clean


def test_proposition_sweep_agrees():
    rep = proposition_sweep(3)
    assert rep.models == 3730
    assert rep.clean, rep.disagreements[:5]
    assert rep.checks["rgi-char"] > 0 and rep.checks["twlc-equivalences"] > 0


def test_literal_verdict_spot_check():
    m = sier(0, 1)
    assert not literal_verdict(C.LSC, m, "b")
    assert literal_verdict(C.QRGI, m, "b")


GRID = [NEG_INF, ExtReal(-1), ExtReal(0), ExtReal(1), POS_INF]
SPACES = [s for n in (1, 2, 3) for s in enumerate_spaces(n)]
GRAPH = load_graph()


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SPACES), st.data())
def test_verdicts_respect_graph_edges(sp, data):
    vals = data.draw(st.lists(st.sampled_from(GRID), min_size=sp.size, max_size=sp.size))
    m = FiniteModel.of(sp, vals)
    for x in sp.points:
        holding = {c for c in ORDER if not c.global_only and check_at(c, m, x).holds}
        implied = GRAPH.closure(holding, point_atoms(m, x), "pointwise")
        for c in implied:
            assert check_at(c, m, x).holds, (c, x, vals)
