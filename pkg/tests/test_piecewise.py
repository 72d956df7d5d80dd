from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from semicont.extreal import POS_INF, ExtReal
from semicont.piecewise import (
    DomainError,
    Staircase,
    analyze_point,
    image_of,
    jumps_of,
    min_seq_converging_to,
    piecewise,
)

F = Fraction
STEP = piecewise("(-inf,+inf)", [("(-inf,0]", 0), ("(0,+inf)", 1)])
LQC = piecewise("[-1,2]", [("[-1,0]", -1, 0), ("(0,1]", -1, -1), ("(1,2]", 1, -3)])
LPC = piecewise("(0,1]", [("(0,1)", 1, 0), ("{1}", 2)])
IDENT = piecewise("(0,1]", [("(0,1]", 1, 0)])


def sampled_side_inf(fn, x, side, k):
    # oracle: infimum over a dense rational sample of a one-sided neighbourhood
    pts = [x - F(j, k * 10) if side == "left" else x + F(j, k * 10) for j in range(1, 11)]
    vals = [fn(p) for p in pts if fn.in_domain(p)]
    return min(vals) if vals else POS_INF


def test_step_point_analysis():
    pa = analyze_point(STEP, 0)
    assert pa.value == ExtReal(0)
    assert pa.left_liminf == ExtReal(0)
    assert pa.right_liminf == ExtReal(1)
    assert pa.liminf == ExtReal(0)
    for k in (10, 100, 1000):
        assert sampled_side_inf(STEP, F(0), "left", k) == ExtReal(0)
        assert sampled_side_inf(STEP, F(0), "right", k) == ExtReal(1)


def test_lqc_example_liminf():
    assert analyze_point(LQC, 0).liminf == ExtReal(-1)


def test_constant_profile():
    c = piecewise("(-inf,+inf)", [("(-inf,+inf)", 3)])
    pa = analyze_point(c, F(7, 2))
    assert pa.liminf == ExtReal(3)
    assert all(s.kind == "constant" for s in pa.sides)
    assert len(jumps_of(c)) == 0


def test_outside_domain():
    with pytest.raises(DomainError):
        analyze_point(IDENT, 0)


def test_images():
    img = image_of(IDENT)
    assert str(img) == "(0,1]"
    assert img.infimum() == (ExtReal(0), False)
    img = image_of(LPC)
    assert img.contains(F(1, 2)) and img.contains(2)
    assert not img.contains(1) and not img.contains(F(3, 2)) and not img.contains(0)
    img = image_of(STEP)
    assert [img.contains(v) for v in (0, F(1, 2), 1)] == [True, False, True]


def test_image_matches_sampling():
    for fn in (LQC, LPC, STEP, IDENT):
        for k in range(-40, 41):
            x = F(k, 13)
            if fn.in_domain(x):
                assert fn.image.contains(fn(x))


def test_jump_examples():
    no_jump = piecewise("(-inf,+inf)", [("(-inf,0]", 1, 0), ("(0,+inf)", 1, 1)])
    assert len(jumps_of(no_jump)) == 0
    jumps = jumps_of(STEP)
    assert [(j.lo, j.hi) for j in jumps] == [(ExtReal(0), ExtReal(1))]


def test_jump_needs_attained_endpoints():
    # range (0,1) ∪ (2,3): the gap [1,2] has no attained endpoint, so it is not a jump
    fn = piecewise("(0,2)", [("(0,1)", 1, 0), ("[1,2)", 1, 1)])
    assert len(jumps_of(fn)) == 0
    fn = piecewise("[0,2)", [("[0,1)", 0), ("[1,2)", 1, 1)])  # {0} ∪ [2,3)
    assert [str(j) for j in jumps_of(fn)] == ["(0,2)"]


def test_min_seq_examples():
    step = piecewise("(-inf,+inf)", [("(-inf,0)", 0), ("[0,+inf)", 1)])
    assert min_seq_converging_to(step, 0)
    assert not min_seq_converging_to(IDENT, 1)
    assert min_seq_converging_to(LQC, 1)  # f(1) = -2 is the minimum
    assert not min_seq_converging_to(LQC, 2)


def test_staircase_image():
    fn = piecewise("(0,+inf)", [], Staircase(1, 20))
    assert fn(F(1, 2)) == ExtReal(1)
    assert fn(F(5, 2)) == ExtReal(F(1, 3))
    assert fn.image.infimum() == (ExtReal(0), False)


def test_pieces_must_partition():
    with pytest.raises(ValueError):
        piecewise("[0,2]", [("[0,1]", 0), ("[1,2]", 1)])
    with pytest.raises(ValueError):
        piecewise("[0,2]", [("[0,1)", 0)])


coef = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@settings(max_examples=60, deadline=None)
@given(coef, coef, coef, coef, st.fractions(min_value=F(1, 4), max_value=F(7, 4), max_denominator=4))
def test_refinement_does_not_change_verdicts(m1, b1, m2, b2, cut):
    coarse = piecewise("[-2,2]", [("[-2,0]", m1, b1), ("(0,2]", m2, b2)])
    fine = piecewise("[-2,2]", [("[-2,0]", m1, b1), (f"(0,{cut}]", m2, b2), (f"({cut},2]", m2, b2)])
    for x in (F(-2), F(-1), F(0), F(1, 8), F(1), F(2)):
        a, b = analyze_point(coarse, x), analyze_point(fine, x)
        assert (a.value, a.left_liminf, a.right_liminf, a.liminf) == (b.value, b.left_liminf, b.right_liminf, b.liminf)
    assert [str(j) for j in jumps_of(coarse)] == [str(j) for j in jumps_of(fine)]


@settings(max_examples=60, deadline=None)
@given(coef, coef, coef, coef)
def test_sampled_infima_never_undercut_liminf(m1, b1, m2, b2):
    fn = piecewise("[-2,2]", [("[-2,0]", m1, b1), ("(0,2]", m2, b2)])
    for x in (F(-1), F(0), F(1)):
        pa = analyze_point(fn, x)
        slack = (abs(m1) + abs(m2)) / 1000  # radius of the sampled neighbourhood times the slope
        for side, lim in (("left", pa.left_liminf), ("right", pa.right_liminf)):
            got = sampled_side_inf(fn, x, side, 1000)
            # values rising towards the limit dip below it by at most the slack
            assert got.fraction >= pa.liminf.fraction - slack
            if lim.is_finite:
                assert abs(got.fraction - lim.fraction) <= F(1, 100) * (abs(m1) + abs(m2) + 1)
