from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from semicont.extreal import (
    NEG_INF,
    POS_INF,
    DecreasingSubsequence,
    EventuallyConstant,
    ExtReal,
    Hyperbola,
    PreconditionViolation,
    ValueSequence,
    compare,
    extract_decreasing,
    inf_of,
    inf_or_top,
    is_decreasing,
    is_strictly_decreasing,
    parse_extreal,
)

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
ext = st.one_of(st.just(NEG_INF), st.just(POS_INF), fractions.map(ExtReal))


def cross_cmp(a: Fraction, b: Fraction) -> int:
    # independent oracle: compare p1*q2 with p2*q1
    lhs, rhs = a.numerator * b.denominator, b.numerator * a.denominator
    return (lhs > rhs) - (lhs < rhs)


def test_compare_examples():
    assert compare(NEG_INF, 0) == -1
    assert compare(POS_INF, POS_INF) == 0
    assert compare(Fraction(1, 3), Fraction(1667, 5000)) == -1
    assert cross_cmp(Fraction(1, 3), Fraction(1667, 5000)) == -1


@given(fractions, fractions)
def test_compare_matches_cross_multiplication(a, b):
    assert compare(a, b) == cross_cmp(a, b)


@given(ext, ext, ext)
def test_order_is_total_antisymmetric_transitive(a, b, c):
    assert compare(a, b) == -compare(b, a)
    assert (compare(a, b) == 0) == (a == b)
    if a <= b and b <= c:
        assert a <= c
    assert NEG_INF <= a <= POS_INF


@given(st.lists(ext, min_size=1, max_size=8))
def test_inf_of_is_idempotent_and_least(vals):
    m = inf_of(vals)
    assert m in vals
    assert all(m <= v for v in vals)
    assert inf_of(vals + [m]) == m


def test_inf_examples():
    assert inf_of([1, 0, 2]) == ExtReal(0)
    assert inf_of([NEG_INF, 5]) == NEG_INF
    assert inf_or_top([]) == POS_INF
    with pytest.raises(ValueError):
        inf_of([])


@given(fractions, fractions)
def test_arithmetic_is_exact(a, b):
    assert (ExtReal(a) + ExtReal(b)).fraction == a + b
    assert (ExtReal(a) - ExtReal(b)).fraction == a - b
    assert -(-ExtReal(a)) == ExtReal(a)


def test_literals():
    assert parse_extreal("1/3") == ExtReal(Fraction(1, 3))
    assert parse_extreal("0.25") == ExtReal(Fraction(1, 4))
    assert parse_extreal("-inf") is NEG_INF
    assert parse_extreal("+inf") is POS_INF
    assert str(ExtReal(Fraction(-2, 4))) == "-1/2"
    with pytest.raises(ValueError):
        parse_extreal("banana")
    with pytest.raises(TypeError):
        ExtReal(0.5)


def test_monotone_predicates():
    assert is_decreasing([3, 3, 1])
    assert not is_strictly_decreasing([3, 3, 1])
    assert is_strictly_decreasing([POS_INF, 2, NEG_INF])


def test_extract_constant():
    res = extract_decreasing(ValueSequence.constant(7))
    assert isinstance(res, EventuallyConstant)
    assert res.value == ExtReal(7)


def test_extract_harmonic_is_identity():
    seq = ValueSequence.interleaved([], [Hyperbola(Fraction(0), Fraction(1))])
    assert seq.take(3) == [ExtReal(1), ExtReal(Fraction(1, 2)), ExtReal(Fraction(1, 3))]
    res = extract_decreasing(seq)
    assert isinstance(res, DecreasingSubsequence)
    assert res.indices(6) == list(range(6))


def greedy(terms, floor):
    picked, last = [], None
    for i, v in enumerate(terms):
        if v > floor and (last is None or v < last):
            picked.append(i)
            last = v
    return picked


def test_extract_interleaved_matches_greedy_oracle():
    # a non-monotone prefix in front of two interleaved families tending to 0
    fam_a = Hyperbola(Fraction(0), Fraction(1), Fraction(2), Fraction(1))  # 1, 1/3, 1/5
    fam_b = Hyperbola(Fraction(0), Fraction(2), Fraction(4), Fraction(4))  # 1/2, 1/4, 1/6
    seq = ValueSequence.interleaved([1, Fraction(1, 2), Fraction(2, 3)], [fam_a, fam_b])
    assert seq.infimum() == ExtReal(0)
    res = extract_decreasing(seq)
    assert isinstance(res, DecreasingSubsequence)
    terms = seq.take(200)
    idx = res.indices(20)
    assert idx == greedy(terms, ExtReal(0))[:20]
    vals = res.values(20)
    assert is_strictly_decreasing(vals)
    assert all(a < b for a, b in zip(idx, idx[1:]))


def test_extract_rejects_non_convergent():
    with pytest.raises(PreconditionViolation):
        extract_decreasing(ValueSequence.periodic([], [0, 1]))
    # converges, but to 1 while the infimum is 0
    with pytest.raises(PreconditionViolation):
        extract_decreasing(ValueSequence.periodic([0], [1]))


@given(st.lists(fractions, max_size=4), fractions, st.fractions(min_value=Fraction(1, 10), max_value=5, max_denominator=10))
def test_extract_certificate_replays(prefix, a, b):
    seq = ValueSequence.interleaved(prefix, [Hyperbola(a, b)])
    if not seq.converges_to_infimum():
        with pytest.raises(PreconditionViolation):
            extract_decreasing(seq)
        return
    res = extract_decreasing(seq)
    assert isinstance(res, DecreasingSubsequence)
    idx = res.indices(8)
    assert all(i < j for i, j in zip(idx, idx[1:]))
    assert is_strictly_decreasing(res.values(8))
