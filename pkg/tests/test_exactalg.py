"""Kernel tests: Laurent polynomials, rational normal forms, series."""

import random
from fractions import Fraction

import pytest

from kvertex.exactalg import (
    KAPPA,
    ONE,
    T1,
    T2,
    T3,
    LaurentPoly,
    QSeries,
    RatFunc,
    divide_exact,
    exps_str,
    ratfunc_normalize,
)


def rand_poly(rng, nterms=5, span=4, coeff=6):
    d = {}
    for _ in range(nterms):
        e = tuple(rng.randint(-span, span) for _ in range(5))
        d[e] = rng.randint(-coeff, coeff) or 1
    return LaurentPoly.from_terms((c, e) for e, c in d.items())


def test_ring_axioms_random():
    rng = random.Random(42)
    for _ in range(60):
        a, b, c = (rand_poly(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * ONE == a
        assert a + LaurentPoly.zero() == a
        assert a - a == LaurentPoly.zero()


def test_bar_involution_and_homomorphism():
    rng = random.Random(7)
    for _ in range(40):
        a, b = rand_poly(rng), rand_poly(rng)
        assert a.bar().bar() == a
        assert (a * b).bar() == a.bar() * b.bar()
        assert (a + b).bar() == a.bar() + b.bar()


def test_bar_examples():
    assert T1.bar() == LaurentPoly.term(1, (-2, 0, 0, 0, 0))
    half = LaurentPoly.term(1, (1, 1, 1, 0, 0))
    assert half.bar() == LaurentPoly.term(1, (-1, -1, -1, 0, 0))
    p = (ONE - T1) * (ONE - T2) * (ONE - T3)
    assert p.bar() == LaurentPoly.term(-1, (-2, -2, -2, 0, 0)) * p


def test_parity_with_negative_exponents():
    p = LaurentPoly.term(1, (-2, 4, -6, 0, 2))
    assert p.is_integral()
    q = LaurentPoly.term(1, (-1, 4, -6, 0, 2))
    assert not q.is_integral()


def test_divide_exact_roundtrip():
    rng = random.Random(3)
    for _ in range(120):
        q = rand_poly(rng, nterms=rng.randint(1, 4), span=3)
        if q.is_zero():
            continue
        r = rand_poly(rng, nterms=rng.randint(1, 5), span=3)
        p = q * r
        got = divide_exact(p, q)
        assert got is not None and got == r
        probe = p + LaurentPoly.term(1, tuple(rng.randint(-8, 8) for _ in range(5)))
        got2 = divide_exact(probe, q)
        if got2 is not None:
            assert got2 * q == probe


def test_ratfunc_normalize_examples():
    assert ratfunc_normalize(T1 - T1 * T1, ONE - T1) == RatFunc.from_poly(T1)
    assert ratfunc_normalize(LaurentPoly.zero(), ONE - T2).is_zero()
    half_t1 = ratfunc_normalize(2 * T1, LaurentPoly.const(4))
    assert half_t1.is_poly()
    assert half_t1.num == T1 * Fraction(1, 2)
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        ratfunc_normalize(ONE, LaurentPoly.zero())


def test_ratfunc_congruence():
    rng = random.Random(12)
    for _ in range(30):
        a, b, c = rand_poly(rng), rand_poly(rng), rand_poly(rng)
        if b.is_zero() or c.is_zero():
            continue
        assert RatFunc(a * c, b * c) == RatFunc(a, b)
        # equality iff the cross difference normalizes to zero
        d = rand_poly(rng)
        lhs = RatFunc(a, b) == RatFunc(d, c)
        rhs = ratfunc_normalize(a * c - d * b, b * c).is_zero()
        assert lhs == rhs


def test_ratfunc_denominator_normal_form():
    r = RatFunc(ONE, (ONE - T1) * (ONE - T2))
    den = r.den
    _, coeff = den.leading()
    assert coeff == 1
    assert den.monomial_content() == (0, 0, 0, 0, 0)


def test_ratfunc_arithmetic():
    a = RatFunc(ONE, ONE - T1)
    b = RatFunc(T1, ONE - T1)
    assert a + b == RatFunc(ONE + T1, ONE - T1)
    assert a - a == RatFunc.zero()
    assert a * (ONE - T1) == RatFunc.one()
    assert (a / a) == RatFunc.one()
    assert a.inverse() * a == RatFunc.one()


def one_series(trunc):
    return QSeries.const(RatFunc.one(), trunc)


def test_series_division_examples():
    one_minus_q = QSeries(0, [RatFunc.one(), -RatFunc.one(), RatFunc.zero(), RatFunc.zero()], 3)
    assert (one_minus_q / one_series(3)) == one_minus_q
    geom = one_series(3) / one_minus_q
    assert [geom.coefficient(n) for n in range(4)] == [RatFunc.one()] * 4
    assert (one_minus_q / one_minus_q) == one_series(3)
    zero_lead = QSeries(0, [RatFunc.zero(), RatFunc.one()], 1)
    with pytest.raises(ZeroDivisionError, match="non-invertible series"):
        one_series(1) / zero_lead


def test_series_division_min_power():
    # (Q^-1 + ...) / (Q^1 + ...) has min power -2
    a = QSeries(-1, [RatFunc.one(), RatFunc.one(), RatFunc.one()], 1)
    b = QSeries(1, [RatFunc.one(), RatFunc.one()], 2)
    q = a / b
    assert q.min_power == -2
    assert (q * b).eq_through(a, q.trunc + b.min_power)


def test_series_mul_respects_truncation():
    # b's first unknown coefficient sits at Q^3 and meets a's constant term,
    # so the product is honest only through Q^2
    a = QSeries(0, [RatFunc.one()] * 3, 2)
    b = QSeries(1, [RatFunc.one()] * 2, 2)
    prod = a * b
    assert prod.min_power == 1
    assert prod.trunc == 2


def test_substitutions():
    # kappa specializes to 1 in the Calabi-Yau limit
    assert RatFunc.from_poly(KAPPA).subst_t3_cy() == RatFunc.one()
    # Q -> -Q kappa^(-1/2) on 1 + Q
    s = QSeries(0, [RatFunc.one(), RatFunc.one()], 1)
    unit = RatFunc.from_poly(LaurentPoly.term(-1, (-1, -1, -1, 0, 0)))
    t = s.subst_q_scale(unit)
    assert t.coefficient(0) == RatFunc.one()
    assert t.coefficient(1) == unit
    # coefficient at power n rescales by (-1)^n kappa^(n/2)
    s4 = QSeries(0, [RatFunc.one()] * 5, 4)
    up = s4.subst_q_scale(RatFunc.from_poly(LaurentPoly.term(-1, (1, 1, 1, 0, 0))))
    for n in range(5):
        sign = -1 if n % 2 else 1
        assert up.coefficient(n) == RatFunc.from_poly(
            LaurentPoly.term(sign, (n, n, n, 0, 0))
        )


def test_cy_subst_cancels_kappa_minus_one():
    # (kappa^2 - 1)/(kappa - 1) specializes to 2 despite the vanishing factor
    r = RatFunc(KAPPA * KAPPA - ONE, KAPPA - ONE)
    assert r.subst_t3_cy().as_constant() == 2
    with pytest.raises(ZeroDivisionError, match="singular specialization"):
        RatFunc(ONE, KAPPA - ONE).subst_t3_cy()


def test_subst_w():
    p = LaurentPoly.term(1, (0, 0, 0, 2, -2))
    q = p.subst_w(0, (2, 0, 0, 0, 0)).subst_w(1, (0, 2, 0, 0, 0))
    assert q == LaurentPoly.term(1, (2, -2, 0, 0, 0))


def test_canonical_text_and_json():
    p = LaurentPoly.term(1, (1, 0, -3, 2, 0))
    assert exps_str(p.terms()[0][0]) == "t1^(1/2) t3^(-3/2) w1"
    j = (T1 + LaurentPoly.const(2)).to_json()
    assert j == [["2", [0, 0, 0, 0, 0]], ["1", [2, 0, 0, 0, 0]]]
