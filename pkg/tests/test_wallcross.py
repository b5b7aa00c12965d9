"""Formal wall-crossing engine: transfer coefficients, collapses, and the
geometric bridges."""

import pytest

from kvertex.exactalg import LaurentPoly, RatFunc
from kvertex.qcombi import kappa_one_value, quantum_factorial
from kvertex.vertexk import dt_vertex_series, quot2_vertex_series
from kvertex.wallcross import (
    HILB,
    PAIR,
    FormalExpr,
    W_pm,
    dt_side_check,
    hilb_symbol_series,
    joyce_check,
    mochizuki_check,
    pair_symbol_series,
    pt_from_dt_series,
    rank2_bridge,
    shifted_product_series,
    wall_transfer,
    wall_transfer_series,
)


def test_formal_expr_ring():
    x = FormalExpr.symbol(HILB, 1)
    y = FormalExpr.symbol(PAIR, 0)
    two = FormalExpr.scalar(2)
    assert x + x == x * two
    assert (x + y) * (x - y) == x * x - y * y
    assert (x - x).is_zero()
    assert x * FormalExpr.scalar(0) == FormalExpr.scalar(0)
    assert str(x * y)


def test_formal_expr_substitute_and_zero():
    x = FormalExpr.symbol(HILB, 1)
    e = x * x + FormalExpr.scalar(3)
    val = e.substitute({(HILB, 1): RatFunc.from_poly(LaurentPoly.const(2))})
    assert val.as_constant() == 7
    assert e.set_to_zero(HILB) == FormalExpr.scalar(3)


def test_wall_transfer_collapses():
    for m in range(1, 5):
        for N in range(m + 1, m + 4):
            assert wall_transfer(m, N) == FormalExpr.symbol(HILB, m), (m, N)


def test_wall_transfer_single_composition_is_strict_subsum():
    # retaining only the one-part composition of m = 2 gives a genuine
    # sub-sum, not the collapsed symbol; regression fixture for the
    # composition bookkeeping
    from kvertex.qcombi import quantum_factorial, restricted_word_sum

    N = 6
    sub = FormalExpr.symbol(HILB, 2) * (
        RatFunc.from_poly(restricted_word_sum("LT", (2, N - 2)))
        * RatFunc.from_poly(quantum_factorial(N - 2))
        / RatFunc.from_poly(quantum_factorial(N))
    )
    assert sub != FormalExpr.symbol(HILB, 2)
    two_part = wall_transfer(2, N) - sub
    assert not two_part.is_zero()
    assert sub + two_part == FormalExpr.symbol(HILB, 2)


def test_wall_transfer_range_errors():
    with pytest.raises(ValueError):
        wall_transfer(0, 5)
    with pytest.raises(ValueError):
        wall_transfer(5, 5)
    with pytest.raises(ValueError):
        W_pm("*", 1, 5)


def test_pt_transfer_m1_value():
    # k = 1 closed form: ((-kappa^(1/2)) + (-kappa^(1/2))^(-1)) hilb[1]
    bracket = LaurentPoly.term(-1, (1, 1, 1, 0, 0)) + LaurentPoly.term(-1, (-1, -1, -1, 0, 0))
    for N in (4, 7):
        expect = FormalExpr.symbol(HILB, 1) * RatFunc.from_poly(bracket)
        assert W_pm("+", 1, N) == expect


def test_pt_transfer_series_is_shifted_product():
    sp = shifted_product_series(3)
    for N in (5, 8):
        ws = wall_transfer_series(3, N, sign="+")
        assert ws.eq_through(sp, 3)


def test_joyce_check_and_negative_control():
    assert joyce_check(3, 8)
    assert not joyce_check(3, 8, corrupt=True)
    assert joyce_check(0, 4)
    with pytest.raises(ValueError):
        joyce_check(8, 8)


def test_iterated_crossing_order_one():
    s = pt_from_dt_series(1, 6)
    p0 = FormalExpr.symbol(PAIR, 0)
    p1 = FormalExpr.symbol(PAIR, 1)
    h1 = FormalExpr.symbol(HILB, 1)
    assert s.coefficient(0) == p0
    assert s.coefficient(1) == p1 - h1 * p0


def test_iterated_crossing_collapse():
    assert mochizuki_check(3, 8)
    assert mochizuki_check(4, 9)


def test_iterated_crossing_no_wall_contributions():
    s = pt_from_dt_series(2, 6)
    for n in range(3):
        dropped = s.coefficient(n).set_to_zero(HILB)
        assert dropped == FormalExpr.symbol(PAIR, n)


def test_classical_limit_of_prefactors():
    # at kappa = 1 the quantum factorial ratio reproduces signed integers
    for n in range(1, 8):
        val = kappa_one_value(quantum_factorial(n)) / kappa_one_value(
            quantum_factorial(n - 1)
        )
        assert val == (n if n % 2 else -n)


def test_rank2_bridge_small():
    hilb = dt_vertex_series(order=1)
    assert rank2_bridge(1, 6, hilb)


def test_dt_side_relation_does_not_close():
    # the DT-side transfer display does not reproduce the computed
    # invariants; pinned here as a negative result so any change shows up
    hilb = dt_vertex_series(order=2)
    quot = quot2_vertex_series(2)
    assert dt_side_check(2, 8, hilb, quot) is False


def test_symbol_series_shapes():
    h = hilb_symbol_series(3)
    assert h.coefficient(0) == FormalExpr.scalar(1)
    p = pair_symbol_series(2)
    assert p.coefficient(2) == FormalExpr.symbol(PAIR, 2)
