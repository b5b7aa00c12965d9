"""Vertex characters, weights, and series, checked against independent
oracles where the contracts give one."""

import json
import os

import pytest

from kvertex.boxconfig import enumerate_configs, min_volume, plane_partitions
from kvertex.exactalg import KAPPA, ONE, LaurentPoly, RatFunc
from kvertex.vertexk import (
    cy_constancy_check,
    dt_vertex_series,
    fixed_point_weight,
    leg_tangent,
    pt_vertex_series,
    quot2_vertex_series,
    vertex_character,
)

SINGLE_BOX_V = LaurentPoly.from_terms(
    [
        (1, (-2, 0, 0, 0, 0)),
        (1, (0, -2, 0, 0, 0)),
        (1, (0, 0, -2, 0, 0)),
        (-1, (-2, -2, 0, 0, 0)),
        (-1, (-2, 0, -2, 0, 0)),
        (-1, (0, -2, -2, 0, 0)),
    ]
)


def signed_macmahon(order):
    """Oracle: integer expansion of prod_{m>=1} (1 - (-Q)^m)^(-m)."""
    coeffs = [1] + [0] * order
    for m in range(1, order + 1):
        # multiply by (1 - (-Q)^m)^(-m) = sum_k binom(m+k-1, k) (-1)^(mk) Q^(mk)
        factor = [0] * (order + 1)
        k = 0
        while m * k <= order:
            binom = 1
            for i in range(1, k + 1):
                binom = binom * (m + i - 1) // i
            factor[m * k] = binom * (-1) ** (m * k)
            k += 1
        out = [0] * (order + 1)
        for i, a in enumerate(coeffs):
            if not a:
                continue
            for j in range(0, order + 1 - i):
                if factor[j]:
                    out[i + j] += a * factor[j]
        coeffs = out
    return coeffs


def test_leg_tangent():
    assert leg_tangent((), (1, 2)).is_zero()
    assert leg_tangent((1,), (1, 2)) == LaurentPoly.from_terms(
        [(1, (0, -2, 0, 0, 0)), (1, (0, 0, -2, 0, 0))]
    )
    assert leg_tangent((2, 1), (1, 2)).coefficient_sum() == 6


def test_single_box_character():
    box = next(plane_partitions(1))
    assert vertex_character(box).poly == SINGLE_BOX_V


def test_cylinder_is_rigid():
    cyl = next(enumerate_configs((1,), (), (), 0))
    assert vertex_character(cyl).poly.is_zero()


def test_taller_cylinders_reported():
    # not asserted as a theorem anywhere, only observed: pure cylinders over
    # larger partitions also come out rigid
    values = {}
    for leg in ((2,), (1, 1)):
        cyl = next(enumerate_configs(leg, (), (), min_volume(leg)))
        values[leg] = vertex_character(cyl).poly
    print("pure cylinder characters:", {k: str(v) for k, v in values.items()})
    assert all(isinstance(v, LaurentPoly) for v in values.values())


def test_vertex_invariants_small_budget():
    minus_kappa = LaurentPoly.const(-1) * KAPPA
    for legs in (((), (), ()), ((1,), (), ()), ((2,), (1,), ())):
        nmin = min_volume(*legs)
        for n in range(nmin, nmin + 3):
            for c in enumerate_configs(*legs, n=n):
                v = vertex_character(c).poly
                assert v.bar() == minus_kappa * v
                assert v.coefficient_sum() == 0
                assert v.coeff((0, 0, 0, 0, 0)) == 0
                assert v.has_integer_coeffs()


def test_fixed_point_weight_examples():
    w = LaurentPoly.term(1, (2, 0, 0, 0, 0))
    v = LaurentPoly.term(1, (0, 2, 0, 0, 0))
    half = lambda m: LaurentPoly.term(1, m) - LaurentPoly.term(1, tuple(-x for x in m))
    assert fixed_point_weight(w) == RatFunc(ONE, half((1, 0, 0, 0, 0)))
    assert fixed_point_weight(w - v) == RatFunc(
        half((0, 1, 0, 0, 0)), half((1, 0, 0, 0, 0))
    )
    assert fixed_point_weight(LaurentPoly.zero()) == RatFunc.one()
    with pytest.raises(ArithmeticError, match="non-isolated"):
        fixed_point_weight(LaurentPoly.const(1))


def test_weight_inverse_property():
    box = next(plane_partitions(1))
    v = vertex_character(box).poly
    assert fixed_point_weight(v) * fixed_point_weight(-v) == RatFunc.one()


def test_single_box_cy_weight():
    box = next(plane_partitions(1))
    w = fixed_point_weight(vertex_character(box).poly)
    assert w.subst_t3_cy().as_constant() == -1


def test_dt_series_order_one():
    s = dt_vertex_series(order=1)
    assert s.series.min_power == 0
    assert s.series.coefficient(0) == RatFunc.one()
    box = next(plane_partitions(1))
    assert s.series.coefficient(1) == fixed_point_weight(vertex_character(box).poly)


def test_dt_series_leg_leading_term():
    s = dt_vertex_series((1,), order=0)
    assert s.series.min_power == 0
    assert s.series.coefficient(0) == RatFunc.one()


def test_cy_constants_match_product_oracle():
    s = dt_vertex_series(order=4)
    assert cy_constancy_check(s) == signed_macmahon(4)


def test_cy_rejects_legs():
    s = dt_vertex_series((1,), order=1)
    with pytest.raises(ValueError, match="legs present"):
        cy_constancy_check(s)


def test_pt_empty_legs_trivial():
    pt = pt_vertex_series(order=3)
    assert pt.series.coefficient(0) == RatFunc.one()
    for n in range(1, 4):
        assert pt.series.coefficient(n).is_zero()


def test_pt_defining_identity():
    dt0 = dt_vertex_series(order=5)
    dt1 = dt_vertex_series((1,), order=5)
    pt = pt_vertex_series((1,), order=3, dt=dt1, dt0=dt0)
    assert (pt.series * dt0.series).eq_through(dt1.series, 3)
    # re-truncation stability
    pt_lo = pt_vertex_series((1,), order=2, dt=dt1, dt0=dt0)
    assert pt_lo.series.eq_through(pt.series, 2)


def test_quot2_small_orders():
    q = quot2_vertex_series(1)
    assert q.series.coefficient(0) == RatFunc.one()
    dt0 = dt_vertex_series(order=1)
    c1 = dt0.series.coefficient(1)
    bracket = LaurentPoly.term(-1, (1, 1, 1, 0, 0)) + LaurentPoly.term(-1, (-1, -1, -1, 0, 0))
    assert q.series.coefficient(1) == c1 * RatFunc.from_poly(bracket)


def test_quot2_rejects_equal_framings():
    w = LaurentPoly.term(1, (2, 0, 0, 0, 0))
    with pytest.raises(ValueError, match="distinct"):
        quot2_vertex_series(1, framing=(w, w))


def test_jobs_do_not_change_results():
    a = dt_vertex_series(order=3, jobs=1)
    b = dt_vertex_series(order=3, jobs=2)
    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)


def test_pure_engine_matches_fast_engine():
    import kvertex.vertexk as vk

    for n in range(0, 5):
        fws = [vk._config_weight(c) for c in plane_partitions(n)]
        from kvertex import fastsum

        fast = fastsum.sum_factored(fws)
        pure = vk._sum_factored(fws)
        assert fast[0] == pure[0] and fast[1] == pure[1]


def test_pure_env_flag(monkeypatch):
    monkeypatch.setenv("KVERTEX_PURE", "1")
    s = dt_vertex_series(order=2)
    assert cy_constancy_check(s) == [1, -1, 3]


def test_series_json_schema():
    s = dt_vertex_series(order=1)
    j = s.to_json()
    assert j["kind"] == "DT"
    assert j["minPower"] == 0 and j["order"] == 1
    assert [c["power"] for c in j["coefficients"]] == [0, 1]
    assert "num" in j["coefficients"][1] and "den" in j["coefficients"][1]
