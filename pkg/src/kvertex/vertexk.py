"""Vertex characters, symmetrized fixed-point weights, and assembly of the
box-counting vertex series.

The character of a fixed-point configuration determines a Laurent-polynomial
virtual tangent character V. Every V is certified on the spot: poles must
cancel exactly, coefficients must be integers summing to zero, there must be
no trivial weight, and V must be antisymmetric of weight kappa under the
dual involution. The symmetrized contribution of a fixed point is then
prod (w^(1/2) - w^(-1/2))^(-n_w) over the weights w of V.

Series coefficients are sums of such contributions. They are accumulated in
a factored form (numerator polynomial over a multiset of weight binomials)
with trial-division reduction after every addition, which keeps the
intermediate fractions near their reduced size; this is what makes the
volume-8 assembly cheap.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from functools import lru_cache

from .boxconfig import (
    enumerate_configs,
    enumerate_quot_pairs,
    leg_diagram_poly,
    min_volume,
)
from .exactalg import (
    KAPPA,
    ONE,
    PACK_ZERO,
    LaurentPoly,
    QSeries,
    RatFunc,
    _PARITY,
    _kneg,
    _poly_key,
    divide_exact,
)

_AXVARS = ((1, 2), (0, 2), (0, 1))


def leg_tangent(leg, axes):
    """Tangent character of the surface Hilbert scheme at the monomial
    ideal of the partition, in the two transverse variables.

    T = Q + bar(Q)/(t' t'') - Q bar(Q) (1 - t')(1 - t'') / (t' t'');
    always a Laurent polynomial of rank 2 |leg|.
    """
    q = leg_diagram_poly(leg, axes)
    if q.is_zero():
        return LaurentPoly.zero()
    tp = LaurentPoly.var(axes[0])
    tpp = LaurentPoly.var(axes[1])
    prod_exps = [0, 0, 0, 0, 0]
    prod_exps[axes[0]] = -2
    prod_exps[axes[1]] = -2
    inv_tt = LaurentPoly.term(1, tuple(prod_exps))
    qbar = q.bar()
    t = q + (qbar - q * qbar * (ONE - tp) * (ONE - tpp)) * inv_tt
    rank = t.coefficient_sum()
    if rank != 2 * sum(leg):
        raise ArithmeticError("convention violation")
    return t


@dataclass(frozen=True)
class VertexChar:
    """Certified virtual tangent character at an isolated fixed point."""

    poly: LaurentPoly

    def weights(self):
        """Sorted (doubled exponent tuple, multiplicity) pairs."""
        return self.poly.terms()


def _vertex_invariant_errors(v):
    if not all(isinstance(c, int) for _, c in v.d.items()):
        return "non-integer multiplicity"
    if v.coeff((0, 0, 0, 0, 0)):
        return "non-isolated contribution"
    if v.coefficient_sum() != 0:
        return "nonzero virtual rank"
    if v.bar() != LaurentPoly.const(-1) * KAPPA * v:
        return "symmetry violation"
    return None


def _certify(vrf):
    if not vrf.is_poly():
        raise ArithmeticError("pole not cleared")
    v = vrf.num
    err = _vertex_invariant_errors(v)
    if err:
        raise ArithmeticError(err)
    return VertexChar(v)


_P3 = (ONE - LaurentPoly.var(0)) * (ONE - LaurentPoly.var(1)) * (ONE - LaurentPoly.var(2))
_KINV = LaurentPoly.term(1, (-2, -2, -2, 0, 0))
_ONE_MINUS_T = tuple(ONE - LaurentPoly.var(i) for i in range(3))


def _tangent_functional(q_to, q_from_bar):
    """Q_b - bar(Q_a)/kappa + Q_b bar(Q_a) (1-t1)(1-t2)(1-t3)/kappa, the
    bilinear block of the virtual tangent character."""
    return q_to - (q_from_bar - q_to * q_from_bar * _P3) * _KINV


_ONE_MINUS_TINV = tuple(p.bar() for p in _ONE_MINUS_T)


def _cleared_character(config):
    """Character as (a, axes) with character = a / prod_{i in axes}(1-t_i),
    the fraction reduced; computed with plain polynomial arithmetic."""
    core = LaurentPoly.from_terms(
        (1, (2 * x, 2 * y, 2 * z, 0, 0)) for (x, y, z) in config.core
    )
    axes = [axis for axis in range(3) if config.legs[axis]]
    a = core
    for axis in axes:
        a = a * _ONE_MINUS_T[axis]
    for axis in axes:
        tail = leg_diagram_poly(config.legs[axis], _AXVARS[axis]) * LaurentPoly.var(
            axis, 2 * config.bound
        )
        for other in axes:
            if other != axis:
                tail = tail * _ONE_MINUS_T[other]
        a = a + tail
    for axis in list(axes):
        q = divide_exact(a, _ONE_MINUS_T[axis])
        if q is not None:
            a = q
            axes.remove(axis)
    return a, tuple(axes)


def _tangent_block_poly(to, frm):
    """Numerator over D = (1-t1)(1-t2)(1-t3) of the bilinear tangent block
    for reduced characters to = (a, axes) and frm likewise.

    Since bar(D) = -D/kappa, the three block terms collapse over the single
    denominator D as A_to + bar(A_from) - A_to bar(A_from), where A = a
    times the inactive denominator factors."""
    a_to, axes_to = to
    a_frm, axes_frm = frm
    cross = a_to * a_frm.bar()
    full_to = a_to
    full_frm_bar = a_frm.bar()
    for axis in range(3):
        if axis not in axes_to:
            full_to = full_to * _ONE_MINUS_T[axis]
            cross = cross * _ONE_MINUS_T[axis]
        if axis not in axes_frm:
            full_frm_bar = full_frm_bar * _ONE_MINUS_TINV[axis]
            cross = cross * _ONE_MINUS_TINV[axis]
    return full_to + full_frm_bar - cross


def _certified_vertex(num):
    """Divide the block numerator by D and certify the invariants."""
    for axis in range(3):
        q = divide_exact(num, _ONE_MINUS_T[axis])
        if q is None:
            raise ArithmeticError("pole not cleared")
        num = q
    err = _vertex_invariant_errors(num)
    if err:
        raise ArithmeticError(err)
    return VertexChar(num)


@lru_cache(maxsize=None)
def _leg_block(leg, axis):
    """Leg tangent times the complementary denominator factors."""
    t = leg_tangent(leg, _AXVARS[axis])
    for other in range(3):
        if other != axis:
            t = t * _ONE_MINUS_T[other]
    return t


def vertex_character(config):
    """Virtual tangent character of a box configuration, with the leg
    tangent contributions removed; certified Laurent."""
    cleared = _cleared_character(config)
    num = _tangent_block_poly(cleared, cleared)
    for axis in range(3):
        leg = config.legs[axis]
        if leg:
            num = num - _leg_block(leg, axis)
    return _certified_vertex(num)


# -- symmetrized weights -------------------------------------------------


class FactoredWeight:
    """sign * prod over weight monomials of (w^(1/2) - w^(-1/2))^exp,
    with each w canonicalized so its first nonzero exponent is positive.
    Weight monomials are packed keys for w^(1/2)."""

    __slots__ = ("sign", "fac")

    def __init__(self, sign, fac):
        self.sign = sign
        self.fac = fac


def _half_binomial(m):
    """w^(1/2) - w^(-1/2) where m is the packed key of w^(1/2)."""
    return LaurentPoly({m: 1, _kneg(m): -1})


def factored_weight(vchar):
    fac = {}
    sign = 1
    for k, mult in vchar.poly.d.items():
        if k & _PARITY:
            raise ArithmeticError("weight with a half exponent")
        m = (k - PACK_ZERO) // 2 + PACK_ZERO
        mneg = _kneg(m)
        if m < mneg:
            m = mneg
            if mult % 2:
                sign = -sign
        fac[m] = fac.get(m, 0) - mult
        if fac[m] == 0:
            del fac[m]
    return FactoredWeight(sign, fac)


def fixed_point_weight(vchar):
    """The symmetrized localization contribution
    prod (w^(1/2) - w^(-1/2))^(-n_w) as a normalized rational function.

    Accepts a certified VertexChar or any Laurent polynomial with integer
    multiplicities and no trivial weight."""
    if isinstance(vchar, LaurentPoly):
        if not vchar.has_integer_coeffs():
            raise ArithmeticError("non-integer multiplicity")
        if vchar.coeff((0, 0, 0, 0, 0)):
            raise ArithmeticError("non-isolated contribution")
        vchar = VertexChar(vchar)
    fw = factored_weight(vchar)
    num = LaurentPoly.const(fw.sign)
    den = ONE
    for m, e in sorted(fw.fac.items()):
        if e > 0:
            num = num * (_half_binomial(m) ** e)
        else:
            den = den * (_half_binomial(m) ** (-e))
    return RatFunc(num, den)


def _mul_binomials(num, m, e):
    """num * (t^m - t^(-m))^e for a packed key m."""
    mneg = _kneg(m)
    for _ in range(e):
        num = num.mul_binomial(m, 1, mneg, -1)
    return num


def _fw_to_pair(fw):
    """FactoredWeight as (numerator poly, denominator factor dict)."""
    num = LaurentPoly.const(fw.sign)
    den = {}
    for m, e in sorted(fw.fac.items()):
        if e > 0:
            num = _mul_binomials(num, m, e)
        else:
            den[m] = -e
    return num, den


def _pair_reduce(num, den, candidates=None):
    if num.is_zero():
        den.clear()
        return num, den
    todo = list(den) if candidates is None else [m for m in candidates if m in den]
    for m in todo:
        f = _half_binomial(m)
        while den.get(m, 0) > 0:
            q = divide_exact(num, f)
            if q is None:
                break
            num = q
            den[m] -= 1
        if den.get(m) == 0:
            del den[m]
    if num.is_zero():
        den.clear()
    return num, den


def _pair_add(a, b, full=False):
    """Add two factored fractions over the factorwise lcm denominator.

    Cancellation of a prime factor against the new numerator is only
    possible when the factor divides neither catch-up product, i.e. when
    its multiplicities on the two sides agree; only those factors are
    trial-divided here. A final full pass happens once per sum, at the top
    of the merge tree.
    """
    num_a, den_a = a
    num_b, den_b = b
    lcm = dict(den_a)
    candidates = []
    for m, e in den_b.items():
        have = lcm.get(m, 0)
        if have < e:
            lcm[m] = e
        if have == e:
            candidates.append(m)
    xa = num_a
    xb = num_b
    for m, e in lcm.items():
        extra = e - den_a.get(m, 0)
        if extra:
            xa = _mul_binomials(xa, m, extra)
        extra = e - den_b.get(m, 0)
        if extra:
            xb = _mul_binomials(xb, m, extra)
    return _pair_reduce(xa + xb, lcm, None if full else candidates)


def _sum_factored(fws):
    """Divide-and-conquer sum of factored weights into a reduced pair.

    Merging in enumeration order keeps neighbouring configurations (which
    share most of their tangent weights) together, so the intermediate
    denominators stay close to the factors actually needed.
    """
    if not fws:
        return LaurentPoly.zero(), {}
    pairs = [_fw_to_pair(fw) for fw in fws]
    while len(pairs) > 1:
        top = len(pairs) == 2
        merged = []
        for i in range(0, len(pairs) - 1, 2):
            merged.append(_pair_add(pairs[i], pairs[i + 1], full=top))
        if len(pairs) % 2:
            merged.append(pairs[-1])
        pairs = merged
    return _pair_reduce(*pairs[0])


def _pair_to_ratfunc(pair):
    """Reduced factored pair as a normalized RatFunc, factor by factor."""
    num, den = pair
    fac = {}
    for m, e in sorted(den.items()):
        f = _half_binomial(m)
        _, shiftexp, prim = f.primitive_split()
        num = num.shift(tuple(-e * x for x in shiftexp))
        key = _poly_key(prim)
        fac[key] = fac.get(key, 0) + e
    return RatFunc._prereduced(num, fac)


# -- summation engine selection ---------------------------------------------


def _use_fast_engine():
    import os

    if os.environ.get("KVERTEX_PURE"):
        return False
    try:
        from . import fastsum  # noqa: F401
    except Exception:
        return False
    return True


def sum_weights(fws):
    """Sum factored weights into a reduced (numerator, denominator factor
    dict) pair, using the vectorized engine when available."""
    if _use_fast_engine():
        from . import fastsum

        try:
            return fastsum.sum_factored(fws)
        except fastsum.FastSumUnavailable:
            pass
    return _sum_factored(fws)


# -- series assembly -------------------------------------------------------


@dataclass
class VertexSeries:
    """A vertex series: truncated Q-series tagged with kind and legs."""

    kind: str
    legs: tuple
    series: QSeries

    def coefficient(self, n):
        return self.series.coefficient(n)

    def to_json(self):
        coeffs = []
        for i, c in enumerate(self.series.coeffs):
            coeffs.append(
                {"power": self.series.min_power + i, **c.to_json()}
            )
        return {
            "kind": self.kind,
            "legs": [list(leg) for leg in self.legs],
            "minPower": self.series.min_power,
            "order": self.series.trunc,
            "coefficients": coeffs,
        }


def _config_weight(config):
    return factored_weight(vertex_character(config))


def _config_weight_indexed(args):
    index, config = args
    try:
        return factored_weight(vertex_character(config))
    except ArithmeticError as e:
        raise ArithmeticError(
            "%s at config #%d (volume %d)"
            % (e, index, len(config.core) - config.bound * config.leg_sizes())
        ) from e


def _quot_weight(args):
    pair, framing_ratio_exps = args
    return factored_weight(_quot_vertex_char(pair, framing_ratio_exps))


def _map_jobs(fn, items, jobs):
    items = list(items)
    if jobs is None:
        jobs = 1
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with multiprocessing.Pool(jobs) as pool:
        return pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs)))


def dt_vertex_series(l1=(), l2=(), l3=(), order=0, jobs=1):
    """Box-counting vertex series: coefficient of Q^n sums the symmetrized
    weights of all fixed configurations of renormalized volume n."""
    legs = (tuple(l1), tuple(l2), tuple(l3))
    nmin = min_volume(*legs)
    if order < nmin:
        raise ValueError("order below the minimal volume %d" % nmin)
    coeffs = []
    for n in range(nmin, order + 1):
        fws = _map_jobs(
            _config_weight_indexed, enumerate(enumerate_configs(*legs, n=n)), jobs
        )
        coeffs.append(_pair_to_ratfunc(sum_weights(fws)))
    return VertexSeries("DT", legs, QSeries(nmin, coeffs, order))


def pt_vertex_series(l1=(), l2=(), l3=(), order=0, jobs=1, guard=2, dt=None, dt0=None):
    """Stable-pairs vertex series, defined as the quotient of the full
    box-counting series by its 0-leg specialization.

    Computed with a guard of extra orders and re-truncated, so accidental
    dependence on the truncation shows up as a test failure rather than a
    wrong coefficient. Precomputed dt and dt0 series (to at least the
    working order) may be passed in to share work across calls.
    """
    legs = (tuple(l1), tuple(l2), tuple(l3))
    nmin = min_volume(*legs)
    work = order + max(0, guard) + max(0, -nmin)
    if dt is None:
        dt = dt_vertex_series(*legs, order=work, jobs=jobs)
    if dt0 is None:
        dt0 = dt_vertex_series(order=work, jobs=jobs)
    quot = dt.series.truncate(work) / dt0.series.truncate(work)
    return VertexSeries("PT", legs, quot.truncate(order))


_W_RATIO_CACHE = {}


def _framing_ratio_exps(framing, b, a):
    """Doubled exponent tuple of w_b / w_a."""
    if framing is None:
        exps = [0, 0, 0, 0, 0]
        exps[3 + b] += 2
        exps[3 + a] -= 2
        return tuple(exps)
    wb, wa = framing[b], framing[a]
    ((eb, cb),) = wb.terms()
    ((ea, ca),) = wa.terms()
    if cb != 1 or ca != 1:
        raise ValueError("framing must be a monomial with coefficient 1")
    return tuple(x - y for x, y in zip(eb, ea))


def _quot_vertex_char(pair, ratio_exps):
    """Virtual tangent character of a point of the rank-2 punctual quotient
    scheme: four bilinear blocks twisted by framing ratios."""
    cleared = [_cleared_character(c) for c in pair]
    num = LaurentPoly.zero()
    for a in range(2):
        for b in range(2):
            block = _tangent_block_poly(cleared[b], cleared[a])
            if a != b:
                block = block.shift(ratio_exps[(a, b)])
            num = num + block
    return _certified_vertex(num)


def quot2_vertex_series(order, framing=None, jobs=1):
    """Rank-2 degree-0 vertex series over pairs of plane partitions.

    With framing None the two framing weights stay symbolic; rigidity then
    demands that every coefficient come out free of them, which is checked
    and enforced exactly. Explicit framings must be distinct monomials.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    ratios = {
        (0, 1): _framing_ratio_exps(framing, 1, 0),
        (1, 0): _framing_ratio_exps(framing, 0, 1),
    }
    if ratios[(0, 1)] == (0, 0, 0, 0, 0):
        raise ValueError("framing monomials must be distinct")
    coeffs = []
    for m in range(order + 1):
        items = [(pair, ratios) for pair in enumerate_quot_pairs(m)]
        fws = _map_jobs(_quot_weight, items, jobs)
        rf = _pair_to_ratfunc(sum_weights(fws))
        if framing is None and rf.uses_vars() & {3, 4}:
            raise ArithmeticError("rigidity violation")
        coeffs.append(rf)
    return VertexSeries("QUOT2", ((), (), ()), QSeries(0, coeffs, order))


def cy_constancy_check(vseries):
    """Specialize t3 -> (t1 t2)^(-1) in every coefficient of a 0-leg series
    and certify that each result is a plain rational constant."""
    if any(vseries.legs):
        raise ValueError("legs present")
    out = []
    for i, c in enumerate(vseries.series.coeffs):
        n = vseries.series.min_power + i
        try:
            spec = c.subst_t3_cy()
        except ZeroDivisionError as e:
            raise ArithmeticError(
                "singular specialization at power %d" % n
            ) from e
        val = spec.as_constant()
        if val is None:
            raise ArithmeticError("non-constant coefficient at power %d" % n)
        out.append(val)
    return out
