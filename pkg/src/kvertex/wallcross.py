"""Formal wall-crossing engine.

Works over polynomials in two families of commuting symbols: hilb[m] for
the 0-leg rank-one invariants (m >= 1) and pair[m] for the on-wall rank-two
invariants (m >= 0), with coefficients that are exact rational functions of
kappa. The wall-crossing transfer coefficients are built from restricted
word sums and quantum-factorial prefactors, and the engine verifies that
the iterated wall-crossing collapses to the expected series factorizations.

Frame dimension N is an explicit argument everywhere: any N large enough
for the requested order works, and too-small N surfaces as a range error.
The cutoff below which moduli are empty is fixed at -1 (0-leg
normalization), so hilb symbols start at index 1 with hilb[0] = 1.
"""

from __future__ import annotations

from fractions import Fraction

from .exactalg import LaurentPoly, QSeries, RatFunc
from .qcombi import (
    _word_stats,
    c_word,
    enumerate_words,
    quantum_factorial,
    quantum_int,
    restricted_word_sum,
)

HILB = "hilb"
PAIR = "pair"


class FormalExpr:
    """Polynomial in commuting symbols with kappa-rational coefficients.

    Keys are sorted tuples of (family, index) pairs; the empty tuple is the
    scalar part. Zero coefficients are pruned, so equality is dict
    equality."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms or {}

    @staticmethod
    def scalar(c):
        if isinstance(c, (int, Fraction, LaurentPoly)):
            c = _as_kappa_rf(c)
        if c.is_zero():
            return FormalExpr({})
        return FormalExpr({(): c})

    @staticmethod
    def symbol(family, index):
        return FormalExpr({((family, index),): RatFunc.one()})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly, RatFunc)):
            other = FormalExpr.scalar(other)
        if not isinstance(other, FormalExpr):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(other.terms[k] == v for k, v in self.terms.items())

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __neg__(self):
        return FormalExpr({k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly, RatFunc)):
            other = FormalExpr.scalar(other)
        if not isinstance(other, FormalExpr):
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return FormalExpr(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly, RatFunc)):
            other = FormalExpr.scalar(other)
        if not isinstance(other, FormalExpr):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly, RatFunc)):
            c = _as_kappa_rf(other)
            if c.is_zero():
                return FormalExpr({})
            return FormalExpr({k: v * c for k, v in self.terms.items()})
        if not isinstance(other, FormalExpr):
            return NotImplemented
        out = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(sorted(ka + kb))
                v = va * vb
                s = out.get(k)
                s = v if s is None else s + v
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return FormalExpr(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("formal power wants a nonnegative integer")
        out = FormalExpr.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def inverse(self):
        c = self.as_scalar()
        if c is None:
            raise ZeroDivisionError("only scalar formal expressions invert")
        return FormalExpr({(): c.inverse()})

    def as_scalar(self):
        if not self.terms:
            return RatFunc.zero()
        if set(self.terms) == {()}:
            return self.terms[()]
        return None

    def substitute(self, values):
        """Evaluate by sending each symbol to a RatFunc."""
        out = RatFunc.zero()
        for k, v in self.terms.items():
            acc = v
            for sym in k:
                acc = acc * values[sym]
            out = out + acc
        return out

    def set_to_zero(self, family):
        """Drop every term containing a symbol of the given family."""
        return FormalExpr(
            {k: v for k, v in self.terms.items() if all(f != family for f, _ in k)}
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            mono = " ".join("%s[%d]" % sym for sym in k) or "1"
            parts.append("(%s) %s" % (self.terms[k], mono))
        return " + ".join(parts)

    def __repr__(self):
        return "FormalExpr(%s)" % self

    def to_json(self):
        return [
            {"symbols": [list(s) for s in k], "coeff": v.to_json()}
            for k, v in sorted(self.terms.items())
        ]


def _as_kappa_rf(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc.from_poly(x)
    return RatFunc.from_poly(LaurentPoly.const(x))


def _qfact_rf(n):
    return RatFunc.from_poly(quantum_factorial(n))


def _compositions(total, max_parts=None):
    """Ordered tuples of positive integers with the given sum."""
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first, None if max_parts is None else max_parts - 1):
            yield (first,) + rest


def _hilb_monomial(mvec):
    return FormalExpr(
        {tuple(sorted((HILB, m) for m in mvec)): RatFunc.one()}
    )


def wall_transfer(m, N):
    """Transfer coefficient of the combined DT-to-PT wall-crossing: the sum
    over compositions of m of the ascending-constrained word sum times
    [N-m]! prod [m_i - 1]! / [N]! times the matching hilb symbols.

    Collapses to hilb[m] for every admissible N.
    """
    if not 1 <= m <= N - 1:
        raise ValueError("need 1 <= m <= N-1")
    out = FormalExpr({})
    pref = _qfact_rf(N - m) / _qfact_rf(N)
    for mvec in _compositions(m):
        csum = restricted_word_sum("LT", mvec + (N - m,))
        if csum.is_zero():
            continue
        coeff = _as_kappa_rf(csum) * pref
        for mi in mvec:
            coeff = coeff * _qfact_rf(mi - 1)
        out = out + _hilb_monomial(mvec) * coeff
    return out


def wall_transfer_pt(m, N):
    """Transfer coefficient of the wall-to-PT-chamber crossing, built from
    the remainder-first word sum with prefactor [N-m-1]! / [N-1]!.

    The series sum_m Q^m of these equals the product of the two
    kappa^(1/2)-shifted copies of the hilb symbol series.
    """
    if not 1 <= m <= N - 1:
        raise ValueError("need 1 <= m <= N-1")
    out = FormalExpr({})
    pref = _qfact_rf(N - m - 1) / _qfact_rf(N - 1)
    for mvec in _compositions(m):
        bsum = restricted_word_sum("B", mvec + (N - m,))
        if bsum.is_zero():
            continue
        coeff = _as_kappa_rf(bsum) * pref
        for mi in mvec:
            coeff = coeff * _qfact_rf(mi - 1)
        out = out + _hilb_monomial(mvec) * coeff
    return out


def wall_transfer_dt(m, N):
    """Transfer coefficient of the DT-chamber-to-wall crossing, built from
    the all-ascending word sum with prefactor [N-m-1]! / [N]!."""
    if not 1 <= m <= N - 1:
        raise ValueError("need 1 <= m <= N-1")
    out = FormalExpr({})
    pref = _qfact_rf(N - m - 1) / _qfact_rf(N)
    for mvec in _compositions(m):
        csum = restricted_word_sum("ALL", mvec + (N - m,))
        if csum.is_zero():
            continue
        coeff = _as_kappa_rf(csum) * pref
        for mi in mvec:
            coeff = coeff * _qfact_rf(mi - 1)
        out = out + _hilb_monomial(mvec) * coeff
    return out


def W_pm(sign, m, N):
    """Signed transfer coefficient; '+' crosses from the wall into the PT
    chamber, '-' from the DT chamber onto the wall."""
    if sign == "+":
        return wall_transfer_pt(m, N)
    if sign == "-":
        return wall_transfer_dt(m, N)
    raise ValueError("sign must be '+' or '-'")


def hilb_symbol_series(order, trunc=None):
    """1 + sum_{m>=1} Q^m hilb[m], truncated."""
    trunc = order if trunc is None else trunc
    coeffs = [FormalExpr.scalar(1)]
    coeffs += [FormalExpr.symbol(HILB, m) for m in range(1, trunc + 1)]
    return QSeries(0, coeffs, trunc)


def pair_symbol_series(order):
    """sum_{m>=0} Q^m pair[m], truncated."""
    return QSeries(0, [FormalExpr.symbol(PAIR, m) for m in range(order + 1)], order)


def wall_transfer_series(order, N, sign=None, corrupt=False):
    """Q-series of transfer coefficients (constant term 1)."""
    if order > N - 1:
        raise ValueError("order exceeds frame capacity")
    coeffs = [FormalExpr.scalar(1)]
    for m in range(1, order + 1):
        if corrupt:
            coeffs.append(_corrupted_wall_transfer(m, N))
        elif sign is None:
            coeffs.append(wall_transfer(m, N))
        else:
            coeffs.append(W_pm(sign, m, N))
    return QSeries(0, coeffs, order)


def _corrupted_wall_transfer(m, N):
    """Negative-control variant of wall_transfer with the inner index sum
    shifted by one (drops the adjacent-letter pairing term)."""
    out = FormalExpr({})
    pref = _qfact_rf(N - m) / _qfact_rf(N)
    for mvec in _compositions(m):
        ell = len(mvec) + 1
        full = mvec + (N - m,)
        total = LaurentPoly.zero()
        for w in enumerate_words(full):
            o, s = _word_stats(w, ell)
            if not all(o[i] < o[i + 1] for i in range(1, ell - 1)):
                continue
            prod = LaurentPoly.const(1)
            for i in range(1, ell):
                shifted = s[i] - (c_word(w, i, i + 1) if i + 1 <= ell else 0)
                prod = prod * quantum_int(full[i - 1] - shifted)
            total = total + prod
        if total.is_zero():
            continue
        coeff = _as_kappa_rf(total) * pref
        for mi in mvec:
            coeff = coeff * _qfact_rf(mi - 1)
        out = out + _hilb_monomial(mvec) * coeff
    return out


def joyce_check(order, N, corrupt=False):
    """Verify the two-step factorization: the pair-symbol series times the
    transfer series must equal the pair-symbol series times the hilb-symbol
    series, coefficientwise through the given order."""
    if order > N - 1:
        raise ValueError("order exceeds frame capacity")
    pair = pair_symbol_series(order)
    wseries = wall_transfer_series(order, N, corrupt=corrupt)
    lhs = pair * hilb_symbol_series(order)
    rhs = pair * wseries
    return lhs.eq_through(rhs, order)


def pt_from_dt_series(order, N):
    """Express the PT-side series in pair and hilb symbols via the one-go
    iterated wall-crossing: coefficient of Q^n is the alternating sum over
    compositions of the descending-constrained word sums against
    pair[n - |mvec|] and the hilb symbols of the parts."""
    if order > N - 1:
        raise ValueError("order exceeds frame capacity")
    coeffs = []
    for n in range(order + 1):
        acc = FormalExpr({})
        for total in range(0, n + 1):
            for mvec in _compositions(total):
                k = len(mvec)
                csum = restricted_word_sum("GT", mvec + (N - total,))
                if csum.is_zero():
                    continue
                coeff = _as_kappa_rf(csum) * (_qfact_rf(N - total) / _qfact_rf(N))
                for mi in mvec:
                    coeff = coeff * _qfact_rf(mi - 1)
                if k % 2:
                    coeff = -coeff
                term = FormalExpr.symbol(PAIR, n - total) * _hilb_monomial(mvec)
                acc = acc + term * coeff
        coeffs.append(acc)
    return QSeries(0, coeffs, order)


def mochizuki_check(order, N):
    """The iterated wall-crossing must agree with the series identity:
    PT-side series = pair-symbol series times the inverse of the
    hilb-symbol series."""
    lhs = pt_from_dt_series(order, N)
    rhs = pair_symbol_series(order) * hilb_symbol_series(order).inverse()
    return lhs.eq_through(rhs, order)


def rank2_bridge(order, N, hilb):
    """Cross-check of the formal PT-side transfer against geometry: with
    hilb[m] bound to the computed 0-leg coefficients, the transfer series
    must equal the independently computed rank-2 quotient-scheme series.

    hilb is the 0-leg VertexSeries computed through at least the given
    order."""
    from .vertexk import quot2_vertex_series

    if order > N - 1:
        raise ValueError("order exceeds frame capacity")
    values = {}
    for m in range(0, order + 1):
        values[(HILB, m)] = hilb.series.coefficient(m)
    wseries = wall_transfer_series(order, N, sign="+")
    quot = quot2_vertex_series(order)
    for n in range(order + 1):
        lhs = wseries.coefficient(n).substitute(values)
        if not lhs == quot.series.coefficient(n):
            return False
    return True


def dt_side_check(order, N, hilb, quot):
    """Valuewise check of the DT-side relation: the 0-leg coefficients must
    equal the convolution of the rank-2 coefficients with the evaluated
    DT-side transfer series."""
    if order > N - 1:
        raise ValueError("order exceeds frame capacity")
    values = {}
    for m in range(0, order + 1):
        values[(HILB, m)] = hilb.series.coefficient(m)
    wseries = wall_transfer_series(order, N, sign="-")
    for n in range(order + 1):
        acc = RatFunc.zero()
        for m in range(0, n + 1):
            acc = acc + quot.series.coefficient(n - m) * wseries.coefficient(m).substitute(values)
        if not acc == hilb.series.coefficient(n):
            return False
    return True


def shifted_product_series(order):
    """(sum (-Q kappa^(1/2))^n hilb[n]) (sum (-Q kappa^(-1/2))^n hilb[n]),
    the structural form of the PT-side transfer series."""
    up = hilb_symbol_series(order).subst_q_scale(
        FormalExpr.scalar(LaurentPoly.term(-1, (1, 1, 1, 0, 0)))
    )
    down = hilb_symbol_series(order).subst_q_scale(
        FormalExpr.scalar(LaurentPoly.term(-1, (-1, -1, -1, 0, 0)))
    )
    return up * down
