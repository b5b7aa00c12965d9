"""Exact arithmetic kernel: sparse Laurent polynomials, rational functions,
and truncated power series.

Everything is exact. Coefficients are Python ints or Fractions, exponents
are half-integers stored as doubled integers, so e.g. kappa^(1/2) is an
honest monomial. There is no floating point anywhere in this module.

Variables, in order: t1, t2, t3, w1, w2. The distinguished weight
kappa = t1*t2*t3 gets dedicated helpers since half powers of it appear
throughout the quantum-integer and fixed-point-weight machinery.

Internally a monomial is one Python int: five 24-bit offset lanes, most
significant lane first, so integer comparison is lexicographic comparison
of doubled-exponent tuples and monomial multiplication is a single integer
addition. The public API speaks doubled-exponent tuples.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

NVARS = 5
VAR_NAMES = ("t1", "t2", "t3", "w1", "w2")

ZERO_EXPS = (0,) * NVARS

_LANE = 24
_OFF = 1 << (_LANE - 1)
_MASK = (1 << _LANE) - 1
_SHIFTS = tuple(_LANE * (NVARS - 1 - i) for i in range(NVARS))
PACK_ZERO = sum(_OFF << s for s in _SHIFTS)
_PARITY = sum(1 << s for s in _SHIFTS)


def _pack(exps):
    k = 0
    for e, s in zip(exps, _SHIFTS):
        k += (e + _OFF) << s
    return k


def _unpack(k):
    return tuple(((k >> s) & _MASK) - _OFF for s in _SHIFTS)


def _kneg(k):
    return 2 * PACK_ZERO - k


def _coeff_clean(c):
    """Collapse Fractions with denominator 1 back to int."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def exps_str(exps):
    """Canonical text form, doubled exponents in: t1^(a/2) t2^(b/2) ..."""
    parts = []
    for name, e in zip(VAR_NAMES, exps):
        if e == 0:
            continue
        if e == 2:
            parts.append(name)
        elif e % 2 == 0:
            parts.append("%s^%d" % (name, e // 2))
        else:
            parts.append("%s^(%d/2)" % (name, e))
    return " ".join(parts) if parts else "1"


class LaurentPoly:
    """Sparse Laurent polynomial with exact coefficients.

    Stored as a dict from packed monomial keys to nonzero coefficients.
    Instances are immutable by convention: no method mutates self, and the
    term dict must not be touched from outside.
    """

    __slots__ = ("d",)

    def __init__(self, d=None):
        self.d = d if d is not None else {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero():
        return LaurentPoly({})

    @staticmethod
    def const(c):
        c = _coeff_clean(c)
        return LaurentPoly({PACK_ZERO: c}) if c else LaurentPoly({})

    @staticmethod
    def term(c, exps):
        c = _coeff_clean(c)
        if not c:
            return LaurentPoly({})
        return LaurentPoly({_pack(exps): c})

    @staticmethod
    def var(i, doubled_power=2):
        return LaurentPoly({PACK_ZERO + (doubled_power << _SHIFTS[i]): 1})

    @staticmethod
    def from_terms(pairs):
        d = {}
        for c, exps in pairs:
            k = _pack(exps)
            c = d.get(k, 0) + c
            if c:
                d[k] = _coeff_clean(c)
            elif k in d:
                del d[k]
        return LaurentPoly(d)

    # -- predicates and views -------------------------------------------

    def is_zero(self):
        return not self.d

    def __bool__(self):
        return bool(self.d)

    def is_constant(self):
        return not self.d or (len(self.d) == 1 and PACK_ZERO in self.d)

    def as_constant(self):
        """The constant value, or None if not constant."""
        if not self.d:
            return 0
        if len(self.d) == 1 and PACK_ZERO in self.d:
            return self.d[PACK_ZERO]
        return None

    def is_integral(self):
        """True iff every exponent is a genuine integer (doubled value
        even)."""
        return all(k & _PARITY == 0 for k in self.d)

    def terms(self):
        """Terms in canonical (ascending lex on doubled exponents) order."""
        return [(_unpack(k), self.d[k]) for k in sorted(self.d)]

    def coeff(self, exps):
        return self.d.get(_pack(exps), 0)

    def coefficient_sum(self):
        """Value at t1 = t2 = t3 = w1 = w2 = 1 (the rank of a character)."""
        return _coeff_clean(sum(self.d.values(), start=Fraction(0)))

    def num_terms(self):
        return len(self.d)

    def uses_vars(self):
        """Set of variable indices with a nonzero exponent somewhere."""
        used = set()
        for k in self.d:
            for i, e in enumerate(_unpack(k)):
                if e:
                    used.add(i)
        return used

    def has_integer_coeffs(self):
        return all(isinstance(c, int) for c in self.d.values())

    # -- ring operations ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.d == other.d
        if isinstance(other, (int, Fraction)):
            return self.d == LaurentPoly.const(other).d
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.d.items()})

    def __add__(self, other):
        if type(other) is not LaurentPoly:
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.const(other)
            elif not isinstance(other, LaurentPoly):
                return NotImplemented
        a, b = self.d, other.d
        if len(a) < len(b):
            a, b = b, a
        d = dict(a)
        for k, c in b.items():
            s = d.get(k, 0) + c
            if s:
                d[k] = _coeff_clean(s)
            elif k in d:
                del d[k]
        return LaurentPoly(d)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is not LaurentPoly:
            if isinstance(other, (int, Fraction)):
                if not other:
                    return LaurentPoly({})
                return LaurentPoly(
                    {k: _coeff_clean(c * other) for k, c in self.d.items()}
                )
            if not isinstance(other, LaurentPoly):
                return NotImplemented
        a, b = self.d, other.d
        if len(a) > len(b):
            a, b = b, a
        d = {}
        get = d.get
        for ka, ca in a.items():
            ka -= PACK_ZERO
            for kb, cb in b.items():
                k = ka + kb
                s = get(k, 0) + ca * cb
                if s:
                    d[k] = s
                elif k in d:
                    del d[k]
        for k, c in d.items():
            d[k] = _coeff_clean(c)
        return LaurentPoly(d)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("LaurentPoly power wants a nonnegative integer")
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def mul_binomial(self, kplus, cplus, kminus, cminus):
        """Fast multiply by (cplus * t^kplus + cminus * t^kminus), keys
        packed."""
        d = {}
        get = d.get
        kp = kplus - PACK_ZERO
        km = kminus - PACK_ZERO
        for k, c in self.d.items():
            k1 = k + kp
            s = get(k1, 0) + c * cplus
            if s:
                d[k1] = s
            elif k1 in d:
                del d[k1]
            k2 = k + km
            s = get(k2, 0) + c * cminus
            if s:
                d[k2] = s
            elif k2 in d:
                del d[k2]
        return LaurentPoly(d)

    def bar(self):
        """The weight-dual involution: every monomial exponent is negated."""
        base = 2 * PACK_ZERO
        return LaurentPoly({base - k: c for k, c in self.d.items()})

    # -- structure helpers --------------------------------------------

    def monomial_content(self):
        """Componentwise min of exponents; the monomial shift making this a
        genuine polynomial with a zero min-corner per coordinate."""
        if not self.d:
            return ZERO_EXPS
        mins = [None] * NVARS
        for k in self.d:
            for i, e in enumerate(_unpack(k)):
                if mins[i] is None or e < mins[i]:
                    mins[i] = e
        return tuple(mins)

    def shift(self, exps):
        """Multiply by the monomial with the given doubled exponents."""
        if exps == ZERO_EXPS:
            return self
        off = _pack(exps) - PACK_ZERO
        return LaurentPoly({k + off: c for k, c in self.d.items()})

    def leading(self):
        """(exps, coeff) of the lexicographically greatest monomial."""
        k = max(self.d)
        return _unpack(k), self.d[k]

    def rational_content(self):
        """Positive rational g with self/g integer-primitive."""
        from math import gcd

        num_gcd = 0
        den_lcm = 1
        for c in self.d.values():
            f = Fraction(c)
            num_gcd = gcd(num_gcd, f.numerator)
            den_lcm = den_lcm * f.denominator // gcd(den_lcm, f.denominator)
        return Fraction(num_gcd, den_lcm) if num_gcd else Fraction(1)

    def primitive_split(self):
        """(scalar, monomial_exps, primitive) with
        self = scalar * monomial * primitive, primitive content-free with
        lex-leading coefficient +1."""
        if not self.d:
            return Fraction(0), ZERO_EXPS, LaurentPoly({})
        shift = self.monomial_content()
        g = self.rational_content()
        if self.d[max(self.d)] < 0:
            g = -g
        off = _pack(shift) - PACK_ZERO
        inv = 1 / Fraction(g)
        prim = LaurentPoly(
            {k - off: _coeff_clean(c * inv) for k, c in self.d.items()}
        )
        return g, shift, prim

    # -- substitutions -------------------------------------------------

    def subst_t3_cy(self):
        """t3 -> (t1 t2)^(-1), the Calabi-Yau specialization, monomial-wise."""
        d = {}
        for k, coeff in self.d.items():
            a, b, c, d4, d5 = _unpack(k)
            e = _pack((a - c, b - c, 0, d4, d5))
            s = d.get(e, 0) + coeff
            if s:
                d[e] = _coeff_clean(s)
            elif e in d:
                del d[e]
        return LaurentPoly(d)

    def subst_w(self, which, target_exps):
        """w1 (which=0) or w2 (which=1) -> the monomial with the given
        doubled exponents."""
        slot = 3 + which
        d = {}
        for k, coeff in self.d.items():
            exps = list(_unpack(k))
            x = exps[slot]
            if x % 2:
                raise ValueError("half power of a framing variable")
            exps[slot] = 0
            if x:
                half = x // 2
                exps = [a + half * t for a, t in zip(exps, target_exps)]
            e = _pack(exps)
            s = d.get(e, 0) + coeff
            if s:
                d[e] = _coeff_clean(s)
            elif e in d:
                del d[e]
        return LaurentPoly(d)

    # -- display -------------------------------------------------------

    def __str__(self):
        if not self.d:
            return "0"
        parts = []
        for k in sorted(self.d, reverse=True):
            c = self.d[k]
            m = exps_str(_unpack(k))
            if m == "1":
                s = str(c)
            elif c == 1:
                s = m
            elif c == -1:
                s = "-" + m
            else:
                s = "%s %s" % (c, m)
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    def __repr__(self):
        return "LaurentPoly(%s)" % self

    def to_json(self):
        """Canonical term list [[coeff_string, [doubled exponents]], ...]."""
        return [[str(c), list(e)] for e, c in self.terms()]


# Generators and distinguished elements.
ONE = LaurentPoly.const(1)
T1 = LaurentPoly.var(0)
T2 = LaurentPoly.var(1)
T3 = LaurentPoly.var(2)
W1 = LaurentPoly.var(3)
W2 = LaurentPoly.var(4)
KAPPA = LaurentPoly.term(1, (2, 2, 2, 0, 0))
KAPPA_SQRT = LaurentPoly.term(1, (1, 1, 1, 0, 0))
KAPPA_MINUS_ONE = KAPPA - ONE


def kappa_pow(doubled):
    """kappa^(doubled/2) as a monomial."""
    return LaurentPoly.term(1, (doubled, doubled, doubled, 0, 0))


def bar(p):
    """Involution x -> x^(-1) on every variable, extended linearly."""
    return p.bar()


def _divide_by_binomial(p, q):
    """Exact quotient p/q for a two-term divisor, or None.

    Terms of p are grouped into lines along the divisor's exponent
    direction; on each line the quotient obeys a first-order recurrence.
    For unit divisor coefficients a weighted line-sum precheck rejects
    non-divisible inputs in linear time, the common case inside the
    trial-division reduction loops.
    """
    (k1, c1), (k2, c2) = sorted(q.d.items(), reverse=True)
    mu = k1 - k2
    e1 = _unpack(k1)
    e2 = _unpack(k2)
    i0 = next(i for i in range(NVARS) if e1[i] != e2[i])
    s0 = _SHIFTS[i0]
    step = e1[i0] - e2[i0]
    lane2 = (k2 >> s0) & _MASK
    unit = (c1 == 1 or c1 == -1) and (c2 == 1 or c2 == -1)
    if unit:
        # divisor ~ c1 (t^mu + s); divisible only if sum (-s)^j p_j
        # vanishes on every line, checked before any structure is built
        alt = c1 == c2
        sums = {}
        get = sums.get
        for k, c in p.d.items():
            j = (((k >> s0) & _MASK) - lane2) // step
            base = k - j * mu
            if alt and j % 2:
                c = -c
            sums[base] = get(base, 0) + c
        if any(sums.values()):
            return None
    lines = {}
    for k, c in p.d.items():
        j = (((k >> s0) & _MASK) - lane2) // step
        base = k - j * mu
        entry = lines.get(base)
        if entry is None:
            lines[base] = [(j, c)]
        else:
            entry.append((j, c))
    out = {}
    base_off = k2 - PACK_ZERO
    for base, terms in lines.items():
        terms.sort()
        qprev = 0
        pos = terms[0][0]
        for j, c in terms:
            while pos < j and qprev:
                if unit:
                    qprev = -qprev * c1 * c2
                else:
                    qprev = _coeff_clean(
                        Fraction(-qprev) * Fraction(c1) / Fraction(c2)
                    )
                if qprev:
                    out[base + pos * mu - base_off] = qprev
                pos += 1
            val = c - c1 * qprev
            if unit:
                qprev = val * c2 if isinstance(val, int) else _coeff_clean(val * c2)
            else:
                qprev = _coeff_clean(Fraction(val) / Fraction(c2))
            if qprev:
                out[base + j * mu - base_off] = qprev
            pos = j + 1
        if qprev:
            return None
    return LaurentPoly(out)


def divide_exact(p, q):
    """Exact quotient p/q in the Laurent ring, or None if q does not
    divide p.

    Two-term divisors take a fast line-recurrence path. Otherwise: long
    division by the lex-leading term after shifting both arguments to
    genuine polynomials, sound because lex order is a monomial order there.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return LaurentPoly({})
    if len(q.d) == 1:
        ((kq, cq),) = q.d.items()
        off = kq - PACK_ZERO
        if cq == 1:
            return LaurentPoly({k - off: c for k, c in p.d.items()})
        return LaurentPoly(
            {k - off: _coeff_clean(Fraction(c) / Fraction(cq)) for k, c in p.d.items()}
        )
    if len(q.d) == 2:
        return _divide_by_binomial(p, q)
    sp = _pack(p.monomial_content()) - PACK_ZERO
    sq = _pack(q.monomial_content()) - PACK_ZERO
    shift = sp - sq
    pd = {k - sp: c for k, c in p.d.items()}
    qd = {k - sq: c for k, c in q.d.items()}
    qlead = max(qd)
    qlc = qd[qlead]
    qrest = [(k - PACK_ZERO, c) for k, c in qd.items() if k != qlead]
    qlead -= PACK_ZERO
    out = {}
    heap = [-k for k in pd]
    heapq.heapify(heap)
    while heap:
        k = -heapq.heappop(heap)
        c = pd.get(k, 0)
        if not c:
            continue
        qk = k - qlead
        uq = _unpack(qk)
        if any(x < 0 for x in uq):
            return None
        if isinstance(c, int) and isinstance(qlc, int) and c % qlc == 0:
            qc = c // qlc
        else:
            qc = _coeff_clean(Fraction(c) / Fraction(qlc))
        out[qk + shift] = qc
        del pd[k]
        for dk, dc in qrest:
            nk = qk + dk
            s = pd.get(nk, 0) - qc * dc
            if s:
                if nk not in pd:
                    heapq.heappush(heap, -nk)
                pd[nk] = _coeff_clean(s)
            elif nk in pd:
                del pd[nk]
    if pd:
        return None
    return LaurentPoly(out)


def _poly_key(p):
    """Hashable canonical key for a polynomial (used to pool denominator
    factors)."""
    items = []
    for e, c in p.terms():
        f = Fraction(c)
        items.append((e, f.numerator, f.denominator))
    return tuple(items)


def _poly_from_key(key):
    return LaurentPoly.from_terms(
        (_coeff_clean(Fraction(n, d)), e) for e, n, d in key
    )


class RatFunc:
    """Normalized rational function num / prod(factor^mult).

    The denominator is kept factored: a dict mapping factor keys (canonical
    primitive polynomials, lex-leading coefficient +1) to positive
    multiplicities. The pair is reduced by trial division: no stored factor
    divides the numerator. Rational and monomial content of the denominator
    is always folded into the numerator, so the expanded denominator is
    primitive with lex-leading coefficient +1, which makes equality of
    normal forms decidable and serialization canonical.
    """

    __slots__ = ("num", "fac")

    def __init__(self, num, den=ONE):
        if isinstance(num, (int, Fraction)):
            num = LaurentPoly.const(num)
        if isinstance(den, (int, Fraction)):
            den = LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("division by zero")
        fac = {}
        if not den.is_constant() or den.as_constant() != 1:
            g, shiftexp, prim = den.primitive_split()
            num = num * (1 / Fraction(g))
            num = num.shift(tuple(-x for x in shiftexp))
            if not prim.is_constant():
                fac[_poly_key(prim)] = 1
        self.num = num
        self.fac = fac
        self._reduce()

    @staticmethod
    def _raw(num, fac):
        r = object.__new__(RatFunc)
        r.num = num
        r.fac = fac
        r._reduce()
        return r

    @staticmethod
    def _prereduced(num, fac):
        r = object.__new__(RatFunc)
        r.num = num
        r.fac = fac
        return r

    def _reduce(self):
        if self.num.is_zero():
            self.fac = {}
            return
        if not self.fac:
            return
        num = self.num
        changed = True
        while changed:
            changed = False
            for key in list(self.fac):
                mult = self.fac[key]
                factor = _poly_from_key(key)
                while mult > 0:
                    q = divide_exact(num, factor)
                    if q is None:
                        break
                    num = q
                    mult -= 1
                    changed = True
                if mult:
                    self.fac[key] = mult
                else:
                    del self.fac[key]
        self.num = num

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_poly(p):
        return RatFunc._prereduced(
            p if isinstance(p, LaurentPoly) else LaurentPoly.const(p), {}
        )

    @staticmethod
    def zero():
        return RatFunc._prereduced(LaurentPoly({}), {})

    @staticmethod
    def one():
        return RatFunc._prereduced(LaurentPoly.const(1), {})

    # -- views ------------------------------------------------------------

    @property
    def den(self):
        """The expanded denominator (primitive, lex-leading coefficient
        +1)."""
        out = ONE
        for key, mult in sorted(self.fac.items()):
            out = out * (_poly_from_key(key) ** mult)
        return out

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def is_poly(self):
        return not self.fac

    def as_poly(self):
        if self.fac:
            raise ValueError("denominator is nontrivial")
        return self.num

    def as_constant(self):
        """Constant rational value, or None."""
        if self.fac:
            return None
        return self.num.as_constant()

    def uses_vars(self):
        used = self.num.uses_vars()
        for key in self.fac:
            used |= _poly_from_key(key).uses_vars()
        return used

    # -- arithmetic ---------------------------------------------------

    def __neg__(self):
        return RatFunc._prereduced(-self.num, dict(self.fac))

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        lcm = dict(self.fac)
        for key, mult in other.fac.items():
            if lcm.get(key, 0) < mult:
                lcm[key] = mult
        a = self.num
        for key, mult in lcm.items():
            extra = mult - self.fac.get(key, 0)
            if extra:
                a = a * (_poly_from_key(key) ** extra)
        b = other.num
        for key, mult in lcm.items():
            extra = mult - other.fac.get(key, 0)
            if extra:
                b = b * (_poly_from_key(key) ** extra)
        return RatFunc._raw(a + b, lcm)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc.zero()
        fac = dict(self.fac)
        for key, mult in other.fac.items():
            fac[key] = fac.get(key, 0) + mult
        return RatFunc._raw(self.num * other.num, fac)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero")
        num = ONE
        for key, mult in self.fac.items():
            num = num * (_poly_from_key(key) ** mult)
        g, shiftexp, prim = self.num.primitive_split()
        num = num * (1 / Fraction(g))
        num = num.shift(tuple(-x for x in shiftexp))
        fac = {}
        if not prim.is_constant():
            fac[_poly_key(prim)] = 1
        return RatFunc._raw(num, fac)

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_ratfunc(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFunc.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        shared = {}
        for key in self.fac.keys() & other.fac.keys():
            shared[key] = min(self.fac[key], other.fac[key])
        a = self.num
        for key, mult in other.fac.items():
            extra = mult - shared.get(key, 0)
            if extra:
                a = a * (_poly_from_key(key) ** extra)
        b = other.num
        for key, mult in self.fac.items():
            extra = mult - shared.get(key, 0)
            if extra:
                b = b * (_poly_from_key(key) ** extra)
        return a == b

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def bar(self):
        num = self.num.bar()
        fac = {}
        for key, mult in self.fac.items():
            g, shiftexp, prim = _poly_from_key(key).bar().primitive_split()
            num = num * ((1 / Fraction(g)) ** mult)
            num = num.shift(tuple(-mult * x for x in shiftexp))
            if not prim.is_constant():
                pk = _poly_key(prim)
                fac[pk] = fac.get(pk, 0) + mult
        return RatFunc._raw(num, fac)

    # -- substitutions --------------------------------------------------

    def subst_t3_cy(self):
        """Exact t3 -> (t1 t2)^(-1) specialization.

        Common powers of (kappa - 1) are cancelled from numerator and
        denominator first, since (kappa - 1) generates the ideal of the
        specialization locus; a denominator that still vanishes afterwards
        is a genuine singularity.
        """
        num = self.num
        den = self.den
        while True:
            qn = divide_exact(num, KAPPA_MINUS_ONE)
            if qn is None:
                break
            qd = divide_exact(den, KAPPA_MINUS_ONE)
            if qd is None:
                break
            num, den = qn, qd
        num = num.subst_t3_cy()
        den = den.subst_t3_cy()
        if den.is_zero():
            raise ZeroDivisionError("singular specialization")
        return RatFunc(num, den)

    def subst_w(self, which, target_exps):
        num = self.num.subst_w(which, target_exps)
        den = self.den.subst_w(which, target_exps)
        if den.is_zero():
            raise ZeroDivisionError("singular specialization")
        return RatFunc(num, den)

    # -- display ----------------------------------------------------------

    def __str__(self):
        if self.is_poly():
            return str(self.num)
        return "(%s) / (%s)" % (self.num, self.den)

    def __repr__(self):
        return "RatFunc(%s)" % self

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def _as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc.from_poly(x)
    if isinstance(x, (int, Fraction)):
        return RatFunc.from_poly(LaurentPoly.const(x))
    return NotImplemented


def ratfunc_normalize(num, den):
    """Canonical rational function num/den; errors on a zero denominator."""
    return RatFunc(num, den)


class QSeries:
    """Truncated power series in Q with exact coefficients.

    Coefficients live in any exact ring with +, -, *, and zero/one tests;
    RatFunc in practice, formal wall-crossing expressions elsewhere. The
    coefficient list always spans min_power..trunc inclusive and arithmetic
    never pretends to know anything beyond trunc.
    """

    __slots__ = ("min_power", "coeffs", "trunc")

    def __init__(self, min_power, coeffs, trunc):
        if len(coeffs) != trunc - min_power + 1:
            raise ValueError("coefficient list does not span min_power..trunc")
        self.min_power = min_power
        self.coeffs = list(coeffs)
        self.trunc = trunc

    @staticmethod
    def const(value, trunc, min_power=0):
        coeffs = [value * 0] * (trunc - min_power + 1)
        if min_power <= 0 <= trunc:
            coeffs[-min_power] = value
        return QSeries(min_power, coeffs, trunc)

    def coefficient(self, n):
        if n < self.min_power:
            return self.coeffs[0] * 0
        if n > self.trunc:
            raise IndexError("coefficient beyond truncation order")
        return self.coeffs[n - self.min_power]

    def truncate(self, order):
        if order > self.trunc:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.min_power, self.coeffs[: order - self.min_power + 1], order)

    def __neg__(self):
        return QSeries(self.min_power, [-c for c in self.coeffs], self.trunc)

    def __add__(self, other):
        lo = min(self.min_power, other.min_power)
        hi = min(self.trunc, other.trunc)
        zero = self.coeffs[0] * 0
        coeffs = []
        for n in range(lo, hi + 1):
            a = self.coeffs[n - self.min_power] if self.min_power <= n <= self.trunc else zero
            b = other.coeffs[n - other.min_power] if other.min_power <= n <= other.trunc else zero
            coeffs.append(a + b)
        return QSeries(lo, coeffs, hi)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        lo = self.min_power + other.min_power
        hi = min(self.trunc + other.min_power, other.trunc + self.min_power)
        zero = self.coeffs[0] * 0
        coeffs = [zero] * (hi - lo + 1)
        for i, a in enumerate(self.coeffs):
            if isinstance(a, (int, Fraction)) and not a:
                continue
            if hasattr(a, "is_zero") and a.is_zero():
                continue
            na = self.min_power + i
            for j, b in enumerate(other.coeffs):
                n = na + other.min_power + j
                if n > hi:
                    break
                coeffs[n - lo] = coeffs[n - lo] + a * b
        return QSeries(lo, coeffs, hi)

    def scale(self, c):
        return QSeries(self.min_power, [x * c for x in self.coeffs], self.trunc)

    def _lead_inverse(self):
        lead = self.coeffs[0]
        if isinstance(lead, (int, Fraction)):
            if not lead:
                raise ZeroDivisionError("non-invertible series")
            return Fraction(1) / Fraction(lead)
        if lead.is_zero():
            raise ZeroDivisionError("non-invertible series")
        return lead.inverse()

    def inverse(self):
        """Multiplicative inverse; needs a nonzero coefficient at
        min_power."""
        inv0 = self._lead_inverse()
        m = self.min_power
        n_out = self.trunc - 2 * m
        lo = -m
        out = [inv0]
        for k in range(1, n_out - lo + 1):
            acc = None
            for j in range(1, k + 1):
                term = self.coeffs[j] * out[k - j]
                acc = term if acc is None else acc + term
            out.append(-(inv0 * acc))
        return QSeries(lo, out, n_out)

    def __truediv__(self, other):
        return self * other.inverse()

    def subst_q_scale(self, unit):
        """Q -> unit * Q for an invertible coefficient unit: the coefficient
        at power n picks up unit^n."""
        coeffs = []
        for i, c in enumerate(self.coeffs):
            n = self.min_power + i
            if n >= 0:
                coeffs.append(c * unit ** n)
            else:
                inv = unit.inverse() if hasattr(unit, "inverse") else Fraction(1) / unit
                coeffs.append(c * inv ** (-n))
        return QSeries(self.min_power, coeffs, self.trunc)

    def map_coeffs(self, fn):
        return QSeries(self.min_power, [fn(c) for c in self.coeffs], self.trunc)

    def eq_through(self, other, order):
        """Exact coefficientwise equality through the given order."""
        if order > self.trunc or order > other.trunc:
            raise ValueError("order beyond truncation")
        lo = min(self.min_power, other.min_power)
        for n in range(lo, order + 1):
            a = self.coefficient(n)
            b = other.coefficient(n)
            if not a == b:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        order = min(self.trunc, other.trunc)
        return self.eq_through(other, order)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            n = self.min_power + i
            parts.append("Q^%d: %s" % (n, c))
        return "{ " + ", ".join(parts) + " }"


def series_div(a, b):
    """Quotient of truncated series; b must have a nonzero leading
    coefficient at its min_power."""
    return a / b
