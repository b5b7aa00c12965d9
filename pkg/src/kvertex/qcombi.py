"""Partitions, word rearrangements, quantum integers, and exhaustive
verifiers for the combinatorial identities behind the wall-crossing
formulas.

A word over the alphabet 1..l with multiplicity vector m is stored as a
plain tuple of ints. Quantum integers [n] carry the sign (-1)^(n-1), so
[n] at kappa = 1 is (-1)^(n-1) * n; all identity checking is exact.

Hot loops work on light "kappa dicts" mapping doubled half-powers of kappa
to integer coefficients; the public API converts to LaurentPoly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .exactalg import LaurentPoly, divide_exact, kappa_pow


# -- partitions ---------------------------------------------------------

def partition(parts):
    """Validated partition: weakly decreasing tuple of positive ints."""
    p = tuple(parts)
    if any(x <= 0 for x in p):
        raise ValueError("partition parts must be positive")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError("partition parts must be weakly decreasing")
    return p


def parse_partition(text):
    text = text.strip()
    if not text:
        return ()
    return partition(int(x) for x in text.split(","))


# -- kappa-dict helpers ---------------------------------------------------

def _kd_mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def _kd_add_into(acc, b):
    for e, c in b.items():
        s = acc.get(e, 0) + c
        if s:
            acc[e] = s
        elif e in acc:
            del acc[e]


def kd_to_poly(kd):
    """A kappa dict as a LaurentPoly in kappa^(1/2)."""
    return LaurentPoly.from_terms((c, (e, e, e, 0, 0)) for e, c in kd.items())


_QINT_CACHE = {}


def _qint_kd(n):
    kd = _QINT_CACHE.get(n)
    if kd is None:
        if n == 0:
            kd = {}
        elif n > 0:
            sign = 1 if n % 2 else -1
            kd = {n - 1 - 2 * j: sign for j in range(n)}
        else:
            kd = {e: -c for e, c in _qint_kd(-n).items()}
        _QINT_CACHE[n] = kd
    return kd


_QFACT_CACHE = {0: {0: 1}}


def _qfact_kd(n):
    if n < 0:
        raise ValueError("quantum factorial wants n >= 0")
    kd = _QFACT_CACHE.get(n)
    if kd is None:
        kd = _kd_mul(_qfact_kd(n - 1), _qint_kd(n))
        _QFACT_CACHE[n] = kd
    return kd


def quantum_int(n):
    """The signed quantum integer [n] = (-1)^(n-1)
    (kappa^(n/2) - kappa^(-n/2)) / (kappa^(1/2) - kappa^(-1/2))."""
    return kd_to_poly(_qint_kd(n))


def quantum_factorial(n):
    """[n]! = [1][2]...[n]; empty product for n = 0."""
    return kd_to_poly(_qfact_kd(n))


# -- words ----------------------------------------------------------------

def enumerate_words(mvec):
    """All rearrangements of 1^m1 2^m2 ... in lexicographic order."""
    mvec = tuple(mvec)
    if any(m < 0 for m in mvec):
        raise ValueError("multiplicities must be nonnegative")
    counts = list(mvec)
    total = sum(counts)
    word = []

    def rec():
        if len(word) == total:
            yield tuple(word)
            return
        for letter in range(1, len(counts) + 1):
            if counts[letter - 1]:
                counts[letter - 1] -= 1
                word.append(letter)
                yield from rec()
                word.pop()
                counts[letter - 1] += 1

    return rec()


def multiplicities(w, nletters=None):
    if nletters is None:
        nletters = max(w) if w else 0
    m = [0] * nletters
    for x in w:
        m[x - 1] += 1
    return tuple(m)


def occurrences(w, letter):
    """Ascending 1-based index set of the letter's occurrences."""
    return tuple(p for p, x in enumerate(w, start=1) if x == letter)


def first_occurrence(w, letter):
    for p, x in enumerate(w, start=1):
        if x == letter:
            return p
    raise ValueError("letter %d does not occur" % letter)


def c_word(w, i, j):
    """Signed inversion statistic: ordered pairs of an i before a j, minus
    ordered pairs of a j before an i. Antisymmetric in (i, j)."""
    if i == j:
        raise ValueError("letters must differ")
    seen_i = seen_j = 0
    c = 0
    for x in w:
        if x == i:
            c -= seen_j
            seen_i += 1
        elif x == j:
            c += seen_i
            seen_j += 1
    if not seen_i or not seen_j:
        raise ValueError("both letters must occur in the word")
    return c


def dim_vector(w, letter):
    """Prefix-count dimension vector of one letter, with the stable final
    entry appended (length len(w) + 1)."""
    e = []
    n = 0
    for x in w:
        if x == letter:
            n += 1
        e.append(n)
    e.append(n)
    return tuple(e)


def c_Q(evec, fvec):
    """Antisymmetrized chain-quiver Euler pairing
    sum_i (e_i f_{i+1} - f_i e_{i+1}) over i = 1..len-1."""
    if len(evec) != len(fvec):
        raise ValueError("dimension vectors must have equal length")
    return sum(
        evec[i] * fvec[i + 1] - fvec[i] * evec[i + 1] for i in range(len(evec) - 1)
    )


def _word_stats(w, nletters):
    """One pass: first occurrences o_i and the sums S_i = sum_{j>i} c_{i,j}."""
    o = [0] * (nletters + 1)
    s = [0] * (nletters + 1)
    seen = [0] * (nletters + 1)
    for p, x in enumerate(w, start=1):
        if not o[x]:
            o[x] = p
        for i in range(1, x):
            if seen[i]:
                s[i] += seen[i]
        for j in range(x + 1, nletters + 1):
            if seen[j]:
                s[x] -= seen[j]
        seen[x] += 1
    return o, s


ORDER_KINDS = ("GT", "LT", "B", "ALL")


def restricted_word_sum(kind, mvec):
    """Sum over rearrangements of 1^m1 ... l^ml, restricted by an ordering
    constraint on first occurrences, of prod_{i<l} [m_i - sum_{j>i} c_{i,j}].

    Kinds: GT means o_1 > ... > o_{l-1}; LT means o_1 < ... < o_{l-1};
    B means o_l < o_1 < ... < o_{l-1}; ALL means o_1 < ... < o_l. The last
    slot is the rank-one remainder and may have multiplicity zero, in which
    case constraints that mention o_l are unsatisfiable and the sum is 0.
    """
    if kind not in ORDER_KINDS:
        raise ValueError("unknown ordering kind %r" % (kind,))
    mvec = tuple(mvec)
    ell = len(mvec)
    if ell < 1:
        raise ValueError("need at least one slot")
    if any(m < 1 for m in mvec[:-1]) or mvec[-1] < 0:
        raise ValueError("multiplicities must be positive (last slot >= 0)")
    if mvec[-1] == 0:
        if kind in ("B", "ALL"):
            return LaurentPoly.zero()
        mvec = mvec[:-1]
        if not mvec:
            return LaurentPoly.const(1)

    def admissible(o):
        if kind == "GT":
            return all(o[i] > o[i + 1] for i in range(1, ell - 1))
        if kind == "LT":
            return all(o[i] < o[i + 1] for i in range(1, ell - 1))
        if kind == "ALL":
            return all(o[i] < o[i + 1] for i in range(1, len(mvec)))
        return o[len(mvec)] < o[1] and all(o[i] < o[i + 1] for i in range(1, ell - 1))

    total = {}
    nletters = len(mvec)
    for w in enumerate_words(mvec):
        o, s = _word_stats(w, nletters)
        if not admissible(o):
            continue
        prod = {0: 1}
        for i in range(1, ell):
            if i <= nletters:
                prod = _kd_mul(prod, _qint_kd(mvec[i - 1] - s[i]))
        _kd_add_into(total, prod)
    return kd_to_poly(total)


# -- identity suites -------------------------------------------------------

PROPS = ("QBINOM", "QMULTINOM", "MOCHIZUKI", "JOYCE_LT", "JOYCE_B")


class IdentityResult:
    """Outcome of one exhaustive identity check."""

    def __init__(self, prop, args, lhs, rhs):
        self.prop = prop
        self.args = args
        self.lhs = lhs
        self.rhs = rhs
        self.verdict = lhs == rhs

    def __bool__(self):
        return self.verdict

    def to_json(self):
        return {
            "prop": self.prop,
            "args": self.args,
            "verdict": self.verdict,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }

    def __repr__(self):
        return "IdentityResult(%s, %s, verdict=%s)" % (
            self.prop,
            self.args,
            self.verdict,
        )


def _qfact_ratio(num_fact, den_facts):
    """[num_fact]! / prod [d]! as an exact polynomial; the ratio is exact
    for every identity right-hand side used here."""
    num = kd_to_poly(_qfact_kd(num_fact))
    den = LaurentPoly.const(1)
    for d in den_facts:
        den = den * kd_to_poly(_qfact_kd(d))
    q = divide_exact(num, den)
    if q is None:
        raise ArithmeticError("quantum factorial ratio is not polynomial")
    return q


def _signed_kappa_power_sum(d):
    """(-kappa^(1/2))^d + (-kappa^(1/2))^(-d)."""
    sign = -1 if d % 2 else 1
    out = kappa_pow(d) * sign + kappa_pow(-d) * sign
    return out


def check_identity(prop, *, m=None, n=None, mvec=None, N=None):
    """Exhaustive check of one combinatorial identity instance.

    QBINOM wants (m, n); QMULTINOM wants mvec; MOCHIZUKI, JOYCE_LT and
    JOYCE_B want (mvec, N). The left side is computed by brute enumeration,
    the right side from the closed form; the result compares them exactly.
    """
    if prop == "QBINOM":
        if m is None or n is None or m < 1 or n < 1:
            raise ValueError("QBINOM wants integers m, n >= 1")
        total = {}
        for w in enumerate_words((m, n)):
            _kd_add_into(total, {c_word(w, 1, 2): 1})
        lhs = kd_to_poly(total)
        if (m * n) % 2:
            lhs = -lhs
        rhs = _qfact_ratio(m + n, (m, n))
        return IdentityResult(prop, {"m": m, "n": n}, lhs, rhs)

    if prop == "QMULTINOM":
        if not mvec or any(x < 1 for x in mvec):
            raise ValueError("QMULTINOM wants a vector of positive parts")
        mvec = tuple(mvec)
        k = len(mvec)
        total = {}
        for w in enumerate_words(mvec):
            _, s = _word_stats(w, k)
            _kd_add_into(total, {sum(s): 1})
        lhs = kd_to_poly(total)
        cross = sum(mvec[i] * mvec[j] for i in range(k) for j in range(i))
        if cross % 2:
            lhs = -lhs
        rhs = _qfact_ratio(sum(mvec), mvec)
        return IdentityResult(prop, {"mvec": list(mvec)}, lhs, rhs)

    if prop in ("MOCHIZUKI", "JOYCE_LT", "JOYCE_B"):
        mvec = tuple(mvec or ())
        if any(x < 1 for x in mvec):
            raise ValueError("parts must be positive")
        if N is None or N <= sum(mvec):
            raise ValueError("need N > |mvec|")
        ell = len(mvec)
        kind = {"MOCHIZUKI": "GT", "JOYCE_LT": "LT", "JOYCE_B": "B"}[prop]
        lhs = LaurentPoly.zero()
        for perm in itertools.permutations(mvec):
            lhs = lhs + restricted_word_sum(kind, perm + (N - sum(mvec),))
        if prop == "MOCHIZUKI":
            rhs = _qfact_ratio(N, (N - sum(mvec),) + tuple(x - 1 for x in mvec))
            fact = 1
            for i in range(2, ell + 1):
                fact *= i
            rhs = rhs * fact
        elif prop == "JOYCE_LT":
            if ell <= 1:
                rhs = _qfact_ratio(N, (N - sum(mvec),) + tuple(x - 1 for x in mvec))
            else:
                rhs = LaurentPoly.zero()
        else:
            if N - sum(mvec) - 1 < 0:
                raise ValueError("JOYCE_B needs N >= |mvec| + 1")
            if ell == 1:
                rhs = _qfact_ratio(
                    N - 1, (N - sum(mvec) - 1, mvec[0] - 1)
                ) * _signed_kappa_power_sum(mvec[0])
            elif ell == 2:
                rhs = _qfact_ratio(
                    N - 1, (N - sum(mvec) - 1, mvec[0] - 1, mvec[1] - 1)
                ) * _signed_kappa_power_sum(mvec[0] - mvec[1])
            else:
                rhs = LaurentPoly.zero()
        return IdentityResult(prop, {"mvec": list(mvec), "N": N}, lhs, rhs)

    raise ValueError("unknown identity %r" % (prop,))


def kappa_one_value(p):
    """Evaluate a kappa-Laurent polynomial at kappa = 1."""
    val = sum(Fraction(c) for _, c in p.terms())
    return val if val.denominator != 1 else val.numerator
