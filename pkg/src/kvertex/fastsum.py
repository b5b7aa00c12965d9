"""Vectorized engine for summing fixed-point weights.

Same algorithm as the pure-Python merge tree in vertexk (factored
fractions over weight binomials, trial-division reduction), but with
polynomials held as parallel numpy int64 arrays: packed monomial keys in
five 12-bit lanes and integer coefficients. All arithmetic is integer
arithmetic; exactness is preserved by explicit range checks on both
exponents and coefficients, and any violation falls back to the exact
dict-based engine. Set KVERTEX_PURE=1 to force the fallback everywhere.

Division by a weight binomial t^m - t^(-m) works line by line along the
exponent direction 2m: after a per-line zero-sum precheck, the quotient is
a segmented negated prefix sum over the dense range of line positions.
"""

from __future__ import annotations

import numpy as np

from .exactalg import _unpack, _pack, LaurentPoly

_LANE = 12
_OFF = 1 << (_LANE - 1)
_MASK = (1 << _LANE) - 1
_SHIFTS = tuple(_LANE * (4 - i) for i in range(5))
_ZERO = sum(_OFF << s for s in _SHIFTS)
_EXP_LIMIT = _OFF - 64
# Every stored coefficient stays below 2^61. The only summations are
# combines of two arrays with unique keys (bounded by 2 * 2^61 < 2^63) and
# the per-line prefix sums inside division, which carry their own dynamic
# max * run-length bound; int64 arithmetic therefore never wraps.
_COEFF_LIMIT = 1 << 61
_SUM_LIMIT = 1 << 62


class FastSumUnavailable(Exception):
    """Raised when inputs exceed the vectorized engine's safe ranges."""


def _small_from_big(kbig):
    e = _unpack(kbig)
    if any(abs(x) > _EXP_LIMIT for x in e):
        raise FastSumUnavailable("exponent out of range")
    k = 0
    for x, s in zip(e, _SHIFTS):
        k += (x + _OFF) << s
    return k


def _big_from_small(k):
    k = int(k)
    return _pack(tuple(((k >> s) & _MASK) - _OFF for s in _SHIFTS))


def _check_coeffs(coeffs):
    if len(coeffs) and np.abs(coeffs).max() >= _COEFF_LIMIT:
        raise FastSumUnavailable("coefficient out of range")


def _dedupe(keys, coeffs):
    """Sort by key, combine equal keys, drop zeros."""
    if keys.size == 0:
        return keys, coeffs
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    coeffs = coeffs[order]
    starts = np.empty(keys.size, dtype=bool)
    starts[0] = True
    np.not_equal(keys[1:], keys[:-1], out=starts[1:])
    idx = np.flatnonzero(starts)
    sums = np.add.reduceat(coeffs, idx)
    keys = keys[idx]
    nz = sums != 0
    _check_coeffs(sums)
    return keys[nz], sums[nz]


def _add(a, b):
    keys = np.concatenate((a[0], b[0]))
    coeffs = np.concatenate((a[1], b[1]))
    return _dedupe(keys, coeffs)


def _mul_binomial(arr, m):
    """arr * (t^m - t^(-m)) for a small-packed key m."""
    keys, coeffs = arr
    d = m - _ZERO
    return _dedupe(
        np.concatenate((keys + d, keys - d)),
        np.concatenate((coeffs, -coeffs)),
    )


def _mul_binomials(arr, m, e):
    for _ in range(e):
        arr = _mul_binomial(arr, m)
    return arr


def _lane_info(m):
    """(lane shift, component value) for the leading nonzero lane of the
    half-weight key m."""
    e = _unpack(_big_from_small(m))
    for i in range(5):
        if e[i]:
            return _SHIFTS[i], e[i]
    raise ValueError("trivial weight direction")


def _divide_binomial(arr, m):
    """Exact quotient arr / (t^m - t^(-m)), or None.

    Equivalent to dividing arr * t^m by t^(2m) - 1: group terms into lines
    along the direction 2m, reject unless every line sums to zero, then
    take negated running prefix sums along each line (dense across gaps).
    """
    keys, coeffs = arr
    if keys.size == 0:
        return arr
    d = m - _ZERO
    mu = 2 * d
    s0, halfstep = _lane_info(m)
    step = 2 * halfstep
    shifted = keys + d
    lane = ((shifted >> s0) & _MASK) - _OFF
    j = lane // step
    base = shifted - j * mu
    order = np.lexsort((j, base))
    base = base[order]
    j = j[order]
    c = coeffs[order]
    starts = np.empty(base.size, dtype=bool)
    starts[0] = True
    np.not_equal(base[1:], base[:-1], out=starts[1:])
    idx = np.flatnonzero(starts)
    max_abs = int(np.abs(c).max()) if c.size else 0
    if max_abs and base.size > _SUM_LIMIT // max_abs:
        raise FastSumUnavailable("line sums could overflow")
    if np.add.reduceat(c, idx).any():
        return None
    seg_id = np.cumsum(starts) - 1
    line_base = base[idx]
    line_jfirst = j[idx]
    offs = j - line_jfirst[seg_id]
    seg_len = np.zeros(idx.size, dtype=np.int64)
    np.maximum.at(seg_len, seg_id, offs + 1)
    seg_start = np.concatenate(([0], np.cumsum(seg_len)[:-1]))
    total = int(seg_len.sum())
    if max_abs and total > _SUM_LIMIT // max_abs:
        raise FastSumUnavailable("prefix sums could overflow")
    dense = np.zeros(total, dtype=np.int64)
    dense[seg_start[seg_id] + offs] = c
    prefix = np.cumsum(dense)
    line_of_slot = np.repeat(np.arange(idx.size, dtype=np.int64), seg_len)
    carry = np.zeros(idx.size, dtype=np.int64)
    if idx.size > 1:
        carry[1:] = prefix[seg_start[1:] - 1]
    q = -(prefix - carry[line_of_slot])
    off_of_slot = np.arange(total, dtype=np.int64) - seg_start[line_of_slot]
    keys_out = line_base[line_of_slot] + (line_jfirst[line_of_slot] + off_of_slot) * mu
    nz = q != 0
    qnz = q[nz]
    _check_coeffs(qnz)
    return _dedupe(keys_out[nz], qnz)


def _pair_reduce(arr, den, candidates=None):
    keys, coeffs = arr
    if keys.size == 0:
        den.clear()
        return arr, den
    todo = list(den) if candidates is None else [m for m in candidates if m in den]
    for m in todo:
        while den.get(m, 0) > 0:
            q = _divide_binomial(arr, m)
            if q is None:
                break
            arr = q
            den[m] -= 1
            if arr[0].size == 0:
                den.clear()
                return arr, den
        if den.get(m) == 0:
            del den[m]
    return arr, den


def _pair_add(a, b, full=False):
    arr_a, den_a = a
    arr_b, den_b = b
    lcm = dict(den_a)
    candidates = []
    for m, e in den_b.items():
        have = lcm.get(m, 0)
        if have < e:
            lcm[m] = e
        if have == e:
            candidates.append(m)
    xa, xb = arr_a, arr_b
    for m, e in lcm.items():
        extra = e - den_a.get(m, 0)
        if extra:
            xa = _mul_binomials(xa, m, extra)
        extra = e - den_b.get(m, 0)
        if extra:
            xb = _mul_binomials(xb, m, extra)
    return _pair_reduce(_add(xa, xb), lcm, None if full else candidates)


def _leaf(fw):
    """FactoredWeight -> (array, denominator dict) in small packing."""
    num_keys = np.array([_ZERO], dtype=np.int64)
    num_coeffs = np.array([fw.sign], dtype=np.int64)
    arr = (num_keys, num_coeffs)
    den = {}
    for mbig, e in sorted(fw.fac.items()):
        m = _small_from_big(mbig)
        if e > 0:
            arr = _mul_binomials(arr, m, e)
        else:
            den[m] = -e
    return arr, den


def sum_factored(fws):
    """Sum factored weights; returns (numerator LaurentPoly, denominator
    factor dict keyed by big-packed half-weight keys)."""

    if not fws:
        return LaurentPoly.zero(), {}
    pairs = [_leaf(fw) for fw in fws]
    while len(pairs) > 1:
        top = len(pairs) == 2
        merged = []
        for i in range(0, len(pairs) - 1, 2):
            merged.append(_pair_add(pairs[i], pairs[i + 1], full=top))
        if len(pairs) % 2:
            merged.append(pairs[-1])
        pairs = merged
    (keys, coeffs), den = _pair_reduce(*pairs[0])
    num = LaurentPoly(
        {_big_from_small(k): int(c) for k, c in zip(keys.tolist(), coeffs.tolist())}
    )
    return num, {_big_from_small(m): e for m, e in den.items()}
