"""Word combinatorics, quantum integers, and the identity checkers."""

import itertools

import pytest

from kvertex.exactalg import LaurentPoly, kappa_pow
from kvertex.qcombi import (
    c_Q,
    c_word,
    check_identity,
    dim_vector,
    enumerate_words,
    kappa_one_value,
    parse_partition,
    partition,
    quantum_factorial,
    quantum_int,
    restricted_word_sum,
)


def test_partition_validation():
    assert partition((3, 1)) == (3, 1)
    assert parse_partition(" ") == ()
    assert parse_partition("3,1") == (3, 1)
    with pytest.raises(ValueError):
        partition((1, 2))
    with pytest.raises(ValueError):
        partition((0,))


def test_quantum_int_values():
    minus_k = LaurentPoly.term(-1, (1, 1, 1, 0, 0)) + LaurentPoly.term(-1, (-1, -1, -1, 0, 0))
    assert quantum_int(1) == LaurentPoly.const(1)
    assert quantum_int(0).is_zero()
    assert quantum_int(2) == minus_k
    assert quantum_int(3) == kappa_pow(2) + LaurentPoly.const(1) + kappa_pow(-2)


def test_quantum_int_negation():
    for n in range(0, 12):
        assert quantum_int(-n) == -quantum_int(n)


def test_quantum_int_kappa_one_limit():
    for n in range(-20, 21):
        expect = n if n % 2 else -n
        assert kappa_one_value(quantum_int(n)) == expect


def test_quantum_difference_identity():
    # [a-b] = (-1)^b kappa^(b/2) [a] - (-1)^a kappa^(a/2) [b]
    for a in range(-10, 11):
        for b in range(-10, 11):
            lhs = quantum_int(a - b)
            rhs = kappa_pow(b) * quantum_int(a) * (-1 if b % 2 else 1) - kappa_pow(
                a
            ) * quantum_int(b) * (-1 if a % 2 else 1)
            assert lhs == rhs, (a, b)


def test_quantum_jacobi_identity():
    # [A+C][B] = [A][B-C] + [A+B][C]
    rng = range(-8, 9)
    for a in rng:
        for b in rng:
            for c in rng:
                lhs = quantum_int(a + c) * quantum_int(b)
                rhs = quantum_int(a) * quantum_int(b - c) + quantum_int(a + b) * quantum_int(c)
                assert lhs == rhs, (a, b, c)


def test_quantum_factorial():
    assert quantum_factorial(0) == LaurentPoly.const(1)
    assert quantum_factorial(2) == quantum_int(2)
    assert quantum_factorial(3) == quantum_int(2) * quantum_int(3)
    with pytest.raises(ValueError):
        quantum_factorial(-1)


def test_enumerate_words():
    assert list(enumerate_words((1, 1))) == [(1, 2), (2, 1)]
    assert list(enumerate_words((2, 1))) == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    words = list(enumerate_words((1, 1, 1)))
    assert len(words) == 6
    assert words == sorted(words)


def test_c_word_examples():
    assert c_word((1, 1, 2, 2), 1, 2) == 4
    assert c_word((1, 2, 1, 2), 1, 2) == 2
    assert c_word((2, 1), 1, 2) == -1
    with pytest.raises(ValueError):
        c_word((1, 2), 1, 1)
    with pytest.raises(ValueError):
        c_word((1, 1), 1, 2)


def test_c_word_parity_and_reversal():
    for mvec in ((2, 2), (3, 1), (2, 1, 1)):
        letters = range(1, len(mvec) + 1)
        parities = {}
        for w in enumerate_words(mvec):
            for i, j in itertools.combinations(letters, 2):
                c = c_word(w, i, j)
                assert c % 2 == (mvec[i - 1] * mvec[j - 1]) % 2
                parities.setdefault((i, j), c % 2)
                assert c % 2 == parities[(i, j)]
                assert c_word(tuple(reversed(w)), i, j) == -c
                assert c_word(w, j, i) == -c


def test_dim_vector_and_pairing():
    w = (1, 2)
    e1 = dim_vector(w, 1)
    e2 = dim_vector(w, 2)
    assert e1 == (1, 1, 1)
    assert e2 == (0, 1, 1)
    assert c_Q(e1, e2) == 1
    assert c_Q((1, 1, 1), (0, 1, 1)) == 1
    assert c_Q(e1, e1) == 0
    with pytest.raises(ValueError):
        c_Q((1, 2), (1, 2, 3))


def test_c_Q_matches_c_word():
    for mvec in ((1, 1), (2, 1), (1, 2), (2, 2), (1, 1, 1), (2, 1, 1)):
        for w in enumerate_words(mvec):
            for i in range(1, len(mvec) + 1):
                for j in range(1, len(mvec) + 1):
                    if i == j:
                        continue
                    assert c_Q(dim_vector(w, i), dim_vector(w, j)) == c_word(w, i, j)


def test_restricted_word_sum_basics():
    two = quantum_int(2)
    assert restricted_word_sum("LT", (1, 1)) == two
    assert restricted_word_sum("GT", (1, 1)) == two
    assert restricted_word_sum("B", (1, 1)) == two
    # empty remainder slot: constraints touching the last letter give 0
    assert restricted_word_sum("B", (2, 0)).is_zero()
    assert restricted_word_sum("ALL", (2, 0)).is_zero()
    assert restricted_word_sum("GT", (2, 0)) == quantum_int(2)
    with pytest.raises(ValueError):
        restricted_word_sum("XX", (1, 1))
    with pytest.raises(ValueError):
        restricted_word_sum("LT", (0, 1))


def test_check_identity_examples():
    r = check_identity("QBINOM", m=1, n=1)
    assert r.verdict and r.lhs == quantum_int(2)
    r = check_identity("QBINOM", m=1, n=2)
    assert r.verdict and r.lhs == quantum_int(3)
    assert check_identity("QMULTINOM", mvec=(1, 1, 1)).verdict
    r = check_identity("MOCHIZUKI", mvec=(1,), N=2)
    assert r.verdict and r.lhs == quantum_int(2)
    assert check_identity("JOYCE_LT", mvec=(2, 1), N=6).verdict
    assert check_identity("JOYCE_B", mvec=(2, 1), N=6).verdict
    assert check_identity("JOYCE_B", mvec=(1,), N=3).verdict


def test_check_identity_records():
    rec = check_identity("QBINOM", m=2, n=2).to_json()
    assert set(rec) == {"prop", "args", "verdict", "lhs", "rhs"}
    assert rec["verdict"] is True


def test_check_identity_argument_errors():
    with pytest.raises(ValueError):
        check_identity("QBINOM", m=0, n=1)
    with pytest.raises(ValueError):
        check_identity("MOCHIZUKI", mvec=(2,), N=2)
    with pytest.raises(ValueError):
        check_identity("NOPE")
