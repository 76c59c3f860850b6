import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from foursq.order import (
    Factorization,
    OrderKey,
    PrimeInterval,
    key,
    leading_exponent,
    leading_index,
    multiply,
    precedes,
)

from .test_arith import FLAGS

PRIMES = [q for q in range(2, 10**4 + 1) if FLAGS[q]]


def naive_key(w):
    """(index of largest prime factor, its exponent) by trial division."""
    if w == 1:
        return 0, 0
    largest, exp = 0, 0
    for i, q in enumerate(PRIMES, start=1):
        if w % q == 0:
            e = 0
            while w % q == 0:
                w //= q
                e += 1
            largest, exp = i, e
        if w == 1:
            break
    return largest, exp


@pytest.mark.parametrize("w, L, nu", [(12, 2, 1), (32, 1, 5), (9, 2, 2), (1, 0, 0)])
def test_leading_examples(w, L, nu):
    assert leading_index(w) == L
    assert leading_exponent(w) == nu


def test_precedes_examples():
    assert precedes(6, 9)
    assert precedes(1024, 3)
    assert not precedes(6, 12)
    assert not precedes(12, 6)


def test_multiply_examples():
    m = multiply(4, 3)
    assert m.value == 12 and key(m).astuple() == (2, 1)
    m = multiply(3, 3)
    assert m.value == 9 and key(m).astuple() == (2, 2)
    w = Factorization.from_int(360)
    assert multiply(1, w) == w


def test_keys_match_inspection():
    for w in range(1, 10**4 + 1):
        assert key(w).astuple() == naive_key(w)


def test_factorization_invariants():
    f = Factorization.from_int(720)
    assert f.factors == ((2, 4), (3, 2), (5, 1))
    assert f.entries == [(1, 4), (2, 2), (3, 1)]
    assert f.value == 720
    assert Factorization.from_int(1).factors == ()
    with pytest.raises(ValueError):
        Factorization(((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        Factorization(((2, 0),))


def test_order_key_zero_rule():
    assert OrderKey(0, 0).astuple() == (0, 0)
    with pytest.raises(ValueError):
        OrderKey(0, 1)
    with pytest.raises(ValueError):
        OrderKey(3, 0)


def test_order_key_mixed_comparison():
    lazy = OrderKey(nu=2, prime=7)
    explicit = OrderKey(4, 2)
    assert lazy == explicit
    assert OrderKey(3, 5) < lazy
    assert explicit.leading_prime == 7
    assert lazy.L == 4


def test_prime_interval():
    iv = PrimeInterval.first(25)
    assert iv.primes == tuple(PRIMES[:25])
    assert iv.primes[0] == 2
    assert 97 in iv and 101 not in iv
    with pytest.raises(ValueError):
        PrimeInterval(3, (2, 3, 7))


def test_product_law_exhaustive():
    ws = range(1, 301)
    keys = {w: naive_key(w) for w in ws}
    for w2 in ws:
        for w3 in ws:
            (L2, n2), (L3, n3) = keys[w2], keys[w3]
            k = key(multiply(w2, w3))
            assert k.L == max(L2, L3)
            if L2 < L3:
                assert k.nu == n3
            elif L2 == L3:
                assert k.nu == n2 + n3
            assert multiply(w2, w3).value == w2 * w3


def test_strict_partial_order_exhaustive():
    n = 300
    P = np.zeros((n + 1, n + 1), dtype=np.int64)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            P[i, j] = precedes(i, j)
    assert not P.diagonal().any()
    # transitivity: any two-step path must be a direct relation
    two_step = (P @ P) > 0
    assert not (two_step & (P == 0)).any()
    # and it is exactly lexicographic comparison of keys
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            assert P[i, j] == (naive_key(i) < naive_key(j))


@given(st.integers(1, 10**9), st.integers(1, 10**9))
def test_precedes_is_key_comparison(w1, w2):
    assert precedes(w1, w2) == (key(w1) < key(w2))
    assert not (precedes(w1, w2) and precedes(w2, w1))
