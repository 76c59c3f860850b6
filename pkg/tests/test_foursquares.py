import itertools
import math

import pytest

from foursq.arith import RangeError
from foursq.certificate import verify
from foursq.euler import compose, norm
from foursq.foursquares import (
    canonicalize,
    count_representations,
    decompose,
    jacobi_r4,
    oracle_decompose,
)


def brute_count(n):
    s = math.isqrt(n)
    rng = range(-s, s + 1)
    return sum(1 for q in itertools.product(rng, repeat=4) if norm(q) == n)


@pytest.mark.parametrize("n, expected", [(0, (0, 0, 0, 0)), (1, (1, 0, 0, 0))])
def test_decompose_trivial(n, expected):
    q, certs = decompose(n)
    assert q == expected and certs == []


def test_decompose_12():
    q, certs = decompose(12)
    assert norm(q) == 12
    assert compose((1, 1, 0, 0), (1, 1, 0, 0)) == (2, 0, 0, 0)
    assert [c.p for c in certs] == [2, 3]
    assert q == compose((2, 0, 0, 0), certs[1].result)


def test_decompose_sweep():
    for n in range(10**4 + 1):
        q, certs = decompose(n)
        assert norm(q) == n
        assert norm(canonicalize(oracle_decompose(n))) == n


def test_decompose_certificates_valid():
    for n in (360, 9991, 2**20 * 3**5, 600851475143):
        q, certs = decompose(n)
        assert norm(q) == n
        assert all(verify(c).valid for c in certs)


def test_decompose_range():
    q, _ = decompose(2**62)
    assert norm(q) == 2**62
    with pytest.raises(RangeError):
        decompose(2**62 + 1)


@pytest.mark.parametrize("n, expected", [(7, (2, 1, 1, 1)), (4, (2, 0, 0, 0)), (15, (3, 2, 1, 1)), (0, (0, 0, 0, 0))])
def test_oracle_examples(n, expected):
    assert oracle_decompose(n) == expected


def test_oracle_is_greatest_sorted_representation():
    for n in range(200):
        reps = {
            tuple(sorted(map(abs, q), reverse=True))
            for q in itertools.product(range(math.isqrt(n) + 1), repeat=4)
            if norm(q) == n
        }
        assert oracle_decompose(n) == max(reps)


def test_oracle_range():
    with pytest.raises(RangeError):
        oracle_decompose(10**6 + 1)


@pytest.mark.slow
def test_oracle_totality_extended():
    for n in range(10**6 + 1):
        assert norm(oracle_decompose(n)) == n


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 8), (2, 24)])
def test_count_examples(n, expected):
    assert count_representations(n) == expected


def test_count_matches_brute_force():
    for n in range(60):
        assert count_representations(n) == brute_count(n)


def test_count_range():
    assert count_representations(10**4) == jacobi_r4(10**4)
    with pytest.raises(RangeError):
        count_representations(10**4 + 1)


@pytest.mark.parametrize(
    "q, expected", [((-3, -2, 3, 1), (3, 3, 2, 1)), ((0, 0, 0, 0), (0, 0, 0, 0)), ((1, 2, -2, 0), (2, 2, 1, 0))]
)
def test_canonicalize(q, expected):
    assert canonicalize(q) == expected
    assert norm(canonicalize(q)) == norm(q)
