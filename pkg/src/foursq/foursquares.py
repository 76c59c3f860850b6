"""Four squares for any natural number, plus brute-force oracles."""
from __future__ import annotations

import math
import random

import numpy as np

from . import arith
from .certificate import Certificate
from .descent import decompose_prime
from .euler import IDENTITY, Quadruple, compose

ORACLE_MAX = 10**6
COUNT_MAX = 10**4


def decompose(n: int, seed: int = arith.DEFAULT_SEED) -> tuple[Quadruple, list[Certificate]]:
    """Quadruple with sum of squares ``n`` and one certificate per distinct prime.

    Each prime is decomposed by descent once; the quadruples are folded with
    ``compose`` in increasing prime order, once per unit of exponent.
    """
    arith.check_nat(n)
    if n == 0:
        return Quadruple(0, 0, 0, 0), []
    acc = IDENTITY
    certs = []
    for q, e in arith.factor_int(n, random.Random(seed)).items():
        quad, cert = decompose_prime(q, seed)
        certs.append(cert)
        for _ in range(e):
            acc = compose(acc, quad)
    return acc, certs


def canonicalize(q) -> Quadruple:
    return Quadruple(*sorted((abs(x) for x in q), reverse=True))


def oracle_decompose(n: int) -> Quadruple:
    """Greedy exhaustive search: largest ``x1`` first, then ``x2`` ...

    Returns ``x1 >= x2 >= x3 >= x4 >= 0``; the first hit is the
    lexicographically greatest sorted representation.
    """
    if not 0 <= n <= ORACLE_MAX:
        raise arith.RangeError(f"oracle handles 0 <= n <= {ORACLE_MAX}, got {n}")
    isqrt = math.isqrt
    for x1 in range(isqrt(n), -1, -1):
        if 4 * x1 * x1 < n:
            break
        r1 = n - x1 * x1
        for x2 in range(min(x1, isqrt(r1)), -1, -1):
            r2 = r1 - x2 * x2
            if 3 * x2 * x2 < r2:
                break
            for x3 in range(min(x2, isqrt(r2)), -1, -1):
                r3 = r2 - x3 * x3
                if 2 * x3 * x3 < r3:
                    break
                x4 = isqrt(r3)
                if x4 * x4 == r3 and x4 <= x3:
                    return Quadruple(x1, x2, x3, x4)
    raise AssertionError(f"no four-square representation found for {n}")


_r2_cache = np.zeros(0, dtype=np.int64)


def _r2_table(n: int) -> np.ndarray:
    """``r2[k]`` = number of ordered signed pairs with ``x^2 + y^2 = k``, k <= n."""
    global _r2_cache
    if len(_r2_cache) <= n:
        size = max(n + 1, 2 * len(_r2_cache))
        s = math.isqrt(size - 1)
        xs = np.arange(-s, s + 1, dtype=np.int64) ** 2
        sums = (xs[:, None] + xs[None, :]).ravel()
        _r2_cache = np.bincount(sums[sums < size], minlength=size)
    return _r2_cache[: n + 1]


def count_representations(n: int) -> int:
    """Number of ordered signed quadruples with sum of squares ``n``.

    Enumerates pairs for ``x1^2 + x2^2`` and ``x3^2 + x4^2`` and convolves.
    """
    if not 0 <= n <= COUNT_MAX:
        raise arith.RangeError(f"count_representations handles 0 <= n <= {COUNT_MAX}, got {n}")
    r2 = _r2_table(n)
    return int(np.dot(r2, r2[::-1]))


def jacobi_r4(n: int) -> int:
    """``8 * sum of divisors d of n with 4 not dividing d`` (n >= 1)."""
    return 8 * sum(d for d in range(1, n + 1) if n % d == 0 and d % 4)
