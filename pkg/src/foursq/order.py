"""Leading-prime order on positive integers.

Every ``w >= 1`` is identified with its exponent vector over 2, 3, 5, ...
The key of ``w`` is ``(L, nu)``: the index of its largest prime factor and
that prime's exponent.  ``w1`` precedes ``w2`` when the key of ``w1`` is
lexicographically smaller.  Distinct numbers may share a key, so this is
only a strict partial order on the integers themselves.

``L(1) = nu(1) = 0``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache, total_ordering

from . import arith


@dataclass(frozen=True)
class PrimeInterval:
    """The first ``n`` primes, 2, 3, ..., p_n."""

    n: int
    primes: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.primes) != self.n:
            raise ValueError("primes must list exactly n entries")
        expected = _first_primes(self.n)
        if tuple(self.primes) != expected:
            raise ValueError("primes are not the first n primes")

    @classmethod
    def first(cls, n: int) -> PrimeInterval:
        return cls(n, _first_primes(n))

    def __contains__(self, q: int) -> bool:
        return self.n > 0 and q <= self.primes[-1] and q in self.primes


def _first_primes(n: int) -> tuple[int, ...]:
    if n == 0:
        return ()
    return tuple(arith.small_primes(arith.nth_prime(n)).tolist())


@total_ordering
class OrderKey:
    """The pair ``(L, nu)`` compared lexicographically.

    Keys built from a factorization remember the leading prime itself and
    compare on it, which orders identically to comparing indices; ``L`` is
    then only counted when somebody asks for it.  Keys read back from a
    serialized certificate carry ``L`` alone.
    """

    __slots__ = ("_L", "_prime", "nu")

    def __init__(self, L: int | None = None, nu: int = 0, *, prime: int | None = None):
        if L is None and prime is None:
            raise ValueError("OrderKey needs L or the leading prime")
        if prime == 1:
            L = 0
        if (L == 0) != (nu == 0) or nu < 0 or (L is not None and L < 0):
            raise ValueError(f"invalid order key L={L}, nu={nu}")
        self._L = L
        self._prime = prime
        self.nu = nu

    @property
    def L(self) -> int:
        if self._L is None:
            self._L = arith.prime_index(self._prime)
        return self._L

    @property
    def leading_prime(self) -> int:
        if self._prime is None:
            self._prime = 1 if self._L == 0 else arith.nth_prime(self._L)
        return self._prime

    def _cmp_pair(self, other: OrderKey):
        if self._prime is not None and other._prime is not None:
            return (self._prime, self.nu), (other._prime, other.nu)
        return (self.L, self.nu), (other.L, other.nu)

    def __eq__(self, other):
        if not isinstance(other, OrderKey):
            return NotImplemented
        a, b = self._cmp_pair(other)
        return a == b

    def __lt__(self, other):
        if not isinstance(other, OrderKey):
            return NotImplemented
        a, b = self._cmp_pair(other)
        return a < b

    __hash__ = None

    def astuple(self) -> tuple[int, int]:
        return self.L, self.nu

    def __repr__(self):
        if self._L is None:
            return f"OrderKey(prime={self._prime}, nu={self.nu})"
        return f"OrderKey(L={self._L}, nu={self.nu})"

    def __str__(self):
        return f"({self.L},{self.nu})"


@dataclass(frozen=True)
class Factorization:
    """Sparse exponent vector of a positive integer.

    ``factors`` holds ``(prime, exponent)`` pairs with increasing primes and
    positive exponents; absent primes have exponent zero.
    """

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        last = 1
        for q, e in self.factors:
            if q <= last or e <= 0:
                raise ValueError(f"malformed factorization {self.factors}")
            last = q

    @classmethod
    def from_int(cls, n: int, rng: random.Random | None = None) -> Factorization:
        if rng is None:
            return _factorization_cached(n)
        return cls(tuple(arith.factor_int(n, rng).items()))

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> Factorization:
        return cls(tuple(sorted((q, e) for q, e in d.items() if e)))

    @property
    def value(self) -> int:
        out = 1
        for q, e in self.factors:
            out *= q**e
        return out

    @property
    def entries(self) -> list[tuple[int, int]]:
        """``(prime_index, exponent)`` pairs, 1-based indices."""
        return [(arith.prime_index(q), e) for q, e in self.factors]

    @property
    def primes(self) -> list[int]:
        return [q for q, _ in self.factors]

    def exponent(self, q: int) -> int:
        return dict(self.factors).get(q, 0)

    def key(self) -> OrderKey:
        if not self.factors:
            return OrderKey(0, 0, prime=1)
        q, e = self.factors[-1]
        return OrderKey(nu=e, prime=q)

    def __mul__(self, other: Factorization) -> Factorization:
        return multiply(self, other)

    def __int__(self):
        return self.value


@lru_cache(maxsize=1 << 16)
def _factorization_cached(n: int) -> Factorization:
    return Factorization(tuple(arith.factor_int(n).items()))


def _as_factorization(w) -> Factorization:
    return w if isinstance(w, Factorization) else Factorization.from_int(w)


def leading_index(w) -> int:
    """Index of the largest prime dividing ``w``; 0 for ``w = 1``."""
    return _as_factorization(w).key().L


def leading_exponent(w) -> int:
    """Exponent of the leading prime of ``w``; 0 for ``w = 1``."""
    return _as_factorization(w).key().nu


def key(w) -> OrderKey:
    return _as_factorization(w).key()


def precedes(w1, w2) -> bool:
    return key(w1) < key(w2)


def multiply(w2, w3) -> Factorization:
    d = dict(_as_factorization(w2).factors)
    for q, e in _as_factorization(w3).factors:
        d[q] = d.get(q, 0) + e
    return Factorization.from_dict(d)
