"""Exact integer and modular arithmetic.

Everything here works on Python ints, so products never wrap.  Public entry
points that accept user numbers enforce the ``MAX_INPUT`` cap instead.
"""
from __future__ import annotations

import math
import random
from functools import lru_cache

import numpy as np

MAX_INPUT = 2**62
DEFAULT_SEED = 0

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# Bases 2..37 are a deterministic witness set for n < 3.3e24.
_MR_BASES = _SMALL_PRIMES
_TRIAL_LIMIT = 1000


class RangeError(ValueError):
    """An input lies outside the supported range."""


class NotPrimeError(ValueError):
    """A prime was required but the argument is composite (or < 2)."""


def check_nat(n: int, name: str = "n") -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"{name} must be non-negative, got {n}")
    if n > MAX_INPUT:
        raise RangeError(f"{name} = {n} exceeds the supported maximum 2^62")
    return n


def make_rng(seed: int | random.Random | None = None) -> random.Random:
    """Accept a seed or an existing ``random.Random``; ``None`` means DEFAULT_SEED."""
    if isinstance(seed, random.Random):
        return seed
    return random.Random(DEFAULT_SEED if seed is None else seed)


def gcd_many(xs) -> int:
    xs = list(xs)
    if not xs:
        raise ValueError("gcd_many needs at least one value")
    return math.gcd(*xs)


def least_absolute_residue(x: int, m: int) -> int:
    """Representative of ``x mod m`` in the half-open interval (-m/2, m/2]."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    r = x % m
    if 2 * r > m:
        r -= m
    return r


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, rng: random.Random) -> int:
    """Return a non-trivial factor of the odd composite ``n`` (Brent's rho)."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # batch overshot; replay one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factor_int(n: int, rng: random.Random | None = None) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` as an ordered ``{prime: exponent}`` dict."""
    if n < 1:
        raise ValueError(f"factor_int needs n >= 1, got {n}")
    rng = rng or random.Random(DEFAULT_SEED)
    found: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        f = _brent(m, rng)
        stack += [f, m // f]
    return dict(sorted(found.items()))


def factorize(n: int, rng: random.Random | None = None):
    """Factor ``n`` into a :class:`foursq.order.Factorization`."""
    from .order import Factorization

    return Factorization.from_int(n, rng)


def legendre(a: int, p: int) -> int:
    """Euler's criterion: 1, -1 or 0 for odd prime ``p``."""
    t = pow(a, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def sqrt_mod(a: int, p: int, rng: random.Random | None = None) -> int:
    """Smaller square root of the quadratic residue ``a`` modulo odd prime ``p``.

    Tonelli-Shanks; ``rng`` draws the auxiliary non-residue.  The result does
    not depend on the draw because the smaller of the two roots is returned.
    """
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise ValueError(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        rng = rng or random.Random(DEFAULT_SEED)
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = rng.randrange(2, p)
        while legendre(z, p) != -1:
            z = rng.randrange(2, p)
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def sqrt_minus_one_minus_square(p: int, rng: random.Random | None = None) -> tuple[int, int]:
    """Find ``0 <= a, b < p`` with ``a^2 + b^2 + 1 == 0 (mod p)``.

    Scans a = 0, 1, 2, ... until -1 - a^2 is a quadratic residue, then takes
    its smaller square root.  The scan stops before (p+1)/2 because the
    squares and the values -1 - b^2 both have (p+1)/2 residues mod p.
    """
    if p % 2 == 0 or not is_prime(p):
        raise NotPrimeError(f"{p} is not an odd prime")
    rng = make_rng(rng)
    for a in range((p + 1) // 2):
        t = (-1 - a * a) % p
        if t == 0 or legendre(t, p) == 1:
            return a, sqrt_mod(t, p, rng)
    raise AssertionError(f"no witness found for p = {p}")  # pragma: no cover


# --- prime tables and prime counting ------------------------------------

_sieve_limit = 1
_sieve_primes = np.zeros(0, dtype=np.int64)
_SIEVE_CAP = 10**7
PRIME_PI_MAX = 10**12
_TRIAL_PRIMES: list[int] | None = None


def _sieve(limit: int) -> np.ndarray:
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if is_p[i]:
            is_p[i * i :: i] = False
    return np.flatnonzero(is_p)


def _trial_primes() -> list[int]:
    global _TRIAL_PRIMES
    if _TRIAL_PRIMES is None:
        _TRIAL_PRIMES = _sieve(_TRIAL_LIMIT).tolist()
    return _TRIAL_PRIMES


def small_primes(limit: int) -> np.ndarray:
    """All primes ``<= limit`` from a cached, growing sieve."""
    global _sieve_limit, _sieve_primes
    if limit > _sieve_limit:
        new = max(limit, 2 * _sieve_limit, 1 << 16)
        _sieve_primes = _sieve(new)
        _sieve_limit = new
    return _sieve_primes[: np.searchsorted(_sieve_primes, limit, side="right")]


def prime_pi(x: int) -> int:
    """Number of primes ``<= x``.

    Sieve lookup up to 10^7, above that the Lucy_Hedgehog recurrence
    vectorised over the ~2*sqrt(x) distinct values of ``x // k``.  Costs
    grow like x^(3/4), so ``x`` is capped at ``PRIME_PI_MAX``.
    """
    if x < 2:
        return 0
    if x <= _SIEVE_CAP:
        return len(small_primes(x))
    if x > PRIME_PI_MAX:
        raise RangeError(f"prime counting is limited to x <= 10^12, got {x}")
    return _lucy_pi(x)


def _lucy_pi(x: int) -> int:
    r = math.isqrt(x)
    vals = x // np.arange(1, r + 1, dtype=np.int64)  # vals[k-1] = x // k
    large = vals - 1  # large[k-1] = S(x // k)
    small = np.arange(-1, r, dtype=np.int64)  # small[v] = S(v)
    small[0] = 0
    for p in small_primes(r).tolist():
        sp = int(small[p - 1])
        p2 = p * p
        kmax = min(r, x // p2)  # k with x // k >= p^2
        split = min(kmax, r // p)  # k * p <= r: S(x // kp) is in large
        large[:split] -= large[p - 1 : split * p : p] - sp
        if kmax > split:
            large[split:kmax] -= small[vals[split:kmax] // p] - sp
        if p2 <= r:
            small[p2:] -= small[np.arange(p2, r + 1) // p] - sp
    return int(large[0])


@lru_cache(maxsize=4096)
def prime_index(q: int) -> int:
    """1-based index of the prime ``q`` in 2, 3, 5, 7, ..."""
    if not is_prime(q):
        raise NotPrimeError(f"{q} is not prime")
    return prime_pi(q)


def nth_prime(k: int) -> int:
    """The ``k``-th prime, 1-based."""
    if k < 1:
        raise ValueError(f"prime index must be >= 1, got {k}")
    limit = 1 << 16
    while True:
        ps = small_primes(min(limit, _SIEVE_CAP))
        if k <= len(ps):
            return int(ps[k - 1])
        if limit >= _SIEVE_CAP:
            break
        limit *= 4
    # upper bound p_k < k (ln k + ln ln k) for k >= 6, then bisect on prime_pi
    lo, hi = _SIEVE_CAP, int(k * (math.log(k) + math.log(math.log(k)))) + 1
    if prime_pi(min(hi, PRIME_PI_MAX)) < k:
        raise RangeError(f"prime index {k} is beyond the countable range")
    while lo < hi:
        mid = (lo + hi) // 2
        if prime_pi(mid) >= k:
            hi = mid
        else:
            lo = mid + 1
    return lo
