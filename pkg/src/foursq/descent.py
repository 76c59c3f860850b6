"""Order descent for a prime ``p``.

A reduced solution is ``(a1, a2, a3, a4; a5)`` with ``sum(ai^2) = p * a5``,
``gcd(a1, ..., a5) = 1`` and ``1 <= a5 < p``.  Each descent step composes the
current solution with a companion solution for the largest prime ``q`` of
``a5``, divides the composed quadruple by its gcd, and lands on a new reduced
solution whose ``a5`` has a strictly smaller order key.  The loop ends at
``a5 = 1``, where ``a1..a4`` is a four-square representation of ``p``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import arith
from .arith import NotPrimeError, gcd_many, least_absolute_residue
from .certificate import Certificate, DescentRecord
from .euler import Quadruple, compose, norm
from .order import Factorization

IDENTITY_PERM = (0, 1, 2, 3)


class DescentError(AssertionError):
    """An internal invariant of the descent failed (implementation bug)."""


@dataclass(frozen=True)
class ReducedSolution:
    p: int
    a: Quadruple
    a5: int

    def __post_init__(self):
        object.__setattr__(self, "a", Quadruple(*self.a))

    @property
    def five(self) -> tuple[int, int, int, int, int]:
        return (*self.a, self.a5)

    def problems(self) -> list[str]:
        out = []
        if norm(self.a) != self.p * self.a5:
            out.append(f"norm {norm(self.a)} != {self.p} * {self.a5}")
        if gcd_many(self.five) != 1:
            out.append(f"gcd of {self.five} is not 1")
        if not 1 <= self.a5 < self.p:
            out.append(f"a5 = {self.a5} not in [1, {self.p})")
        return out

    def check(self) -> ReducedSolution:
        bad = self.problems()
        if bad:
            raise DescentError(f"not a reduced solution for p={self.p}: " + "; ".join(bad))
        return self


def _require_prime(p: int) -> None:
    arith.check_nat(p, "p")
    if not arith.is_prime(p):
        raise NotPrimeError(f"{p} is not prime")


def reduced_solution_from_witness(p: int, x: int, y: int) -> ReducedSolution:
    """Reduced solution built from ``x^2 + y^2 + 1 == 0 (mod p)``."""
    q = [least_absolute_residue(v, p) for v in (x, y, 1, 0)]
    d = gcd_many(q)
    q = [v // d for v in q]
    n = norm(q)
    if n % p:
        raise ValueError(f"({x}, {y}) is not a witness for p = {p}")
    return ReducedSolution(p, Quadruple(*q), n // p).check()


def initial_reduced_solution(p: int, rng: random.Random | int | None = None) -> ReducedSolution:
    _require_prime(p)
    if p == 2:
        return ReducedSolution(2, Quadruple(1, 1, 0, 0), 1)
    x, y = arith.sqrt_minus_one_minus_square(p, arith.make_rng(rng))
    return reduced_solution_from_witness(p, x, y)


def parity_permutation(a) -> tuple[int, int, int, int]:
    """Reorder coordinates so positions 1,2 and 3,4 agree in parity."""
    odd = [i for i in range(4) if a[i] % 2]
    even = [i for i in range(4) if not a[i] % 2]
    if len(odd) % 2:
        raise DescentError(f"{tuple(a)} has odd norm")
    return tuple(odd + even)


def permute(a, perm) -> Quadruple:
    return Quadruple(*(a[i] for i in perm))


def choose_companion(sol: ReducedSolution, q: int) -> tuple[ReducedSolution, tuple[int, ...]]:
    """Reduced solution for the prime ``q | a5`` that pairs with ``sol``.

    Returns ``(companion, perm)``.  Composing ``permute(sol.a, perm)`` with
    the companion gives four components that are all divisible by ``q``.
    For odd ``q`` the companion is the least absolute residues of ``sol.a``
    modulo ``q`` (divided by their gcd) and ``perm`` is the identity.
    """
    if not arith.is_prime(q):
        raise NotPrimeError(f"{q} is not prime")
    if sol.a5 % q:
        raise ValueError(f"{q} does not divide a5 = {sol.a5}")
    if q == 2:
        return ReducedSolution(2, Quadruple(1, 1, 0, 0), 1), parity_permutation(sol.a)
    b = [least_absolute_residue(v, q) for v in sol.a]
    g = gcd_many(b)
    if g == 0:
        raise DescentError(f"companion of {sol.a} mod {q} vanishes; gcd of the solution is not 1")
    b = Quadruple(*(v // g for v in b))
    n = norm(b)
    if n % q:
        raise DescentError(f"norm of companion {b} not divisible by {q}")
    return ReducedSolution(q, b, n // q).check(), IDENTITY_PERM


def descent_step(
    sol: ReducedSolution, step_index: int = 0, rng: random.Random | None = None
) -> tuple[ReducedSolution, DescentRecord]:
    if sol.a5 == 1:
        raise ValueError("a5 = 1: nothing to descend")
    fa = Factorization.from_int(sol.a5, rng)
    q = fa.primes[-1]
    comp, perm = choose_companion(sol, q)
    b, b5 = comp.a, comp.a5
    c = compose(permute(sol.a, perm), b)

    def fail(msg):
        raise DescentError(f"step {step_index} (p={sol.p}, a={sol.five}, q={q}, c={tuple(c)}): {msg}")

    if any(ci % q for ci in c):
        fail("composed components not all divisible by q")
    d = gcd_many(c)
    m = q * sol.a5 * b5
    if d % q:
        fail(f"q does not divide d = {d}")
    if d % sol.p == 0:
        fail(f"p divides d = {d}")
    if m % (d * d):
        fail(f"d^2 = {d * d} does not divide q*a5*b5 = {m}")
    nxt = [ci // d for ci in c]
    n5 = m // (d * d)
    g = gcd_many([*nxt, n5])
    if g > 1:
        nxt = [v // g for v in nxt]
        n5 //= g * g
    new = ReducedSolution(sol.p, Quadruple(*nxt), n5)
    bad = new.problems()
    if bad:
        fail("; ".join(bad))
    key_before = fa.key()
    key_after = Factorization.from_int(n5, rng).key()
    if not key_after < key_before:
        fail(f"order key did not decrease: {key_before!r} -> {key_after!r}")
    record = DescentRecord(
        step_index=step_index,
        a=sol.five,
        p_prime=q,
        perm=perm,
        b=comp.five,
        c=c,
        d=d,
        a_next=new.five,
        key_before=key_before,
        key_after=key_after,
        residual_gcd_applied=g > 1,
    )
    return new, record


def decompose_prime(p: int, seed: int = arith.DEFAULT_SEED) -> tuple[Quadruple, Certificate]:
    """Four squares summing to the prime ``p``, with the certificate of the descent."""
    _require_prime(p)
    rng = random.Random(seed)
    sol = initial_reduced_solution(p, rng)
    initial = sol
    steps = []
    while sol.a5 > 1:
        sol, rec = descent_step(sol, len(steps), rng)
        steps.append(rec)
    if norm(sol.a) != p:
        raise DescentError(f"final quadruple {sol.a} does not have norm {p}")
    cert = Certificate(p=p, seed=seed, initial=(*initial.a, initial.a5), steps=steps, result=sol.a)
    return sol.a, cert
