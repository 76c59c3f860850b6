"""Property sweeps behind ``foursq selftest``."""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import arith, order
from .certificate import verify
from .descent import decompose_prime
from .euler import IDENTITY, compose, norm
from .foursquares import COUNT_MAX, ORACLE_MAX, count_representations, decompose, jacobi_r4, oracle_decompose


@dataclass
class CheckResult:
    name: str
    ok: bool
    count: int
    seconds: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        msg = f"{status}  {self.name}: {self.count} cases in {self.seconds:.2f}s"
        return msg + (f"  [{self.detail}]" if self.detail else "")


def _prime_chunk(primes: list[int]) -> list[str]:
    errors = []
    for p in primes:
        q, cert = decompose_prime(p)
        if norm(q) != p:
            errors.append(f"p={p}: norm {norm(q)}")
            continue
        report = verify(cert)
        if not report.valid:
            errors.append(f"p={p}: {report.failures[0]}")
    return errors


def _chunks(xs, k):
    size = max(1, -(-len(xs) // k))
    return [xs[i : i + size] for i in range(0, len(xs), size)]


def check_primes(max_n: int, jobs: int = 1) -> CheckResult:
    t = time.perf_counter()
    primes = arith.small_primes(max_n).tolist() if max_n >= 2 else []
    if jobs > 1 and len(primes) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            errors = [e for part in ex.map(_prime_chunk, _chunks(primes, 4 * jobs)) for e in part]
    else:
        errors = _prime_chunk(primes)
    return CheckResult("prime descent + certificate", not errors, len(primes), time.perf_counter() - t, "; ".join(errors[:3]))


def _nat_chunk(ns: list[int]) -> list[str]:
    errors = []
    for n in ns:
        q, _ = decompose(n)
        if norm(q) != n:
            errors.append(f"n={n}: decompose norm {norm(q)}")
        if n <= ORACLE_MAX and norm(oracle_decompose(n)) != n:
            errors.append(f"n={n}: oracle norm")
    return errors


def check_naturals(max_n: int, jobs: int = 1) -> CheckResult:
    t = time.perf_counter()
    ns = list(range(max_n + 1)) if max_n > 0 else []
    if jobs > 1 and len(ns) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            errors = [e for part in ex.map(_nat_chunk, _chunks(ns, 4 * jobs)) for e in part]
    else:
        errors = _nat_chunk(ns)
    return CheckResult("decompose vs oracle", not errors, len(ns), time.perf_counter() - t, "; ".join(errors[:3]))


def check_counts(max_n: int) -> CheckResult:
    t = time.perf_counter()
    top = min(max_n, 2000, COUNT_MAX)
    bad = [n for n in range(1, top + 1) if count_representations(n) != jacobi_r4(n)]
    return CheckResult("representation counts", not bad, max(top, 0), time.perf_counter() - t, f"n={bad[:5]}" if bad else "")


def check_euler(trials: int, seed: int = arith.DEFAULT_SEED) -> CheckResult:
    t = time.perf_counter()
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        a = [rng.randint(-(10**6), 10**6) for _ in range(4)]
        b = [rng.randint(-(10**6), 10**6) for _ in range(4)]
        if norm(compose(a, b)) != norm(a) * norm(b) or tuple(compose(IDENTITY, b)) != tuple(b):
            bad += 1
    return CheckResult("euler composition", bad == 0, trials, time.perf_counter() - t, f"{bad} failures" if bad else "")


def check_order(max_w: int) -> CheckResult:
    t = time.perf_counter()
    ws = range(1, max_w + 1)
    keys = {w: order.key(w) for w in ws}
    errors = []
    for w2 in ws:
        for w3 in ws:
            k2, k3 = keys[w2], keys[w3]
            k = order.multiply(w2, w3).key()
            if k.L != max(k2.L, k3.L):
                errors.append(f"L({w2}*{w3})")
            elif k2.L < k3.L and k.nu != k3.nu:
                errors.append(f"nu({w2}*{w3})")
            elif k2.L == k3.L and k.nu != k2.nu + k3.nu:
                errors.append(f"nu({w2}*{w3})")
    return CheckResult("order product law", not errors, len(ws) ** 2, time.perf_counter() - t, "; ".join(errors[:3]))


def run(max_n: int, jobs: int = 1) -> list[CheckResult]:
    return [
        check_primes(max_n, jobs),
        check_naturals(max_n, jobs),
        check_counts(max_n),
        check_euler(min(max_n, 10**5)),
        check_order(min(max_n, 300)),
    ]
