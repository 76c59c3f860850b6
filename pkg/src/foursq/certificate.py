"""Descent certificates: data model, independent verifier, JSON round trip.

The verifier recomputes everything from the stored integers using only the
arithmetic, order and composition primitives.  It never calls the descent
engine, so a bug there cannot vouch for itself.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from . import arith
from .euler import Quadruple, compose, norm
from .order import Factorization, OrderKey

FORMAT_VERSION = 1


class CertificateFormatError(ValueError):
    """The certificate text or object is structurally malformed."""


@dataclass
class DescentRecord:
    step_index: int
    a: tuple  # (a1, a2, a3, a4, a5) before the step
    p_prime: int
    perm: tuple
    b: tuple  # companion (b1, b2, b3, b4, b5) for p_prime
    c: tuple
    d: int
    a_next: tuple
    key_before: OrderKey
    key_after: OrderKey
    residual_gcd_applied: bool = False


@dataclass
class Certificate:
    p: int
    seed: int
    initial: tuple  # (a1, a2, a3, a4, a5)
    steps: list[DescentRecord] = field(default_factory=list)
    result: tuple = (0, 0, 0, 0)

    @property
    def chain(self) -> list[int]:
        """The a5 values visited, ending in 1."""
        return [self.initial[4]] + [s.a_next[4] for s in self.steps]


@dataclass(frozen=True)
class Failure:
    step: int | None
    check: str
    detail: str

    def __str__(self):
        where = "certificate" if self.step is None else f"step {self.step}"
        return f"{where}: {self.check}: {self.detail}"


@dataclass
class VerificationReport:
    failures: list[Failure] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.failures

    def checks_failed(self, step: int | None = None) -> set[str]:
        return {f.check for f in self.failures if step is None or f.step == step}

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.valid:
            return "VALID"
        return "\n".join(["INVALID"] + [f"  {f}" for f in self.failures])


# --- verification ---------------------------------------------------------


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _check_shape(cert: Certificate) -> None:
    def ints(name, xs, n):
        if not isinstance(xs, (tuple, list)) or len(xs) != n or not all(_is_int(x) for x in xs):
            raise CertificateFormatError(f"{name}: expected {n} integers, got {xs!r}")

    if not isinstance(cert, Certificate):
        raise CertificateFormatError(f"expected a Certificate, got {type(cert).__name__}")
    for name in ("p", "seed"):
        if not _is_int(getattr(cert, name)):
            raise CertificateFormatError(f"{name}: expected integer")
    ints("initial", cert.initial, 5)
    ints("result", cert.result, 4)
    for i, s in enumerate(cert.steps):
        ints(f"steps[{i}].a", s.a, 5)
        ints(f"steps[{i}].perm", s.perm, 4)
        ints(f"steps[{i}].b", s.b, 5)
        ints(f"steps[{i}].c", s.c, 4)
        ints(f"steps[{i}].a_next", s.a_next, 5)
        for name in ("p_prime", "d"):
            if not _is_int(getattr(s, name)):
                raise CertificateFormatError(f"steps[{i}].{name}: expected integer")
        for name in ("key_before", "key_after"):
            if not isinstance(getattr(s, name), OrderKey):
                raise CertificateFormatError(f"steps[{i}].{name}: expected OrderKey")


def _key_of(n: int) -> OrderKey:
    return Factorization.from_int(n).key()


def verify(cert: Certificate) -> VerificationReport:
    """Re-derive every identity recorded in ``cert``.

    Raises :class:`CertificateFormatError` for structural problems; a
    mathematically wrong certificate yields a report with failures instead.
    """
    _check_shape(cert)
    report = VerificationReport()

    def bad(step, check, detail):
        report.failures.append(Failure(step, check, detail))

    p = cert.p
    if not arith.is_prime(p):
        bad(None, "p", f"{p} is not prime")
        return report
    a1, a2, a3, a4, a5 = cert.initial
    if norm((a1, a2, a3, a4)) != p * a5:
        bad(None, "initial", f"sum of squares {norm((a1, a2, a3, a4))} != p * a5 = {p * a5}")
    if arith.gcd_many(cert.initial) != 1:
        bad(None, "initial", f"gcd of {tuple(cert.initial)} is not 1")
    if not 1 <= a5 < p:
        bad(None, "initial", f"a5 = {a5} outside [1, p)")

    current = tuple(cert.initial)
    for i, s in enumerate(cert.steps):
        try:
            _verify_step(p, i, s, current, bad)
        except Exception as exc:  # malformed values must not crash the verifier
            bad(i, "exception", f"{type(exc).__name__}: {exc}")
        if s.step_index != i:
            bad(i, "step_index", f"recorded index {s.step_index}")
        current = tuple(s.a_next)

    if current[4] != 1:
        bad(None, "final", f"chain ends at a5 = {current[4]}, not 1")
    if tuple(cert.result) != current[:4]:
        bad(None, "final", f"result {tuple(cert.result)} differs from the last quadruple {current[:4]}")
    if norm(cert.result) != p:
        bad(None, "final", f"norm of result {norm(cert.result)} != p = {p}")
    return report


def _verify_step(p, i, s: DescentRecord, current, bad) -> None:
    a = tuple(s.a)
    a4, a5 = a[:4], a[4]
    q = s.p_prime
    if a != current:
        bad(i, "chain", f"incoming tuple {a} does not continue from {current}")
    if norm(a4) != p * a5:
        bad(i, "norm_a", f"sum of squares {norm(a4)} != p * a5 = {p * a5}")
    if a5 < 1:
        bad(i, "reduced", f"a5 = {a5} < 1")
        return
    fa = Factorization.from_int(a5)
    if a5 >= p or any(r >= p for r in fa.primes):
        bad(i, "reduced", f"a5 = {a5} has a prime factor not below p")
    if not fa.primes or q != fa.primes[-1]:
        bad(i, "p_prime", f"{q} is not the largest prime factor of a5 = {a5}")
    if q < 2 or not arith.is_prime(q):
        bad(i, "p_prime", f"{q} is not prime")
        return

    perm = tuple(s.perm)
    if sorted(perm) != [0, 1, 2, 3]:
        bad(i, "perm", f"{perm} is not a permutation of 0..3")
        return
    if q != 2 and perm != (0, 1, 2, 3):
        bad(i, "perm", f"non-identity permutation {perm} for odd p'")

    b = tuple(s.b)
    b4, b5 = b[:4], b[4]
    if norm(b4) != q * b5:
        bad(i, "companion", f"sum of squares {norm(b4)} != p' * b5 = {q * b5}")
    if arith.gcd_many(b) != 1:
        bad(i, "companion", f"gcd of {b} is not 1")
    if not 1 <= b5 < q:
        bad(i, "companion", f"b5 = {b5} outside [1, p')")

    ap = tuple(a4[j] for j in perm)
    recomposed = compose(ap, b4)
    if any(x % q for x in recomposed):
        bad(i, "congruence", f"composition {tuple(recomposed)} not divisible by p' = {q}")
    c = tuple(s.c)
    if c != tuple(recomposed):
        bad(i, "euler", f"stored c {c} != composition {tuple(recomposed)}")
    m = q * a5 * b5
    if norm(c) != p * m:
        bad(i, "norm_c", f"sum of squares of c {norm(c)} != p * p' * a5 * b5 = {p * m}")

    d = s.d
    if d != arith.gcd_many(c):
        bad(i, "d", f"d = {d} is not gcd(c) = {arith.gcd_many(c)}")
    if d <= 0:
        bad(i, "d", f"d = {d} is not positive")
        return
    if d % q:
        bad(i, "d", f"p' = {q} does not divide d = {d}")
    if d % p == 0:
        bad(i, "d", f"p divides d = {d}")
    if m % (d * d):
        bad(i, "d", f"d^2 does not divide p' * a5 * b5 = {m}")
        return

    expect = [x // d for x in c] + [m // (d * d)]
    g = arith.gcd_many(expect)
    if g > 1:
        expect = [x // g for x in expect[:4]] + [expect[4] // (g * g)]
    an = tuple(s.a_next)
    if an != tuple(expect):
        bad(i, "reduction", f"a_next {an} != reduction {tuple(expect)}")
    if s.residual_gcd_applied != (g > 1):
        bad(i, "reduction", f"residual_gcd_applied = {s.residual_gcd_applied} but residual gcd is {g}")
    if norm(an[:4]) != p * an[4]:
        bad(i, "reduction", f"sum of squares {norm(an[:4])} != p * a5' = {p * an[4]}")
    if arith.gcd_many(an) != 1:
        bad(i, "reduction", f"gcd of {an} is not 1")
    if an[4] < 1:
        bad(i, "reduction", f"a5' = {an[4]} < 1")
        return

    kb, ka = _key_of(a5), _key_of(an[4])
    if s.key_before != kb:
        bad(i, "key", f"key_before {s.key_before} != key of a5 {kb}")
    if s.key_after != ka:
        bad(i, "key", f"key_after {s.key_after} != key of a5' {ka}")
    if not ka < kb:
        bad(i, "key", f"order key does not decrease: {kb} -> {ka}")


# --- JSON -----------------------------------------------------------------

_DEC = re.compile(r"-?(0|[1-9][0-9]*)\Z")


def _enc(n: int) -> str:
    return str(int(n))


def _key_to_json(k: OrderKey) -> dict:
    return {"L": k.L, "nu": k.nu}


def to_dict(cert: Certificate) -> dict:
    return {
        "version": FORMAT_VERSION,
        "p": _enc(cert.p),
        "seed": _enc(cert.seed),
        "initial": {"a": [_enc(x) for x in cert.initial[:4]], "a5": _enc(cert.initial[4])},
        "steps": [
            {
                "a": [_enc(x) for x in s.a],
                "p_prime": _enc(s.p_prime),
                "perm": [int(j) for j in s.perm],
                "b": [_enc(x) for x in s.b],
                "c": [_enc(x) for x in s.c],
                "d": _enc(s.d),
                "a_next": [_enc(x) for x in s.a_next],
                "key_before": _key_to_json(s.key_before),
                "key_after": _key_to_json(s.key_after),
                "residual_gcd_applied": bool(s.residual_gcd_applied),
            }
            for s in cert.steps
        ],
        "result": [_enc(x) for x in cert.result],
    }


def serialize(cert: Certificate, indent: int | None = 2) -> str:
    return json.dumps(to_dict(cert), indent=indent)


class _Reader:
    """Strict field access with path-qualified error messages."""

    def __init__(self, obj, path=""):
        self.obj = obj
        self.path = path

    def _sub(self, key):
        return f"{self.path}.{key}" if self.path else str(key)

    def fields(self, *names):
        if not isinstance(self.obj, dict):
            raise CertificateFormatError(f"{self.path or '<root>'}: expected an object")
        missing = [n for n in names if n not in self.obj]
        if missing:
            raise CertificateFormatError(
                f"{self.path or '<root>'}: missing required fields: {', '.join(missing)}"
            )
        extra = sorted(set(self.obj) - set(names))
        if extra:
            raise CertificateFormatError(f"{self.path or '<root>'}: unknown fields: {', '.join(extra)}")
        return self

    def get(self, name):
        return _Reader(self.obj[name], self._sub(name))

    def dec(self) -> int:
        if not isinstance(self.obj, str) or not _DEC.match(self.obj):
            raise CertificateFormatError(f"{self.path}: expected a decimal string, got {self.obj!r}")
        return int(self.obj)

    def int_(self) -> int:
        if not _is_int(self.obj):
            raise CertificateFormatError(f"{self.path}: expected an integer, got {self.obj!r}")
        return self.obj

    def bool_(self) -> bool:
        if not isinstance(self.obj, bool):
            raise CertificateFormatError(f"{self.path}: expected a boolean, got {self.obj!r}")
        return self.obj

    def decs(self, n: int) -> tuple[int, ...]:
        return tuple(r.dec() for r in self.items(n))

    def items(self, n: int | None = None) -> list[_Reader]:
        if not isinstance(self.obj, list):
            raise CertificateFormatError(f"{self.path}: expected an array")
        if n is not None and len(self.obj) != n:
            raise CertificateFormatError(f"{self.path}: expected {n} entries, got {len(self.obj)}")
        return [_Reader(x, f"{self.path}[{i}]") for i, x in enumerate(self.obj)]


def _read_key(r: _Reader) -> OrderKey:
    r.fields("L", "nu")
    L, nu = r.get("L").int_(), r.get("nu").int_()
    try:
        return OrderKey(L, nu)
    except ValueError as exc:
        raise CertificateFormatError(f"{r.path}: {exc}") from None


def from_dict(obj) -> Certificate:
    r = _Reader(obj).fields("version", "p", "seed", "initial", "steps", "result")
    if r.get("version").int_() != FORMAT_VERSION:
        raise CertificateFormatError(f"version: unsupported {r.obj['version']!r}")
    ini = r.get("initial").fields("a", "a5")
    steps = []
    for i, sr in enumerate(r.get("steps").items()):
        sr.fields(
            "a", "p_prime", "perm", "b", "c", "d", "a_next", "key_before", "key_after", "residual_gcd_applied"
        )
        steps.append(
            DescentRecord(
                step_index=i,
                a=sr.get("a").decs(5),
                p_prime=sr.get("p_prime").dec(),
                perm=tuple(x.int_() for x in sr.get("perm").items(4)),
                b=sr.get("b").decs(5),
                c=Quadruple(*sr.get("c").decs(4)),
                d=sr.get("d").dec(),
                a_next=sr.get("a_next").decs(5),
                key_before=_read_key(sr.get("key_before")),
                key_after=_read_key(sr.get("key_after")),
                residual_gcd_applied=sr.get("residual_gcd_applied").bool_(),
            )
        )
    return Certificate(
        p=r.get("p").dec(),
        seed=r.get("seed").dec(),
        initial=(*ini.get("a").decs(4), ini.get("a5").dec()),
        steps=steps,
        result=Quadruple(*r.get("result").decs(4)),
    )


def deserialize(text: str) -> Certificate:
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise CertificateFormatError(f"not valid JSON: {exc}") from None
    return from_dict(obj)


def load_many(text: str) -> list[Certificate]:
    """Parse one certificate object or a JSON array of them."""
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise CertificateFormatError(f"not valid JSON: {exc}") from None
    if isinstance(obj, list):
        out = []
        for i, o in enumerate(obj):
            try:
                out.append(from_dict(o))
            except CertificateFormatError as exc:
                raise CertificateFormatError(f"[{i}] {exc}") from None
        return out
    return [from_dict(obj)]


def dump_many(certs: list[Certificate]) -> str:
    if len(certs) == 1:
        return serialize(certs[0])
    return json.dumps([to_dict(c) for c in certs], indent=2)
