"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 range exceeded, 4 argument not prime.
"""
from __future__ import annotations

import argparse
import csv
import json
import re
import sys
import time

from . import arith, selftest
from .arith import DEFAULT_SEED, NotPrimeError, RangeError
from .certificate import CertificateFormatError, dump_many, load_many, verify
from .descent import decompose_prime
from .euler import norm
from .foursquares import canonicalize, decompose

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_RANGE, EXIT_NOT_PRIME = 0, 1, 2, 3, 4

_NAT = re.compile(r"[0-9]+\Z")


class _Usage(Exception):
    pass


def _parse_nat(text: str) -> int:
    if not _NAT.match(text):
        raise _Usage(f"expected a non-negative decimal integer, got {text!r}")
    return arith.check_nat(int(text))


def _fmt_square(x: int) -> str:
    return f"({x})^2" if x < 0 else f"{x}^2"


def format_sum(n: int, q) -> str:
    return f"{n} = " + " + ".join(_fmt_square(x) for x in q)


def _emit(args, n, q, certs, trace=None):
    if args.canonical:
        q = canonicalize(q)
    if args.cert:
        text = dump_many(certs)
        with open(args.cert, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.json:
        out = {"n": str(n), "squares": [str(x) for x in q], "seed": str(args.seed), "canonical": args.canonical}
        if trace is not None:
            out["trace"] = trace
        print(json.dumps(out))
        return
    print(format_sum(n, q))
    for t in trace or []:
        print(
            f"step {t['step']}: p' = {t['p_prime']}, a5: {t['a5']} -> {t['a5_next']}, "
            f"key ({t['key_before'][0]},{t['key_before'][1]}) -> ({t['key_after'][0]},{t['key_after'][1]})"
        )
    print(f"seed = {args.seed}")


def cmd_decompose(args) -> int:
    n = _parse_nat(args.n)
    q, certs = decompose(n, args.seed)
    _emit(args, n, q, certs)
    return EXIT_OK


def cmd_prime(args) -> int:
    p = _parse_nat(args.p)
    if not arith.is_prime(p):
        print(f"error: {p} is not prime", file=sys.stderr)
        return EXIT_NOT_PRIME
    q, cert = decompose_prime(p, args.seed)
    trace = None
    if args.trace:
        trace = [
            {
                "step": s.step_index,
                "p_prime": s.p_prime,
                "a5": s.a[4],
                "a5_next": s.a_next[4],
                "key_before": list(s.key_before.astuple()),
                "key_after": list(s.key_after.astuple()),
            }
            for s in cert.steps
        ]
    _emit(args, p, q, [cert], trace)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            certs = load_many(fh.read())
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read {args.path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificateFormatError as exc:
        print(f"error: malformed certificate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    status = EXIT_OK
    for i, cert in enumerate(certs):
        report = verify(cert)
        prefix = f"[{i}] p={cert.p}: " if len(certs) > 1 else ""
        print(prefix + str(report))
        if not report.valid:
            status = EXIT_INVALID
    return status


def cmd_selftest(args) -> int:
    if args.max < 0:
        raise _Usage("--max must be non-negative")
    results = selftest.run(args.max, args.jobs)
    for r in results:
        print(r.line())
    if args.max == 0:
        print("vacuous run: --max 0")
    ok = all(r.ok for r in results)
    print("ALL PASS" if ok else "FAILURES")
    return EXIT_OK if ok else EXIT_INVALID


def _parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"([0-9]+)\.\.([0-9]+)", text)
    if not m:
        raise _Usage(f"--range must look like A..B, got {text!r}")
    a, b = arith.check_nat(int(m[1]), "A"), arith.check_nat(int(m[2]), "B")
    if a > b:
        raise _Usage(f"empty range {text}")
    return a, b


def bench_rows(lo: int, hi: int, seed: int = DEFAULT_SEED):
    p = lo
    while p <= hi:
        if arith.is_prime(p):
            t = time.perf_counter_ns()
            q, cert = decompose_prime(p, seed)
            dt = time.perf_counter_ns() - t
            assert norm(q) == p
            yield p, len(cert.steps), max(cert.chain), dt
        p += 1


def cmd_bench(args) -> int:
    lo, hi = _parse_range(args.range)
    out = open(args.csv, "w", newline="", encoding="utf-8") if args.csv else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["p", "chain_length", "max_a5", "wall_time_ns"])
        for row in bench_rows(lo, hi, args.seed):
            w.writerow(row)
    finally:
        if args.csv:
            out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="foursq", description="Four-square decomposition by order descent.")
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(sp):
        sp.add_argument("--canonical", action="store_true", help="print sorted non-negative squares")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED})")
        sp.add_argument("--cert", metavar="PATH", help="write certificate JSON to PATH")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("decompose", help="write n as a sum of four squares")
    sp.add_argument("n")
    output_flags(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("prime", help="decompose a prime by descent")
    sp.add_argument("p")
    output_flags(sp)
    sp.add_argument("--trace", action="store_true", help="print each descent step")
    sp.set_defaults(func=cmd_prime)

    sp = sub.add_parser("verify", help="check a certificate file")
    sp.add_argument("path")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("selftest", help="run the property sweeps up to --max")
    sp.add_argument("--max", type=int, default=10_000)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_selftest)

    sp = sub.add_parser("bench", help="time the descent for every prime in a range, CSV output")
    sp.add_argument("--range", required=True, metavar="A..B")
    sp.add_argument("--csv", metavar="PATH")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except NotPrimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_PRIME


if __name__ == "__main__":
    sys.exit(main())
