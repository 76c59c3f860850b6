import copy
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foursq.arith import is_prime
from foursq.certificate import (
    Certificate,
    CertificateFormatError,
    deserialize,
    load_many,
    serialize,
    to_dict,
    verify,
)
from foursq.descent import decompose_prime
from foursq.order import OrderKey

INT_FIELDS_STEP = ("a", "p_prime", "perm", "b", "c", "d", "a_next", "key_before", "key_after")


@pytest.fixture(scope="module")
def cert23():
    return decompose_prime(23)[1]


def test_valid_23(cert23):
    assert verify(cert23).valid
    assert str(verify(cert23)) == "VALID"


def test_perturbed_c_flags_norm_check(cert23):
    bad = copy.deepcopy(cert23)
    s = bad.steps[0]
    s.c = (s.c[0], s.c[1] + 1, s.c[2], s.c[3])
    report = verify(bad)
    assert not report.valid
    assert "norm_c" in report.checks_failed(step=0)
    assert "step 0" in str(report)


def test_empty_chain_p2():
    cert = Certificate(p=2, seed=0, initial=(1, 1, 0, 0, 1), steps=[], result=(1, 1, 0, 0))
    assert verify(cert).valid


def test_wrong_result_rejected(cert23):
    bad = copy.deepcopy(cert23)
    bad.result = (3, 3, 2, 1)
    assert "final" in verify(bad).checks_failed()


def test_wrong_key_rejected(cert23):
    bad = copy.deepcopy(cert23)
    bad.steps[0].key_before = OrderKey(1, 1)
    assert "key" in verify(bad).checks_failed(step=0)


def test_wrong_permutation_rejected():
    cert = decompose_prime(7)[1]
    bad = copy.deepcopy(cert)
    bad.steps[0].perm = (0, 1, 2, 3)
    assert not verify(bad).valid


def test_verify_shape_errors(cert23):
    bad = copy.deepcopy(cert23)
    bad.steps[0].a = (1, 2, 3)
    with pytest.raises(CertificateFormatError):
        verify(bad)
    with pytest.raises(CertificateFormatError):
        verify({"p": 23})


def test_composite_p_rejected(cert23):
    bad = copy.deepcopy(cert23)
    bad.p = 25
    assert "p" in verify(bad).checks_failed()


def test_round_trip(cert23):
    text = serialize(cert23)
    back = deserialize(text)
    assert back == cert23
    assert serialize(back) == text
    assert verify(back).valid


def test_schema_shape(cert23):
    d = json.loads(serialize(cert23))
    assert d["version"] == 1
    assert d["p"] == "23"
    assert set(d) == {"version", "p", "seed", "initial", "steps", "result"}
    step = d["steps"][0]
    assert step["key_before"] == {"L": 2, "nu": 1}
    assert step["key_after"] == {"L": 0, "nu": 0}
    assert all(isinstance(x, str) for x in step["c"])
    assert step["perm"] == [0, 1, 2, 3]
    assert step["residual_gcd_applied"] is False


def test_deserialize_empty_object():
    with pytest.raises(CertificateFormatError, match="missing required fields"):
        deserialize("{}")


def test_deserialize_non_numeric_exponent(cert23):
    d = to_dict(cert23)
    d["steps"][0]["key_before"]["nu"] = "one"
    with pytest.raises(CertificateFormatError, match=r"steps\[0\]\.key_before\.nu"):
        deserialize(json.dumps(d))


def test_deserialize_non_decimal(cert23):
    d = to_dict(cert23)
    d["steps"][0]["c"][2] = "0x3"
    with pytest.raises(CertificateFormatError, match=r"steps\[0\]\.c\[2\]"):
        deserialize(json.dumps(d))
    d["steps"][0]["c"][2] = 3
    with pytest.raises(CertificateFormatError, match=r"decimal string"):
        deserialize(json.dumps(d))


def test_deserialize_unknown_field(cert23):
    d = to_dict(cert23)
    d["comment"] = "hi"
    with pytest.raises(CertificateFormatError, match="unknown fields: comment"):
        deserialize(json.dumps(d))


def test_deserialize_bad_json():
    for text in ("not json", "[1,", "", "{} trailing"):
        with pytest.raises(CertificateFormatError):
            deserialize(text)


def test_deserialize_wrong_version(cert23):
    d = to_dict(cert23)
    d["version"] = 2
    with pytest.raises(CertificateFormatError, match="version"):
        deserialize(json.dumps(d))


def test_load_many(cert23):
    c2 = decompose_prime(2)[1]
    text = json.dumps([to_dict(cert23), to_dict(c2)])
    assert load_many(text) == [cert23, c2]
    assert load_many(serialize(cert23)) == [cert23]


def mutate(cert: Certificate, rng: random.Random) -> tuple[Certificate, str]:
    """Add a nonzero delta to one integer of the certificate (seed excluded)."""
    bad = copy.deepcopy(cert)
    delta = rng.choice([-3, -2, -1, 1, 2, 3, 7, 100])
    slots = ["p", "initial", "result"] + [(i, f) for i in range(len(bad.steps)) for f in INT_FIELDS_STEP]
    slot = rng.choice(slots)
    if slot == "p":
        bad.p += delta
        return bad, "p"
    if slot in ("initial", "result"):
        vals = list(getattr(bad, slot))
        j = rng.randrange(len(vals))
        vals[j] += delta
        setattr(bad, slot, tuple(vals))
        return bad, f"{slot}[{j}]"
    i, name = slot
    s = bad.steps[i]
    value = getattr(s, name)
    if isinstance(value, OrderKey):
        L, nu = value.astuple()
        L2, nu2 = (L + delta, nu) if rng.random() < 0.5 else (L, nu + delta)
        if L2 < 0 or nu2 < 0 or (L2 == 0) != (nu2 == 0):
            L2, nu2 = (L, nu + 1) if L else (1, 1)
        setattr(s, name, OrderKey(L2, nu2))
    elif isinstance(value, tuple):
        vals = list(value)
        j = rng.randrange(len(vals))
        vals[j] += delta
        setattr(s, name, tuple(vals))
    else:
        setattr(s, name, value + delta)
    return bad, f"steps[{i}].{name}"


@pytest.fixture(scope="module")
def corpus():
    rng = random.Random(11)
    primes = [7, 23, 1049, 9973, 65537, 99991, 2**31 - 1, 1000003]
    primes += [q for q in rng.sample(range(3, 10**5), 400) if is_prime(q)][:20]
    return [decompose_prime(p)[1] for p in primes]


def test_single_field_corruption_fuzz(corpus):
    rng = random.Random(2024)
    for trial in range(1000):
        cert = rng.choice(corpus)
        bad, where = mutate(cert, rng)
        assert not verify(bad).valid, f"trial {trial}: mutation at {where} of p={cert.p} not detected"


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 10**6), st.integers(0, 2**32))
def test_round_trip_generated(n, seed):
    if not is_prime(n):
        return
    cert = decompose_prime(n, seed)[1]
    assert deserialize(serialize(cert)) == cert
