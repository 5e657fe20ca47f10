"""Transform-layer tests: exact vectors, twin routes, JSON round trips."""

import json
import random
from fractions import Fraction

import pytest

from qweight import (
    EnumeratorKind,
    EnumeratorVector,
    KindError,
    A_from_unitary,
    dual_unitary,
    enumerator_from_json,
    enumerator_to_json,
    macwilliams,
    macwilliams_via_krawtchouk,
    shadow_from_unitary,
    shadow_from_unitary_via_krawtchouk,
    shadow_transform,
    shadow_via_krawtchouk,
    unitary_from_A,
)


def _vec(n, D, kind, coeffs):
    return EnumeratorVector(n=n, D=D, kind=kind, coeffs=tuple(Fraction(c) for c in coeffs))


def _random_vec(rng, kind="A"):
    n = rng.randrange(1, 9)
    D = rng.choice([2, 2, 3, 4, 5])
    coeffs = [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(n + 1)]
    return _vec(n, D, kind, coeffs)


def test_vector_validation():
    with pytest.raises(ValueError):
        _vec(0, 2, "A", [1])
    with pytest.raises(ValueError):
        _vec(2, 1, "A", [1, 0, 3])
    with pytest.raises(ValueError):
        _vec(2, 2, "A", [1, 0])
    with pytest.raises(ValueError):
        _vec(2, 2, "notakind", [1, 0, 3])


def test_kind_gate():
    s = _vec(2, 2, "S", [0, 0, 0])
    with pytest.raises(KindError):
        macwilliams(s)
    with pytest.raises(KindError):
        shadow_transform(s)
    with pytest.raises(KindError):
        unitary_from_A(s)
    a = _vec(2, 2, "A", [1, 0, 3])
    with pytest.raises(KindError):
        A_from_unitary(a)
    with pytest.raises(KindError):
        dual_unitary(a)


def test_macwilliams_bell_self_dual():
    a = _vec(2, 2, "A", [1, 0, 3])
    b = macwilliams(a)
    assert b.kind is EnumeratorKind.B
    assert b.coeffs == (Fraction(1), Fraction(0), Fraction(3))
    assert macwilliams(b).kind is EnumeratorKind.A


def test_macwilliams_maximally_mixed_qubit():
    a = _vec(1, 2, "A", [1, 0])
    b = macwilliams(a)
    assert b.coeffs == (Fraction(1, 2), Fraction(3, 2))


def test_shadow_of_ame42():
    a = _vec(4, 2, "A", [1, 0, 0, 12, 3])
    s = shadow_transform(a)
    assert s.kind is EnumeratorKind.SHADOW
    assert s.coeffs == (
        Fraction(-1, 2),
        Fraction(0),
        Fraction(9),
        Fraction(0),
        Fraction(15, 2),
    )


def test_unitary_chain_bell():
    a = _vec(2, 2, "A", [1, 0, 3])
    ap = unitary_from_A(a)
    assert ap.kind is EnumeratorKind.UNITARY_A
    assert ap.coeffs == (Fraction(1), Fraction(1), Fraction(1))
    back = A_from_unitary(ap)
    assert back.kind is EnumeratorKind.A
    assert back.coeffs == a.coeffs
    bp = dual_unitary(ap)
    assert bp.kind is EnumeratorKind.UNITARY_B
    assert bp.coeffs == tuple(reversed(ap.coeffs))
    assert dual_unitary(bp).kind is EnumeratorKind.UNITARY_A


def test_unitary_from_B_kind():
    b = _vec(2, 2, "B", [1, 0, 3])
    bp = unitary_from_A(b)
    assert bp.kind is EnumeratorKind.UNITARY_B


def test_macwilliams_involution_random():
    rng = random.Random(101)
    for _ in range(250):
        v = _random_vec(rng)
        assert macwilliams(macwilliams(v)).coeffs == v.coeffs


def test_macwilliams_route_agreement_random():
    rng = random.Random(102)
    for _ in range(250):
        v = _random_vec(rng)
        assert macwilliams(v).coeffs == macwilliams_via_krawtchouk(v).coeffs


def test_shadow_route_agreement_random():
    rng = random.Random(103)
    for _ in range(250):
        v = _random_vec(rng)
        assert shadow_transform(v).coeffs == shadow_via_krawtchouk(v).coeffs


def test_shadow_from_unitary_route_agreement_random():
    rng = random.Random(104)
    for _ in range(250):
        ap = unitary_from_A(_random_vec(rng))
        assert (
            shadow_from_unitary(ap).coeffs
            == shadow_from_unitary_via_krawtchouk(ap).coeffs
        )


def test_unitary_round_trip_random():
    rng = random.Random(105)
    for _ in range(250):
        v = _random_vec(rng)
        assert A_from_unitary(unitary_from_A(v)).coeffs == v.coeffs


def test_shadow_composition_identity_random():
    # Going through the subset enumerator must land on the same shadow.
    rng = random.Random(106)
    for _ in range(250):
        v = _random_vec(rng)
        via = shadow_from_unitary(unitary_from_A(v))
        assert via.coeffs == shadow_transform(v).coeffs


def test_dual_unitary_is_involution_random():
    rng = random.Random(107)
    for _ in range(100):
        ap = unitary_from_A(_random_vec(rng))
        assert dual_unitary(dual_unitary(ap)).coeffs == ap.coeffs


def test_json_round_trip():
    rng = random.Random(108)
    for _ in range(50):
        v = _random_vec(rng, kind=rng.choice(["A", "B", "Aprime", "Bprime", "S"]))
        blob = enumerator_to_json(v)
        parsed = json.loads(blob)
        assert set(parsed) == {"n", "D", "kind", "coeffs"}
        assert all(isinstance(c, str) for c in parsed["coeffs"])
        back = enumerator_from_json(blob)
        assert back == v


def test_json_rejects_malformed():
    with pytest.raises(ValueError):
        enumerator_from_json(json.dumps({"n": 2, "D": 2, "kind": "A"}))
    with pytest.raises(ValueError):
        enumerator_from_json(
            json.dumps({"n": 2, "D": 2, "kind": "Q", "coeffs": ["1", "0", "3"]})
        )
