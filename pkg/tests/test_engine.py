import json
from fractions import Fraction

import pytest

from infhecke.engine import (
    MIXED,
    ad_power,
    apply_antiinvolution,
    commutator,
    deserialize,
    filtration_degrees,
    normal_form,
    serialize,
    to_json,
    transfer,
    weight_of,
)
from infhecke.errors import PresentationMismatch, UsageError
from infhecke.sl2 import casimir, hz_presentation, t_element, z_of
from infhecke.poly import T


def test_straightening_rules(H0, H1):
    e, f, h, x, y = H0.gens("e", "f", "h", "x", "y")
    assert normal_form("fe", H0) == e * f - h
    assert normal_form("xh", H0) == h * x - x
    assert normal_form("yx", H1) == H1.gen("x") * H1.gen("y") - 1


def test_products(HD):
    e, f, h, x, y = HD.gens("e", "f", "h", "x", "y")
    one = HD.one()
    assert one * e == e
    assert e * f == HD.monomial({"e": 1, "f": 1})
    assert y * x == x * y - (h * h + 4 * e * f - 2 * h)


def test_casimir_brackets(HD):
    e, f, h, x, y = HD.gens("e", "f", "h", "x", "y")
    D = casimir(HD)
    assert commutator(D, x) == (2 * h - 3) * x + 4 * e * y
    assert commutator(D, y) == (-2 * h - 3) * y + 4 * f * x
    assert not commutator(D, e) and not commutator(D, f) and not commutator(D, h)
    assert not commutator(x, x)


def test_ad_power(H0):
    e, f, x = H0.gens("e", "f", "x")
    assert not ad_power(x, 3, casimir(H0))
    t = t_element(H0)
    assert ad_power(e, 0, t) == t
    assert ad_power(e, 2, f) == -2 * e


def test_weights_and_degrees(H0):
    e, f, h, x, y = H0.gens("e", "f", "h", "x", "y")
    assert weight_of(x) == 1
    assert weight_of(e * y * y) == 0
    assert weight_of(e + x) == MIXED
    assert filtration_degrees(t_element(H0)) == (2, 3)
    assert filtration_degrees(casimir(H0)) == (0, 2)
    assert filtration_degrees(x) == (1, 1)


def test_anti_involution(HD):
    e, f = HD.gens("e", "f")
    assert apply_antiinvolution(t_element(HD)) == t_element(HD)
    assert apply_antiinvolution(casimir(HD)) == casimir(HD)
    assert apply_antiinvolution(e * f) == e * f


def test_serialization(H0):
    two_e = 2 * H0.gen("e")
    data = json.loads(serialize(two_e))
    assert data["terms"] == [{"exp": {"e": 1}, "coeff": "2"}]
    t = t_element(H0)
    assert deserialize(serialize(t), H0) == t
    bad = {"algebra": H0.algebra_id, "terms": [{"exp": {"e": 1}, "coeff": "1/0"}]}
    with pytest.raises(UsageError):
        deserialize(json.dumps(bad), H0)
    with pytest.raises(UsageError):
        deserialize('{"terms": [{"exp": {"q": 1}, "coeff": "1"}]}', H0)
    with pytest.raises(UsageError):
        deserialize("not json", H0)
    with pytest.raises(PresentationMismatch):
        deserialize(serialize(t), hz_presentation(T))


def test_transfer_between_orders(HD):
    other = hz_presentation(T, order=("f", "y", "h", "e", "x"))
    t = t_element(HD)
    back = transfer(transfer(t, other), HD)
    assert back == t
    assert z_of(other) == T


def test_unknown_generator(H0):
    with pytest.raises(UsageError):
        H0.gen("q")
    with pytest.raises(UsageError):
        H0.monomial({"e": -1})


def test_mismatched_presentations(H0, H1):
    with pytest.raises(PresentationMismatch):
        H0.gen("e") + H1.gen("e")


def test_scalar_division(H0):
    assert (H0.gen("e") / 2) * 2 == H0.gen("e")
    assert to_json(H0.gen("e") * Fraction(1, 3))["terms"][0]["coeff"] == "1/3"
