from fractions import Fraction

import pytest

from infhecke.errors import UsageError
from infhecke.poly import S, Poly, SqrtRingElement, T, as_fraction, format_rational, parse_rational


def test_rational_parsing():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational("7") == 7
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert format_rational(Fraction(4)) == "4"
    for bad in ("1/0", "0.5", "x", "", "1/-2"):
        with pytest.raises(UsageError):
            parse_rational(bad)


def test_floats_are_rejected():
    with pytest.raises(UsageError):
        as_fraction(0.5)
    with pytest.raises(UsageError):
        as_fraction(True)


def test_poly_arithmetic():
    p = T ** 2 - 2 * T + 1
    q = T - 1
    assert q * q == p
    quo, rem = p.divmod(q)
    assert quo == q and not rem
    assert p.degree == 2 and p.lead == 1
    assert Poly().degree == -1
    assert p(Fraction(3)) == 4
    assert p.compose(T + 1) == T ** 2
    assert p.derivative() == 2 * T - 2


def test_poly_json_round_trip():
    p = Fraction(3, 7) * T ** 3 - 5
    data = p.to_json()
    assert data == {"var": "Delta", "coeffs": ["-5", "0", "0", "3/7"]}
    assert Poly.from_json(data) == p


def test_sqrt_ring():
    # s^2 = T + 1
    assert S * S == SqrtRingElement(T + 1, Poly())
    one = SqrtRingElement(1)
    x_plus = S + one
    x_minus = S - one
    assert x_plus * x_minus == SqrtRingElement(T, Poly())
