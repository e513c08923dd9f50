from fractions import Fraction

import pytest

from infhecke.engine import commutator, normal_form
from infhecke.families import FamilySpec, build_presentation, tau
from infhecke.parser import ParseError, parse, parse_element, parse_poly, to_text, tokenize
from infhecke.poly import Poly, T
from infhecke.sl2 import casimir, t_element

CORPUS = [
    "e", "f", "h", "x", "y", "0", "1", "-1", "3/4", "-7/2",
    "e*f", "f*e", "e + f", "e - f", "e - -f", "-e", "-(e)", "--e", "-e*f", "-(e*f)",
    "e^2", "e^0", "(e + f)^3", "(-e)^2", "-e^2", "(1/2)^3", "(-2)^2", "2^10", "x^2*y^2", "h*h*h",
    "[e, f]", "[x, y]", "[h, [e, f]]", "[[e, x], y]", "[e*f, h^2]", "-[e, f]", "[e, f]^2", "2*[x, y]",
    "Delta", "t", "Delta^2 - 2*Delta", "[Delta, x]", "[t, e]", "t*Delta + Delta*t",
    "e - (f - h)", "e - f - h", "(e - f) - h", "e*(f + h)", "(e + f)*(h - x)", "1/3*e + 2/3*f",
    "e*y^2 + h*x*y - f*x^2", "x*y - y*x", "((e))", "(e*f)*h", "e*(f*h)", "-3*x - -3*y",
    "[e, f] - h", "h - [e, f]", "-(1/2)", "(-1/2)*x",
]


def test_corpus_size():
    assert len(CORPUS) >= 50


@pytest.mark.parametrize("text", CORPUS)
def test_round_trip(text, H0):
    tree = parse(text)
    assert parse(to_text(tree)) == tree
    assert parse_element(to_text(tree), H0) == parse_element(text, H0)


def test_precedence(H0):
    e, f, h = H0.gens("e", "f", "h")
    assert parse_element("e - f - h", H0) == e - f - h
    assert parse_element("e + f*h", H0) == e + f * h
    assert parse_element("-e^2", H0) == -(e * e)
    assert parse_element("-2^2", H0) == H0.scalar(4)
    assert parse_element("[e, f]", H0) == h


def test_named_elements(H0):
    assert parse_element("Delta", H0) == casimir(H0)
    assert parse_element("e*y^2+h*x*y-f*x^2", H0) == t_element(H0)
    assert parse_element("[x, y]", H0) == commutator(H0.gen("x"), H0.gen("y"))
    g = build_presentation(FamilySpec("gln", 2, 1, 1))
    assert parse_element("tau", g) == tau(g)
    assert parse_element("[v_1, vs_1]", g) == 1 + tau(g) + g.gen("E_11")


def test_poly_parsing():
    assert parse_poly("Delta^3 - 2*Delta + 1") == T ** 3 - 2 * T + 1
    assert parse_poly("T^2") == T ** 2
    assert parse_poly("-1/2") == Poly.const(Fraction(-1, 2))


@pytest.mark.parametrize(
    "text, offset",
    [
        ("e +* f", 3),
        ("e + ", 4),
        ("(e + f", 6),
        ("[e f]", 3),
        ("e^x", 2),
        ("1/0", 2),
        ("1.5*e", 0),
        ("e $ f", 2),
        ("e f", 2),
        (")", 0),
    ],
)
def test_error_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset


def test_unknown_identifier(H0):
    with pytest.raises(ParseError) as info:
        parse_element("e + q", H0)
    assert info.value.offset == 4
    assert info.value.caret().splitlines() == ["e + q", "    ^"]
    with pytest.raises(ParseError):
        parse_poly("x + Delta")


def test_tokens():
    assert [k for k, _, _ in tokenize(" e*2 ")] == ["ident", "op", "int", "end"]
