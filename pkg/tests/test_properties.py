"""Property-based checks of the straightening engine."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from infhecke.engine import apply_antiinvolution, deserialize, normal_form, serialize
from infhecke.families import FamilySpec, build_presentation
from infhecke.parser import parse, to_text
from infhecke.poly import T
from infhecke.sl2 import hz_presentation

PRESENTATIONS = [
    hz_presentation(0),
    hz_presentation(1),
    hz_presentation(T ** 2 - 2 * T),
    build_presentation(FamilySpec("sp2n", 2, 1)),
    build_presentation(FamilySpec("gln", 2, 1, -1)),
]

coeffs = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def elements(draw, pres):
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        word = draw(st.lists(st.integers(0, pres.ngens - 1), max_size=3))
        mono = [0] * pres.ngens
        for g in word:
            mono[g] += 1
        terms[tuple(mono)] = draw(coeffs)
    return pres.element({m: c for m, c in terms.items() if c})


@st.composite
def triple(draw):
    pres = draw(st.sampled_from(PRESENTATIONS))
    return tuple(draw(elements(pres)) for _ in range(3))


@settings(max_examples=1000, deadline=None)
@given(triple())
def test_associativity(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)


@settings(max_examples=300, deadline=None)
@given(triple())
def test_antiinvolution_reverses_products(abc):
    a, b, _ = abc
    j = apply_antiinvolution
    assert j(a * b) == j(b) * j(a)
    assert j(j(a)) == a


@settings(max_examples=300, deadline=None)
@given(triple())
def test_weights_add(abc):
    a, b, _ = abc
    pres = a.pres
    if "e" not in pres.names:
        return
    wt = {"e": 2, "f": -2, "h": 0, "x": 1, "y": -1}
    w = [wt[n] for n in pres.names]

    def weights(el):
        return {sum(k * wi for k, wi in zip(m, w)) for m in el.terms}

    if len(weights(a)) == 1 and len(weights(b)) == 1 and a * b:
        assert weights(a * b) == {next(iter(weights(a))) + next(iter(weights(b)))}


@settings(max_examples=300, deadline=None)
@given(triple())
def test_serialization_round_trip(abc):
    a = abc[0]
    assert deserialize(serialize(a), a.pres) == a


names = st.sampled_from(["e", "f", "h", "x", "y", "Delta", "t"])
nums = st.fractions(min_value=-9, max_value=9, max_denominator=5).map(lambda q: str(q))
leaves = st.one_of(names, nums)


def _extend(children):
    return st.one_of(
        st.tuples(children, st.sampled_from(["+", "-", "*"]), children).map(lambda t: f"({t[0]}) {t[1]} ({t[2]})"),
        st.tuples(children, st.integers(0, 3)).map(lambda t: f"({t[0]})^{t[1]}"),
        st.tuples(children, children).map(lambda t: f"[{t[0]}, {t[1]}]"),
        children.map(lambda s: f"-({s})"),
    )


@settings(max_examples=300, deadline=None)
@given(st.recursive(leaves, _extend, max_leaves=6))
def test_parser_round_trip(text):
    tree = parse(text)
    assert parse(to_text(tree)) == tree
