from fractions import Fraction

import pytest

from infhecke.engine import commutator
from infhecke.errors import UsageError
from infhecke.families import (
    FamilySpec,
    build_presentation,
    central_lift_search,
    centrality_report,
    gl_central_elements,
    low_degree_relations,
    sl2_identification,
    sl2_identification_check,
    sp_central_element,
    substitute,
    tau,
)
from infhecke.fuzz import antiinvolution_fuzz, associativity_fuzz
from infhecke.sl2 import h0, t_element


def test_spec_validation():
    with pytest.raises(UsageError):
        FamilySpec("so2n", 2)
    with pytest.raises(UsageError):
        FamilySpec("gln", 0)
    with pytest.raises(UsageError):
        FamilySpec("sp2n", 2, 0, 1)
    spec = FamilySpec("gln", 2, Fraction(1, 2), -1)
    assert spec.to_json() == {"family": "gln", "n": 2, "beta0": "1/2", "beta1": "-1"}
    assert FamilySpec.from_json(spec.to_json()) == spec


def test_sp2_matches_sl2():
    sp = build_presentation(FamilySpec("sp2n", 1))
    assert commutator(sp.gen("u_11"), sp.gen("e_1")) == sp.gen("e_1")
    assert sl2_identification_check(0)["ok"]
    assert sl2_identification_check(Fraction(2, 3))["ok"]


def test_sp4_generators():
    sp = build_presentation(FamilySpec("sp2n", 2))
    assert sum(1 for g in sp.generators if g.kind == "lie") == 10
    assert sum(1 for g in sp.generators if g.kind == "module") == 4


def test_t1_is_twice_t():
    sp = build_presentation(FamilySpec("sp2n", 1))
    img = substitute(sp_central_element(1), sl2_identification(sp), h0())
    assert img == 2 * t_element(h0())


def test_t2_central_and_fixed():
    rep = centrality_report(sp_central_element(2))
    assert rep["central"] and rep["fixed_by_j"] and rep["generators_checked"] == 14


def test_t_n_needs_undeformed():
    with pytest.raises(UsageError):
        sp_central_element(2, beta0=1)


def test_gl_relations():
    g0 = build_presentation(FamilySpec("gln", 2))
    assert not commutator(g0.gen("v_1"), g0.gen("vs_1"))
    g = build_presentation(FamilySpec("gln", 2, 1, 1))
    assert commutator(g.gen("v_1"), g.gen("vs_1")) == 1 + tau(g) + g.gen("E_11")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gl_central_elements(n):
    r, s = gl_central_elements(n)
    for el in (r, s):
        rep = centrality_report(el)
        assert rep["central"] and rep["fixed_by_j"]
    if n == 1:
        assert not s


def test_gl_low_degree_independence():
    r, s = gl_central_elements(2)
    assert low_degree_relations(r, s, 2) == []


def test_lifts():
    r, _ = gl_central_elements(2)
    assert central_lift_search(FamilySpec("gln", 2), r, 2) == r
    lift = central_lift_search(FamilySpec("gln", 2, 1, 0), r, 2)
    pres = lift.pres
    assert lift == pres.element(r.terms) + tau(pres)
    for b in ((0, 1), (1, 1)):
        lift = central_lift_search(FamilySpec("gln", 2, *b), r, 2)
        assert lift is not None and centrality_report(lift)["central"]


def test_lift_needs_gl():
    with pytest.raises(UsageError):
        central_lift_search(FamilySpec("sp2n", 1), sp_central_element(1))


@pytest.mark.parametrize("spec", [FamilySpec("sp2n", 2, 1), FamilySpec("gln", 3, 2, -1)])
def test_fuzzing(spec):
    pres = build_presentation(spec)
    assert associativity_fuzz(pres, 100).ok
    assert antiinvolution_fuzz(pres, 100).ok
