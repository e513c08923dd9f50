from fractions import Fraction

import pytest

from infhecke.errors import TruncationError, UsageError
from infhecke.poly import Poly, T
from infhecke.sl2 import casimir, tz
from infhecke.verma import (
    VermaModule,
    alpha_rm,
    annihilator_inclusion_witness,
    basis_at,
    block_report,
    character_additivity,
    finite_dimensional_test,
    maximal_vector_witness,
    phi_poly,
    phi_z,
    simple_dimension,
    y2f,
)

LAMBDAS = [Fraction(-1, 2), Fraction(1, 3), Fraction(7, 5), Fraction(-2), Fraction(5, 2)]


def test_basis_sizes():
    assert len(basis_at(5)) == 3
    assert basis_at(0) == [(0, 0)]


@pytest.mark.parametrize("lam", LAMBDAS)
def test_casimir_eigenvalue(lam):
    M = VermaModule(lam, T, depth=4)
    c = lam * lam + 2 * lam
    assert M.act(casimir(M.pres), M.highest()) == ({(0, 0): c} if c else {})


def test_e_kills_y_v():
    M = VermaModule(Fraction(2, 3), 1, depth=4)
    yv = M.act(M.gen("y"), M.highest())
    assert not M.act(M.gen("e"), yv)


def test_e_on_first_maximal_candidate():
    lam = Fraction(3, 7)
    M = VermaModule(lam, 1, depth=4)
    w = M.act(y2f(M.pres), M.highest())
    assert M.act(M.gen("e"), w) == {(0, 0): 2 * lam + 1}


@pytest.mark.parametrize("z", [Poly(), Poly.const(1), T, T ** 2, T + 5])
def test_tz_acts_by_phi(z):
    t = tz(z)
    for lam in LAMBDAS:
        M = VermaModule(lam, z, depth=2)
        phi = phi_z(lam, z)
        assert M.act(t, M.highest()) == ({(0, 0): phi} if phi else {})


def test_phi_values():
    assert phi_poly(0) == Poly()
    lam = Poly([0, 1])
    p1 = phi_poly(1)
    assert p1 == Fraction(1, 2) * lam * lam + Fraction(3, 2) * lam + Fraction(3, 4)
    assert p1.compose(Poly([-3, -1])) == p1


def test_maximal_vectors_half_integer():
    M = VermaModule(Fraction(-1, 2), 1, depth=10)
    found = M.maximal_vectors(8)
    assert [d for d, _ in found] == [0, 2]
    target = M.act(y2f(M.pres), M.highest())
    (_, w), = [item for item in found if item[0] == 2]
    ratio = w[(1, 0)] / target[(1, 0)]
    assert {k: ratio * c for k, c in target.items()} == w


def test_maximal_vectors_generic_and_n4():
    assert [d for d, _ in VermaModule(Fraction(1, 3), 1, depth=10).maximal_vectors(8)] == [0]
    assert [d for d, _ in VermaModule(Fraction(5, 2), 1, depth=12).maximal_vectors(10)] == [0, 8]


def test_maximal_vectors_need_room():
    with pytest.raises(UsageError):
        VermaModule(0, 1, depth=6).maximal_vectors(5)


def test_truncation_is_enforced():
    M = VermaModule(0, 1, depth=2)
    with pytest.raises(TruncationError):
        M.act(M.gen("y") ** 3, M.highest())


def test_simple_dims():
    M = VermaModule(Fraction(-1, 2), 1, depth=6)
    assert [M.simple_dim(k) for k in range(4)] == [1, 1, 1, 1]
    N = VermaModule(Fraction(1, 3), 1, depth=6)
    assert [N.simple_dim(k) for k in range(6)] == [len(basis_at(k)) for k in range(6)]


def test_radical_cross_check():
    for lam, z in ((Fraction(-1, 2), 1), (Fraction(1, 2), 1), (1, T - 2)):
        M = VermaModule(lam, z, depth=7)
        assert M.radical_by_singular_search() == [len(basis_at(k)) - M.simple_dim(k) for k in range(8)]


def test_alpha_values():
    assert alpha_rm(1, 3, 1) == 3
    assert alpha_rm(1, 3, T - 2) == 0
    assert alpha_rm(0, 2, T - 2) == -2
    for r in range(5):
        assert alpha_rm(r, 2, T ** 2) == (r + 1) * ((r + 1) ** 2 - 1) ** 2


def test_finite_dimensional_scan():
    assert not any(finite_dimensional_test(r, 1)[0] for r in range(31))
    assert finite_dimensional_test(1, T - 2) == (True, 0)
    assert finite_dimensional_test(0, T - 2) == (False, None)


def test_simple_dimension_for_shifted_casimir():
    # y v survives because x y v = z(3) v = v; the profile is 1, 1, 1
    rep = simple_dimension(1, T - 2)
    assert rep["finite"] and rep["dims"][:3] == [1, 1, 1]


def test_blocks():
    assert block_report(0, -3, 1)["same_block"]
    assert not block_report(0, 1, 1)["same_block"]
    assert block_report(Fraction(2, 3), Fraction(-9, 4), 0)["same_block"]
    assert block_report(Fraction(1, 2), Fraction(-7, 2), 1)["rational_fiber"] == [Fraction(-7, 2), Fraction(1, 2)]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_structure_theorem_witness(n):
    w = maximal_vector_witness(n)
    assert w["e_law_holds"] and w["x_kills"] and w["e_coefficient"] == 0


def test_e_law_off_the_special_weights():
    w = maximal_vector_witness(2, lam=Fraction(1, 5))
    assert w["e_law_holds"] and w["e_coefficient"] == 2 * (Fraction(2, 5) + 3 - 4)


@pytest.mark.parametrize("lam", [Fraction(-1, 2), Fraction(1, 2)])
def test_annihilator_witness(lam):
    w = annihilator_inclusion_witness(lam, depth=10)
    assert w["kills_V_lambda"] and w["nonzero_on_V_mu"]


def test_annihilator_witness_rejects_generic_weight():
    with pytest.raises(UsageError):
        annihilator_inclusion_witness(0)


@pytest.mark.parametrize("lam", [Fraction(-1, 2), Fraction(1, 2), Fraction(3, 2)])
def test_character_additivity(lam):
    assert character_additivity(lam, depth=10)["holds"]


def test_vector_json_round_trip():
    M = VermaModule(Fraction(-1, 2), 1, depth=4)
    v = M.act(y2f(M.pres), M.highest())
    data = M.vector_to_json(v)
    assert data["lambda"] == "-1/2"
    assert M.vector_from_json(data) == v
