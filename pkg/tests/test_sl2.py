from fractions import Fraction

import pytest

from infhecke.engine import apply_antiinvolution, commutator
from infhecke.errors import UsageError
from infhecke.poly import Poly, T
from infhecke.sl2 import (
    FG_METHODS,
    casimir,
    centralizer_check,
    delta_power_commutator,
    fg_pair,
    h0,
    hz_presentation,
    linear_tz_formula,
    maximal_vectors_Ug,
    qz,
    solve_alpha_beta,
    t_element,
    tz,
    verify_central,
    z0,
)


@pytest.mark.parametrize("method", FG_METHODS)
def test_fg_small_values(method):
    assert fg_pair(1, method) == (Poly([2]), Poly([-3]))
    assert fg_pair(2, method) == (4 * T + 4, -10 * T - 9)
    assert fg_pair(3, method) == (6 * T ** 2 + 20 * T + 14, -21 * T ** 2 - 47 * T - 27)


def test_fg_rejects_bad_input():
    with pytest.raises(UsageError):
        fg_pair(0)
    with pytest.raises(UsageError):
        fg_pair(2, "magic")


def test_delta_power_commutators(H0):
    e, f, h, x, y = H0.gens("e", "f", "h", "x", "y")
    assert delta_power_commutator(1, "x", H0) == (2 * h - 3) * x + 4 * e * y
    assert delta_power_commutator(1, "y", H0) == (-2 * h - 3) * y + 4 * f * x
    D = casimir(H0)
    f2 = 4 * D + 4
    g2 = -10 * D - 9
    assert delta_power_commutator(2, "x", H0) == (f2 * h + g2) * x + 2 * f2 * e * y


def test_solve_alpha_beta():
    assert solve_alpha_beta(0, 0) == (Poly(), Poly())
    assert solve_alpha_beta(2, 0) == (T, Poly([3]))
    f2, g2 = fg_pair(2)
    alpha, beta = solve_alpha_beta(2 * f2, 0)
    assert alpha == 2 * T ** 2 and beta == -2 * g2


def test_z0_values():
    assert z0(T, T) == Poly()
    assert z0(T, 1) == T
    p = z0(T ** 2, T)
    assert p == Fraction(1, 3) * T ** 3 - Fraction(2, 3) * T ** 2 - T
    assert p.lead == Fraction(1, 3)


def test_z0_antisymmetric_and_bilinear():
    for m in range(4):
        for n in range(4):
            assert z0(T ** m, T ** n) == -z0(T ** n, T ** m)
    assert z0(T ** 2 + 3 * T, T) == z0(T ** 2, T) + 3 * z0(T, T)


def test_qz_values():
    assert qz(0) == Poly()
    assert qz(1) == Poly([Fraction(1, 4), Fraction(-1, 2)])
    assert qz(T) == Fraction(-1, 4) * T ** 2 + Fraction(1, 4) * T


def test_t_for_zero_z(H0):
    assert tz(0) == t_element(H0)


@pytest.mark.parametrize("a,b", [(1, 0), (0, 1), (2, -3), (Fraction(1, 2), 5)])
def test_linear_formula_up_to_scalar(a, b):
    diff = tz(Poly([b, a])) - linear_tz_formula(a, b)
    assert diff.is_scalar()


def test_tz_is_central_and_j_fixed():
    for z in (T ** 2, T ** 3 - 2 * T + 1, 3 * T + 1):
        t = tz(z)
        assert verify_central(t)
        assert apply_antiinvolution(t) == t


def test_verify_central_detects_failure(H1):
    assert not verify_central(t_element(H1))
    e = H1.gen("e")
    assert commutator(e, t_element(H1)) == -e
    assert verify_central(H1.one())


def test_maximal_vectors_in_Ug():
    D = casimir(h0())
    e = h0().gen("e")
    assert maximal_vectors_Ug(0, 2) == [h0().one(), D]
    assert maximal_vectors_Ug(2, 3) == [e, D * e]
    assert maximal_vectors_Ug(-2, 4) == []


@pytest.mark.parametrize("subject,bound,dim", [("Ug", 3, 3), ("e-and-x", 2, 6), ("V", 2, 6)])
def test_centralizers_undeformed(subject, bound, dim):
    rep = centralizer_check(subject, bound, 0)
    assert rep["equal"] and rep["centralizer_dim"] == dim
    assert "truncation" in rep


def test_centralizer_deformed():
    rep = centralizer_check("Ug", 7, T ** 2)
    assert rep["equal"]


def test_presentation_cache_and_orders():
    assert hz_presentation(T) is hz_presentation(T)
    with pytest.raises(UsageError):
        hz_presentation(T, order=("e", "e", "h", "x", "y"))
