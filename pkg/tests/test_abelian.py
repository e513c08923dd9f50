from fractions import Fraction

import pytest

from infhecke.abelian import (
    CommutatorCertificate,
    CommutatorSpan,
    c2_project,
    full_pair_span,
    l5_identity,
    lfilt_decompose,
    lstar_reduce,
    pstep_certificate,
    tzz_independence_falsifier,
)
from infhecke.engine import normal_form
from infhecke.errors import UsageError
from infhecke.poly import Poly, T
from infhecke.sl2 import casimir, filtered_monomials, hz_presentation, t_element


def test_lfilt_examples(H0):
    e, f, h, x, y = H0.gens("e", "f", "h", "x", "y")
    cert = lfilt_decompose(H0.one(), "x")
    assert cert.pairs == [(h, x)]
    cert = lfilt_decompose(h, "x")
    assert cert.verify()
    cert = lfilt_decompose(e * e * f, "y")
    assert cert.verify()
    assert all(max(sum(m[:3]) for m in a.terms) <= 4 for a, _ in cert.pairs)


@pytest.mark.parametrize("z", [Poly(), Poly.const(1), T ** 2])
def test_lfilt_all_low_degree_monomials(z):
    pres = hz_presentation(z)
    count = 0
    for mono in filtered_monomials(pres, 4, 1):
        if mono[3] or mono[4]:
            continue
        for v in ("x", "y"):
            assert lfilt_decompose(pres.monomial(mono), v).verify()
            count += 1
    assert count == 70


def test_lfilt_rejects_module_elements(H0):
    with pytest.raises(UsageError):
        lfilt_decompose(H0.gen("x"), "y")


def test_lstar_kind2(H0):
    first, second = lstar_reduce(2, zprime=H0.one())
    assert first.target == normal_form("eyy", H0) - normal_form("hxy", H0)
    assert first.pairs == [(H0.gen("f"), normal_form("exy", H0))]
    D = casimir(hz_presentation(T))
    assert all(c.verify() for c in lstar_reduce(2, zprime=D))


def test_lstar_kind1_degenerate(H0):
    first, second = lstar_reduce(1, alpha=H0.one(), beta=H0.zero())
    assert not first.target and not second.target


def test_lstar_needs_central_factor(H0):
    with pytest.raises(UsageError):
        lstar_reduce(2, zprime=H0.gen("e"))


def test_l5_identity():
    pres = hz_presentation(0)
    D = casimir(pres)
    x, y = pres.gens("x", "y")
    from infhecke.engine import commutator

    assert commutator(D, x) * y - commutator(D, y) * x == 4 * t_element(pres)
    for z in (Poly(), Poly.const(1)):
        assert l5_identity(1, z)
    assert l5_identity(4, T ** 2)


def test_c2_projection(H0):
    e, f, h = H0.gens("e", "f", "h")
    p, cert = c2_project(e * f)
    assert cert.verify()
    D = casimir(H0)
    p2, cert2 = c2_project(D * D)
    assert p2 == T ** 2 and cert2.verify()


def test_pstep_examples():
    r = pstep_certificate(0, 3, T)
    assert r.p == T ** 3 and not r.certificate.pairs
    assert pstep_certificate(1, 0, T).p.degree == 2
    r = pstep_certificate(2, 1, T ** 2)
    assert r.p.degree == 7 and r.certificate.verify()


def test_pstep_a_n_top_coefficient():
    # observed: the central part of A in Delta^b h x = [A, x] + [B, y] has top coefficient 1/(6(b+1))
    for b in range(3):
        a_n = pstep_certificate(1, b, T).a_n
        assert a_n.degree == b + 1
        assert a_n.lead == Fraction(1, 6 * (b + 1))


def test_span_membership():
    span = CommutatorSpan(T, 4)
    assert span.contains(casimir(span.pres))
    cert = span.certificate(casimir(span.pres))
    assert isinstance(cert, CommutatorCertificate) and cert.verify()
    assert not CommutatorSpan(T, 6).contains(hz_presentation(T).one())
    span0 = CommutatorSpan(0, 4)
    assert span0.contains(t_element(span0.pres))


def test_span_matches_all_pairs():
    for z in (Poly(), T):
        gen = CommutatorSpan(z, 4, track=False)
        full = full_pair_span(z, 4)
        assert gen.rank == full.rank


def test_span_monotone():
    assert CommutatorSpan(T ** 2, 4, track=False).subspace_of(CommutatorSpan(T ** 2, 6, track=False))


def test_falsifier():
    rep = tzz_independence_falsifier(T ** 2, 6)
    assert rep["dependency"] is None and "truncation 6" in rep["label"]
    assert tzz_independence_falsifier(T, 6)["dependency"] is None
    rep = tzz_independence_falsifier(5, 2)
    assert rep["vacuous"] and rep["one_in_span"] and rep["certificate"].verify()
