"""The algebras H_z over sl2 and their centres.

H_z is generated by the sl2 triple e, f, h and the standard module V = kx + ky,
with [x, y] = z(Δ) for a polynomial z in the Casimir element
Δ = h^2 + 4ef - 2h.  This module builds the presentations, the polynomial
families f_n, g_n describing [Δ^n, x], the auxiliary polynomials z0 and q_z,
and the central element t_z.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct

from . import linalg
from .engine import (
    LIE,
    MODULE,
    Element,
    Generator,
    Presentation,
    apply_antiinvolution,
    commutator,
    monomial_weight,
    normal_form,
)
from .errors import InvariantViolation, UsageError
from .poly import S, Poly, SqrtRingElement, T

SL2_NAMES = ("e", "f", "h", "x", "y")
FG_METHODS = ("first-order", "three-term", "closed-form")


# ---------------------------------------------------------------------------
# presentations

_WEIGHTS = {"e": 2, "f": -2, "h": 0, "x": 1, "y": -1}


def _sl2_generators(order=SL2_NAMES) -> list[Generator]:
    return [Generator(n, MODULE if n in "xy" else LIE, Fraction(_WEIGHTS[n])) for n in order]


def _unit(name: str, order=SL2_NAMES, coeff=1) -> dict:
    return {tuple(1 if n == name else 0 for n in order): coeff}


_ANTI = {
    "e": [(-1, ("f",))],
    "f": [(-1, ("e",))],
    "h": [(1, ("h",))],
    "x": [(1, ("y",))],
    "y": [(1, ("x",))],
}


def _base_brackets(order=SL2_NAMES) -> dict:
    return {
        ("e", "f"): _unit("h", order),
        ("h", "e"): _unit("e", order, 2),
        ("h", "f"): _unit("f", order, -2),
        ("h", "x"): _unit("x", order),
        ("h", "y"): _unit("y", order, -1),
        ("e", "y"): _unit("x", order),
        ("f", "x"): _unit("y", order),
    }


def as_poly(z) -> Poly:
    if z is None:
        return Poly()
    if isinstance(z, Poly):
        return z
    if isinstance(z, (list, tuple)):
        return Poly(z)
    return Poly.const(z)


def hz_id(z: Poly, order=SL2_NAMES) -> str:
    base = f"Hz[{z.format('Delta')}]"
    return base if tuple(order) == SL2_NAMES else f"{base}<{','.join(order)}>"


@lru_cache(maxsize=128)
def _hz_cached(coeffs: tuple, order: tuple) -> Presentation:
    z = Poly(coeffs)
    brackets = _base_brackets(order)
    if z:
        # z(Δ) only involves e, f, h, so H_0 computes it with the same layout
        zd = eval_casimir_poly(z, _hz_cached((), order))
        brackets[("x", "y")] = dict(zd.terms)
    return Presentation(hz_id(z, order), _sl2_generators(order), brackets, _ANTI, grading="h")


def hz_presentation(z=None, order=SL2_NAMES) -> Presentation:
    """Presentation of H_z; ``z`` is a :class:`Poly` in Δ (or a scalar).

    ``order`` is the PBW order of the generators; the default is e < f < h < x < y.
    """
    order = tuple(order)
    if sorted(order) != sorted(SL2_NAMES):
        raise UsageError(f"order must be a permutation of {SL2_NAMES}")
    return _hz_cached(as_poly(z).coeffs, order)


def h0() -> Presentation:
    """H_0, the undeformed algebra U(sl2) ⋉ Sym(V)."""
    return hz_presentation()


def z_of(pres: Presentation) -> Poly:
    """Recover z from a presentation built by :func:`hz_presentation`."""
    return casimir_poly_of(commutator(pres.gen("x"), pres.gen("y")))


def casimir(pres: Presentation | None = None) -> Element:
    pres = pres or h0()
    e, f, h = pres.gens("e", "f", "h")
    return h * h + 4 * normal_form("ef", pres) - 2 * h


def eval_casimir_poly(p: Poly, pres: Presentation) -> Element:
    """p(Δ) as an element of ``pres``."""
    return pres.zero() + p(casimir(pres)) if p else pres.zero()


def casimir_poly_of(a: Element) -> Poly:
    """Inverse of :func:`eval_casimir_poly`; raises if ``a`` is not a polynomial in Δ."""
    pres = a.pres
    coeffs = []
    rest = a
    d = casimir(pres)
    # Δ^k has leading monomial h^(2k); peel off top powers of h
    hi = pres.index["h"]
    while rest:
        top = max(sum(m) for m in rest.terms)
        if top % 2:
            raise UsageError("element is not a polynomial in the Casimir")
        k = top // 2
        lead_mono = tuple(2 * k if i == hi else 0 for i in range(pres.ngens))
        c = rest.terms.get(lead_mono)
        if c is None:
            raise UsageError("element is not a polynomial in the Casimir")
        while len(coeffs) <= k:
            coeffs.append(Fraction(0))
        coeffs[k] += c
        rest = rest - c * d ** k
    return Poly(coeffs)


def t_element(pres: Presentation) -> Element:
    """t = e y^2 + h x y - f x^2."""
    return (normal_form("eyy", pres) + normal_form("hxy", pres)
            - normal_form("fxx", pres))


# ---------------------------------------------------------------------------
# f_n, g_n

def _fg_first_order(n: int) -> list[tuple[Poly, Poly]]:
    out = [(Poly.const(2), Poly.const(-3))]
    for k in range(1, n):
        f, g = out[-1]
        tk = T ** k
        out.append((2 * tk + (T - 1) * f - 2 * g, -3 * tk + (T + 3) * g - 2 * T * f))
    return out


def _fg_three_term(n: int) -> list[tuple[Poly, Poly]]:
    fs = [Poly.const(2), 4 * (T + 1)]
    gs = [Poly.const(-3), -10 * T - 9]
    c = T * T - 2 * T - 3
    while len(fs) < n:
        k = len(fs) - 1  # computing index k + 2 (one-based), from k + 1 and k
        fs.append((2 * T + 2) * fs[-1] - c * fs[-2])
        gs.append((2 * T + 2) * gs[-1] - (4 * T ** (k + 1) + 3 * T ** k) - c * gs[-2])
    return list(zip(fs, gs))[:n]


def _fg_closed_form(n: int) -> tuple[Poly, Poly]:
    yp = S + SqrtRingElement(2)
    ym = S - SqrtRingElement(2)
    sp = S ** (n - 1)
    f2 = sp * (yp ** n - ym ** n)
    g2 = sp * ((S + SqrtRingElement(1)) * yp ** n + (S - SqrtRingElement(1)) * ym ** n)
    if f2.q or g2.q:
        raise InvariantViolation(f"odd part in s survives for n={n}")
    half = Fraction(1, 2)
    return f2.p * half, T ** n - g2.p * half


@lru_cache(maxsize=None)
def _fg_table(n: int, method: str) -> tuple:
    if method == "first-order":
        return tuple(_fg_first_order(n))
    if method == "three-term":
        return tuple(_fg_three_term(n))
    return tuple(_fg_closed_form(k) for k in range(1, n + 1))


def fg_pair(n: int, method: str = "first-order") -> tuple[Poly, Poly]:
    """(f_n, g_n) with [Δ^n, x] = (f_n(Δ) h + g_n(Δ)) x + 2 f_n(Δ) e y."""
    if not isinstance(n, int) or n < 1:
        raise UsageError("fg_pair needs n >= 1")
    if method not in FG_METHODS:
        raise UsageError(f"unknown method {method!r}; choose from {FG_METHODS}")
    if method == "closed-form":
        return _fg_closed_form(n)
    return _fg_table(n, method)[n - 1]


def f_poly(n: int) -> Poly:
    return fg_pair(n)[0] if n > 0 else Poly()


def g_poly(n: int) -> Poly:
    return fg_pair(n)[1] if n > 0 else Poly()


def delta_power_formula(n: int, gen: str, pres: Presentation) -> Element:
    f, g = fg_pair(n)
    fd = eval_casimir_poly(f, pres)
    gd = eval_casimir_poly(g, pres)
    h = pres.gen("h")
    if gen == "x":
        return (fd * h + gd) * pres.gen("x") + 2 * fd * normal_form("ey", pres)
    return (gd - fd * h) * pres.gen("y") + 2 * fd * normal_form("fx", pres)


def delta_power_commutator(n: int, gen: str = "x", pres: Presentation | None = None) -> Element:
    """[Δ^n, gen] computed by the engine and checked against the f_n/g_n formula."""
    if gen not in ("x", "y"):
        raise UsageError("gen must be 'x' or 'y'")
    if n < 1:
        raise UsageError("n must be >= 1")
    pres = pres or h0()
    lhs = commutator(casimir(pres) ** n, pres.gen(gen))
    rhs = delta_power_formula(n, gen, pres)
    if lhs != rhs:
        raise InvariantViolation(f"[Delta^{n}, {gen}] disagrees with the f/g formula")
    return lhs


# ---------------------------------------------------------------------------
# solving [α, x] + β x = 2ψ e y + (hψ + η) x

def expand_in_f_basis(psi: Poly) -> dict[int, Fraction]:
    """Coefficients a_i with psi = sum_{i >= 1} a_i f_i."""
    rest = psi
    coeffs: dict[int, Fraction] = {}
    while rest:
        d = rest.degree
        a = rest.lead / (2 * (d + 1))
        coeffs[d + 1] = a
        rest = rest - a * f_poly(d + 1)
        if rest.degree >= d and rest:
            raise InvariantViolation("f_n basis change failed to lower the degree")
    return coeffs


def solve_alpha_beta(psi, eta, pres: Presentation | None = None, verify: bool = True) -> tuple[Poly, Poly]:
    """Central α (no constant term) and β with [α, x] + β x = 2ψ e y + (hψ + η) x.

    The same pair also satisfies [α, y] + β y = 2ψ f x + (η - hψ) y; both
    identities are re-checked in the engine when ``verify`` is set.
    """
    psi, eta = as_poly(psi), as_poly(eta)
    a = expand_in_f_basis(psi)
    alpha = Poly()
    beta = eta
    for i, c in a.items():
        alpha = alpha + Poly.monomial(i, c)
        beta = beta - c * g_poly(i)
    if verify:
        pres = pres or h0()
        check_alpha_beta(psi, eta, alpha, beta, pres)
    return alpha, beta


def check_alpha_beta(psi: Poly, eta: Poly, alpha: Poly, beta: Poly, pres: Presentation) -> None:
    P, E = eval_casimir_poly(psi, pres), eval_casimir_poly(eta, pres)
    A, B = eval_casimir_poly(alpha, pres), eval_casimir_poly(beta, pres)
    x, y, h = pres.gens("x", "y", "h")
    lhs_x = 2 * P * normal_form("ey", pres) + (h * P + E) * x
    lhs_y = 2 * P * normal_form("fx", pres) + (E - h * P) * y
    if lhs_x != commutator(A, x) + B * x:
        raise InvariantViolation("alpha/beta fail the x identity")
    if lhs_y != commutator(A, y) + B * y:
        raise InvariantViolation("alpha/beta fail the y identity")


def z0(z, zprime, verify: bool = True) -> Poly:
    """The central z0 (no constant term) with [z0, x] = z x z' - z' x z."""
    z, zprime = as_poly(z), as_poly(zprime)
    psi, eta = Poly(), Poly()
    for m, c in enumerate(z.coeffs):
        if not c:
            continue
        for n, d in enumerate(zprime.coeffs):
            if not d:
                continue
            psi = psi + c * d * (T ** n * f_poly(m) - T ** m * f_poly(n))
            eta = eta + c * d * (T ** n * g_poly(m) - T ** m * g_poly(n))
    alpha, beta = solve_alpha_beta(psi, eta, verify=False)
    if beta:
        raise InvariantViolation(f"z0: beta = {beta!r} should vanish")
    if verify:
        pres = h0()
        Z, Zp = eval_casimir_poly(z, pres), eval_casimir_poly(zprime, pres)
        x = pres.gen("x")
        if commutator(eval_casimir_poly(alpha, pres), x) != Z * x * Zp - Zp * x * Z:
            raise InvariantViolation("z0 fails its defining bracket")
    return alpha


def qz(z) -> Poly:
    """q_z = z/4 - Δz/4 - z0(Δ, z)/4, so that t - hz/2 - q_z is central."""
    z = as_poly(z)
    return Fraction(1, 4) * z - Fraction(1, 4) * T * z - Fraction(1, 4) * z0(T, z)


def tz(z, verify: bool = True) -> Element:
    """The central element t - h z/2 - q_z of H_z."""
    z = as_poly(z)
    pres = hz_presentation(z)
    out = (t_element(pres) - Fraction(1, 2) * pres.gen("h") * eval_casimir_poly(z, pres)
           - eval_casimir_poly(qz(z), pres))
    if verify and not verify_central(out):
        raise InvariantViolation(f"t_z is not central for z = {z.format()}")
    return out


def linear_tz_formula(a, b) -> Element:
    """The explicit central element for z = aΔ + b, without additive scalar."""
    a, b = Fraction(a), Fraction(b)
    z = Poly([b, a])
    pres = hz_presentation(z)
    D = casimir(pres)
    return (t_element(pres) - Fraction(1, 2) * pres.gen("h") * (a * D + b)
            + Fraction(1, 4) * (a * D * D + (2 * b - a) * D))


def verify_central(a: Element, generators=None) -> bool:
    pres = a.pres
    names = generators or pres.names
    return all(not commutator(a, pres.gen(g)) for g in names)


class CenterData:
    """Bundle of everything attached to one z; computed eagerly."""

    def __init__(self, z, fg_depth: int | None = None):
        self.z = as_poly(z)
        self.m = max(self.z.degree, 0)
        depth = fg_depth or self.m + 2
        self.fg = [fg_pair(n) for n in range(1, depth + 1)]
        self.q_z = qz(self.z)
        self.presentation = hz_presentation(self.z)
        self.t_z = tz(self.z)
        if apply_antiinvolution(self.t_z) != self.t_z:
            raise InvariantViolation("j does not fix t_z")

    def phi(self, lam) -> Fraction:
        lam = Fraction(lam)
        c = lam * lam + 2 * lam
        return (lam / 2 + 1) * self.z(c) - self.q_z(c)


# ---------------------------------------------------------------------------
# maximal vectors in U(sl2) and truncated centralisers

def _lie_monomials(pres: Presentation, bound: int, weight) -> list[tuple]:
    """Monomials e^a f^b h^c of total degree <= bound and the given weight."""
    out = []
    for a in range(bound + 1):
        for b in range(bound + 1 - a):
            if 2 * a - 2 * b != weight:
                continue
            for c in range(bound + 1 - a - b):
                out.append((a, b, c, 0, 0))
    return out


def maximal_vectors_Ug(weight: int, degree_bound: int) -> list[Element]:
    """Basis of the ad e-invariants of U(sl2) of the given weight and degree <= bound.

    The kernel is computed by linear algebra and compared with the span of
    Δ^a e^(w/2); the latter is returned.
    """
    if degree_bound < 0:
        raise UsageError("degree bound must be >= 0")
    pres = h0()
    if weight % 2 or weight < 0:
        return []
    k = weight // 2
    monos = _lie_monomials(pres, degree_bound, weight)
    e = pres.gen("e")
    images = [commutator(e, Element(pres, {m: Fraction(1)})).terms for m in monos]
    kernel = []
    for rel in linalg.nullspace(images):
        kernel.append({monos[i]: c for i, c in rel.items()})
    D = casimir(pres)
    claimed = [D ** a * pres.gen("e") ** k for a in range((degree_bound - k) // 2 + 1)] if k <= degree_bound else []
    if not linalg.same_span(kernel, [c.terms for c in claimed]):
        raise InvariantViolation(f"ad e-invariants of weight {weight} differ from Δ^a e^{k}")
    return claimed


CENTRALIZER_SUBJECTS = ("Ug", "e", "e-and-x", "V")


def module_weight(z: Poly) -> int:
    """Filtration weight of x and y that makes gr t_z equal to t."""
    return max(z.degree, 0) + 1


def filtered_degree(mono: tuple, pres: Presentation, d: int) -> int:
    return sum(e * (d if mod else 1) for e, mod in zip(mono, pres.module_mask))


def filtered_monomials(pres: Presentation, bound: int, d: int) -> list[tuple]:
    out = []
    mod = {i for i, m in enumerate(pres.module_mask) if m}

    def rec(idx: int, left: int, cur: list):
        if idx == pres.ngens:
            out.append(tuple(cur))
            return
        step = d if idx in mod else 1
        for e in range(left // step + 1):
            cur.append(e)
            rec(idx + 1, left - e * step, cur)
            cur.pop()

    rec(0, bound, [])
    return out


def _element_degree(a: Element, d: int) -> int:
    return max(filtered_degree(m, a.pres, d) for m in a.terms)


def centralizer_check(subject: str, bound: int, z=None) -> dict:
    """Compare the truncated centraliser of ``subject`` with the span of its claimed generators.

    The truncation is F^bound for the filtration giving e, f, h degree 1 and
    x, y degree deg(z) + 1.  The result is evidence at this truncation only.
    """
    if subject not in CENTRALIZER_SUBJECTS:
        raise UsageError(f"subject must be one of {CENTRALIZER_SUBJECTS}")
    z = as_poly(z)
    if subject == "V" and z:
        raise UsageError("the centraliser of V is only described for z = 0")
    pres = hz_presentation(z)
    d = module_weight(z)
    D = casimir(pres)
    tzz = tz(z)
    if subject == "Ug":
        acting, claimed_gens, commuting = ("e", "f", "h"), {"Delta": D, "t_z": tzz}, True
    elif subject == "e":
        acting, claimed_gens, commuting = ("e",), {"Delta": D, "t_z": tzz, "e": pres.gen("e"), "x": pres.gen("x")}, False
    elif subject == "e-and-x":
        acting, claimed_gens, commuting = ("e", "x"), {"t_z": tzz, "e": pres.gen("e"), "x": pres.gen("x")}, True
    else:
        acting, claimed_gens, commuting = ("x", "y"), {"t": tzz, "x": pres.gen("x"), "y": pres.gen("y")}, True
    degs = {k: _element_degree(v, d) for k, v in claimed_gens.items()}
    if bound < min(degs.values()):
        raise UsageError(f"bound {bound} is below every claimed generator degree {degs}")

    # centraliser inside F^bound, weight space by weight space
    monos = filtered_monomials(pres, bound, d)
    by_weight: dict = {}
    for m in monos:
        by_weight.setdefault(monomial_weight(pres, m), []).append(m)
    kernel: list[dict] = []
    for w in sorted(by_weight):
        block = by_weight[w]
        images = []
        for m in block:
            el = Element(pres, {m: Fraction(1)})
            vec = {}
            for gi, g in enumerate(acting):
                for mono, c in commutator(pres.gen(g), el).terms.items():
                    vec[(gi, mono)] = c
            images.append(vec)
        for rel in linalg.nullspace(images):
            kernel.append({block[i]: c for i, c in rel.items()})

    claimed = _claimed_span(claimed_gens, degs, bound, d, commuting)
    basis = linalg.EchelonBasis(track=False)
    for v in kernel:
        basis.add(v)
    inside = all(basis.contains(c) for c in claimed)
    claimed_rank = linalg.rank(claimed)
    return {
        "subject": subject,
        "z": z.format(),
        "bound": bound,
        "module_degree": d,
        "claimed_generators": {k: degs[k] for k in claimed_gens},
        "centralizer_dim": basis.rank,
        "claimed_dim": claimed_rank,
        "claimed_inside": inside,
        "equal": inside and claimed_rank == basis.rank,
        "truncation": f"filtered degree <= {bound}",
    }


def _claimed_span(gens: dict, degs: dict, bound: int, d: int, commuting: bool) -> list[dict]:
    names = list(gens)
    if commuting:
        out = []
        ranges = [range(bound // degs[n] + 1) for n in names]
        for exps in iproduct(*ranges):
            if sum(e * degs[n] for e, n in zip(exps, names)) > bound:
                continue
            el = None
            for e, n in zip(exps, names):
                p = gens[n] ** e
                el = p if el is None else el * p
            out.append(el.terms)
        return out
    # non-commuting generators: all words up to twice the bound, cut down to F^bound
    pres = next(iter(gens.values())).pres
    limit = 2 * bound
    layer = {0: [pres.one()]}
    words = [pres.one()]
    for total in range(1, limit + 1):
        layer[total] = []
        for n in names:
            prev = total - degs[n]
            if prev < 0:
                continue
            for w in layer[prev]:
                layer[total].append(w * gens[n])
        words.extend(layer[total])

    def key(mono):
        return (0 if filtered_degree(mono, pres, d) > bound else 1, mono)

    ech = linalg.EchelonBasis(track=False)
    for w in words:
        ech.add({key(m): c for m, c in w.terms.items()})
    return [{k[1]: c for k, c in row.items()} for p, row in ech.rows.items() if p[0] == 1]
