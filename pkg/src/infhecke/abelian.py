"""Commutator quotients H_z / [H_z, H_z].

Membership in [H_z, H_z] is always witnessed constructively: a
:class:`CommutatorCertificate` stores pairs (a_i, b_i) and a remainder with
target = sum [a_i, b_i] + remainder, and re-checks that identity in the
engine.  Non-membership can only be reported relative to a truncation, and
the reports say so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .engine import Element, apply_antiinvolution, commutator, monomial_weight, normal_form, to_json
from .errors import InvariantViolation, TruncationError, UsageError
from .poly import Poly, T
from .sl2 import (
    SL2_NAMES,
    as_poly,
    casimir,
    eval_casimir_poly,
    fg_pair,
    filtered_degree,
    filtered_monomials,
    hz_presentation,
    qz,
    t_element,
    tz,
    verify_central,
)


@dataclass
class CommutatorCertificate:
    """target = sum of [a, b] over ``pairs`` + remainder."""

    target: Element
    pairs: list[tuple[Element, Element]] = field(default_factory=list)
    remainder: Element | None = None

    def __post_init__(self):
        if self.remainder is None:
            self.remainder = self.target.pres.zero()

    def residual(self) -> Element:
        out = self.target - self.remainder
        for a, b in self.pairs:
            out = out - commutator(a, b)
        return out

    def verify(self) -> bool:
        return not self.residual()

    def checked(self) -> "CommutatorCertificate":
        if not self.verify():
            raise InvariantViolation("commutator certificate does not add up")
        return self

    def to_json(self) -> dict:
        return {
            "target": to_json(self.target),
            "pairs": [[to_json(a), to_json(b)] for a, b in self.pairs],
            "remainder": to_json(self.remainder),
        }


def _scaled(pairs, c) -> list:
    return [(c * a, b) for a, b in pairs]


def _require_default_order(pres) -> None:
    if pres.names != SL2_NAMES:
        raise UsageError("abelianization routines expect the e < f < h < x < y layout")


def _module_degree(mono: tuple) -> int:
    return mono[3] + mono[4]


# ---------------------------------------------------------------------------
# U(g)·V = [U(g), V]

def ugv_decompose(X: Element) -> tuple[Element, Element]:
    """A, B in U(g) with X = [A, x] + [B, y], for X in U(g)·V.

    Leading terms are cleared one at a time using
    [e^i f^k h^(j+1), x] = (j+1) e^i f^k h^j x + (terms with smaller i+k or degree),
    and the analogous identity for y.
    """
    pres = X.pres
    _require_default_order(pres)
    x, y = pres.gen("x"), pres.gen("y")
    A, B = pres.zero(), pres.zero()
    rest = X
    while rest:
        mono, c = max(
            rest.terms.items(),
            key=lambda mc: (mc[0][0] + mc[0][1] + mc[0][2], mc[0][0] + mc[0][1], mc[0]),
        )
        i, k, j, dx, dy = mono
        if dx + dy != 1:
            raise UsageError("ugv_decompose expects terms with exactly one x or y")
        lifted = pres.monomial((i, k, j + 1, 0, 0))
        if dx:
            coeff = c / (j + 1)
            A = A + coeff * lifted
            rest = rest - coeff * commutator(lifted, x)
        else:
            coeff = -c / (j + 1)
            B = B + coeff * lifted
            rest = rest - coeff * commutator(lifted, y)
    return A, B


def lfilt_decompose(c: Element, v: str) -> CommutatorCertificate:
    """Certificate for c·v as a sum [A, x] + [B, y] with A, B in U(g)."""
    pres = c.pres
    _require_default_order(pres)
    if v not in ("x", "y"):
        raise UsageError("v must be 'x' or 'y'")
    if any(_module_degree(m) for m in c.terms):
        raise UsageError("lfilt_decompose needs an element of U(g)")
    target = c * pres.gen(v)
    A, B = ugv_decompose(target)
    pairs = [(A, pres.gen("x"))] if A else []
    if B:
        pairs.append((B, pres.gen("y")))
    return CommutatorCertificate(target, pairs).checked()


# ---------------------------------------------------------------------------
# the two reduction rules

def lstar_reduce(kind: int, alpha: Element | None = None, beta: Element | None = None,
                 zprime: Element | None = None) -> list[CommutatorCertificate]:
    """Certificates behind the two reduction rules.

    kind 1 (α, β in U(g), d = [α, x] + [β, y]):
        d x + β z = [α x, x] + [β x, y]   and   d y - α z = [α y, x] + [β y, y].
    kind 2 (z' central in U(g)):
        z' e y^2 - z' h x y = [f, z' e x y]   and
        z' h x y + z' f x^2 = [j(z' e x y), e] + [f z', x^2] + [z', x y h].
    """
    if kind == 1:
        if alpha is None or beta is None:
            raise UsageError("kind 1 needs alpha and beta")
        pres = alpha.pres
        _require_default_order(pres)
        for el in (alpha, beta):
            if any(_module_degree(m) for m in el.terms):
                raise UsageError("alpha and beta must lie in U(g)")
        x, y = pres.gen("x"), pres.gen("y")
        zd = commutator(x, y)
        d = commutator(alpha, x) + commutator(beta, y)
        first = CommutatorCertificate(d * x + beta * zd, [(alpha * x, x), (beta * x, y)])
        second = CommutatorCertificate(d * y - alpha * zd, [(alpha * y, x), (beta * y, y)])
        return [first.checked(), second.checked()]
    if kind == 2:
        if zprime is None:
            raise UsageError("kind 2 needs zprime")
        pres = zprime.pres
        _require_default_order(pres)
        if any(_module_degree(m) for m in zprime.terms) or not verify_central(zprime, ("e", "f", "h")):
            raise UsageError("zprime must be central in U(g)")
        e, f = pres.gen("e"), pres.gen("f")
        exy = zprime * normal_form("exy", pres)
        first = CommutatorCertificate(
            zprime * normal_form("eyy", pres) - zprime * normal_form("hxy", pres),
            [(f, exy)],
        )
        second = CommutatorCertificate(
            zprime * normal_form("hxy", pres) + zprime * normal_form("fxx", pres),
            [(apply_antiinvolution(exy), e), (f * zprime, normal_form("xx", pres)),
             (zprime, normal_form("xyh", pres))],
        )
        return [first.checked(), second.checked()]
    raise UsageError("kind must be 1 or 2")


def l5_identity(n: int, z) -> bool:
    """[Δ^n, x] y - [Δ^n, y] x = 2 f_n(Δ)(t - hz/2) + g_n(Δ) z, checked in H_z."""
    if n < 1:
        raise UsageError("n must be >= 1")
    z = as_poly(z)
    pres = hz_presentation(z)
    D = casimir(pres) ** n
    x, y, h = pres.gens("x", "y", "h")
    lhs = commutator(D, x) * y - commutator(D, y) * x
    f, g = fg_pair(n)
    zd = eval_casimir_poly(z, pres)
    rhs = (2 * eval_casimir_poly(f, pres) * (t_element(pres) - Fraction(1, 2) * h * zd)
           + eval_casimir_poly(g, pres) * zd)
    return lhs == rhs


# ---------------------------------------------------------------------------
# U(g) modulo commutators: projection onto the centre

def _lie_monos(weight: int, bound: int) -> list[tuple]:
    out = []
    for a in range(bound + 1):
        for b in range(bound + 1 - a):
            if 2 * a - 2 * b != weight:
                continue
            for c in range(bound + 1 - a - b):
                out.append((a, b, c, 0, 0))
    return out


def c2_project(X: Element) -> tuple[Poly, CommutatorCertificate]:
    """p with X = p(Δ) + (commutators inside U(g)), for X in U(g).

    Non-zero weight parts are [h, X_w / w]; the weight-zero part is solved
    against Δ^k and the images of ad e and ad f on the same filtered piece.
    """
    pres = X.pres
    _require_default_order(pres)
    if any(_module_degree(m) for m in X.terms):
        raise UsageError("c2_project needs an element of U(g)")
    if not X:
        return Poly(), CommutatorCertificate(X)
    h, e, f = pres.gen("h"), pres.gen("e"), pres.gen("f")
    pairs = []
    zero_part = {}
    by_w: dict = {}
    for m, c in X.terms.items():
        w = monomial_weight(pres, m)
        if w:
            by_w.setdefault(w, {})[m] = c
        else:
            zero_part[m] = c
    for w, terms in sorted(by_w.items()):
        pairs.append((h, Element(pres, terms) / w))
    p = Poly()
    if zero_part:
        n = max(sum(m) for m in zero_part)
        ech = linalg.EchelonBasis(track=True)
        D = casimir(pres)
        vectors = {}
        for k in range(n // 2 + 1):
            vectors[("D", k)] = (D ** k).terms
        for m in _lie_monos(-2, n):
            vectors[("e", m)] = commutator(e, Element(pres, {m: Fraction(1)})).terms
        for m in _lie_monos(2, n):
            vectors[("f", m)] = commutator(f, Element(pres, {m: Fraction(1)})).terms
        for tag, vec in vectors.items():
            ech.add(vec, tag)
        comb = ech.express(zero_part)
        if comb is None:
            raise InvariantViolation("weight-zero part escaped Z(Ug) + [g, Ug]")
        coeffs = [Fraction(0)] * (n // 2 + 1)
        Me, Mf = {}, {}
        for tag, c in comb.items():
            if tag[0] == "D":
                coeffs[tag[1]] += c
            elif tag[0] == "e":
                Me[tag[1]] = c
            else:
                Mf[tag[1]] = c
        p = Poly(coeffs)
        if Me:
            pairs.append((e, Element(pres, Me)))
        if Mf:
            pairs.append((f, Element(pres, Mf)))
    cert = CommutatorCertificate(X, pairs, eval_casimir_poly(p, pres))
    return p, cert.checked()


# ---------------------------------------------------------------------------
# t_z^a Δ^b modulo commutators

@dataclass
class PstepResult:
    a: int
    b: int
    p: Poly
    certificate: CommutatorCertificate
    a_n: Poly | None = None  # central part of A in Δ^b h x = [A, x] + [B, y]


def _tz_delta(b: int, z: Poly, pres) -> tuple[Poly, list, Poly]:
    """(p, pairs, a_b) with t_z Δ^b = p(Δ) + sum of the pairs' commutators."""
    D = casimir(pres)
    Db = D ** b
    e, f = pres.gen("e"), pres.gen("f")
    pairs = []
    # Δ^b e y^2 = Δ^b h x y + [f, Δ^b e x y]
    c1, c2 = lstar_reduce(2, zprime=Db)
    pairs += c1.pairs
    # -Δ^b f x^2 = Δ^b h x y - (commutators of the second rule)
    pairs += _scaled(c2.pairs, -1)
    # -(1/2) Δ^b h z = -(1/2) [e, f Δ^b z]
    zd = eval_casimir_poly(z, pres)
    pairs.append((Fraction(-1, 2) * e, f * Db * zd))
    # Δ^b h x = [A, x] + [B, y], then Δ^b h x y = A z + [A y, x] + [B y, y]
    hx_cert = lfilt_decompose(Db * pres.gen("h"), "x")
    A = pres.zero()
    Bc = pres.zero()
    for a_el, v in hx_cert.pairs:
        if v == pres.gen("x"):
            A = a_el
        else:
            Bc = a_el
    _, l1 = lstar_reduce(1, alpha=A, beta=Bc)
    pairs += _scaled(l1.pairs, 3)
    p1, c2cert = c2_project(3 * A * zd)
    pairs += c2cert.pairs
    a_n, _ = c2_project(A)
    p = p1 - T ** b * qz(z)
    return p, pairs, a_n


def pstep_certificate(a: int, b: int, z) -> PstepResult:
    """p of degree a(m+1)+b with t_z^a Δ^b ≡ p(Δ) modulo [H_z, H_z], plus its certificate."""
    if a < 0 or b < 0:
        raise UsageError("a and b must be >= 0")
    z = as_poly(z)
    pres = hz_presentation(z)
    D = casimir(pres)
    if a == 0:
        target = D ** b
        return PstepResult(0, b, Poly.monomial(b), CommutatorCertificate(target, [], target))
    if z.degree < 1:
        raise UsageError("pstep needs deg z >= 1")
    tzz = tz(z)
    base: dict[int, tuple] = {}

    def one(k):
        if k not in base:
            base[k] = _tz_delta(k, z, pres)
        return base[k]

    p, pairs, a_n = one(b)
    for _ in range(a - 1):
        # t_z (p(Δ) + sum [r, s]) = sum_k p_k t_z Δ^k + sum [t_z r, s]
        new_pairs = [(tzz * r, s) for r, s in pairs]
        new_p = Poly()
        for k, c in enumerate(p.coeffs):
            if not c:
                continue
            pk, pairs_k, _ = one(k)
            new_p = new_p + c * pk
            new_pairs += _scaled(pairs_k, c)
        p, pairs = new_p, new_pairs
    target = tzz ** a * D ** b
    cert = CommutatorCertificate(target, pairs, eval_casimir_poly(p, pres)).checked()
    return PstepResult(a, b, p, cert, a_n if a == 1 else None)


# ---------------------------------------------------------------------------
# truncated brute-force span of commutators

def span_module_weight(z: Poly) -> int:
    """Filtration weight of x, y keeping products inside F^(a+b) for this z."""
    return max(1, z.degree)


class CommutatorSpan:
    """Span of [u, g] over normal monomials u and generators g with deg u + deg g <= N.

    deg is the filtration giving e, f, h degree 1 and x, y degree max(1, deg z).
    For that filtration the same space is spanned by all [u, v] with
    deg u + deg v <= N, because [u, g v'] = [u g, v'] + [v' u, g].
    """

    def __init__(self, z, N: int, track: bool = True, limit: int = 50000):
        self.z = as_poly(z)
        self.N = N
        self.pres = hz_presentation(self.z)
        self.d = span_module_weight(self.z)
        self.track = track
        pres = self.pres
        gens = [(g, filtered_degree(pres.unit_monomial(g), pres, self.d)) for g in pres.names]
        monos = filtered_monomials(pres, N - 1, self.d)
        jobs = [(m, g) for g, dg in gens for m in monos
                if filtered_degree(m, pres, self.d) + dg <= N]
        if len(jobs) > limit:
            raise TruncationError(f"{len(jobs)} commutators exceed the resource limit {limit}")
        self.blocks: dict = {}
        self.size = len(jobs)
        for m, g in jobs:
            c = commutator(Element(pres, {m: Fraction(1)}), pres.gen(g))
            if not c:
                continue
            for w, part in self._split(c).items():
                self._block(w).add(part, (m, g))

    def _block(self, w) -> linalg.EchelonBasis:
        if w not in self.blocks:
            self.blocks[w] = linalg.EchelonBasis(track=self.track)
        return self.blocks[w]

    def _split(self, X: Element) -> dict:
        out: dict = {}
        for m, c in X.terms.items():
            out.setdefault(monomial_weight(self.pres, m), {})[m] = c
        return out

    @property
    def rank(self) -> int:
        return sum(b.rank for b in self.blocks.values())

    def contains(self, X: Element) -> bool:
        for w, part in self._split(X).items():
            blk = self.blocks.get(w)
            if blk is None or not blk.contains(part):
                return False
        return True

    def certificate(self, X: Element) -> CommutatorCertificate | None:
        if not self.track:
            raise UsageError("span built without provenance")
        pairs = []
        pres = self.pres
        for w, part in self._split(X).items():
            blk = self.blocks.get(w)
            if blk is None:
                return None
            comb = blk.express(part)
            if comb is None:
                return None
            for (m, g), c in comb.items():
                pairs.append((Element(pres, {m: c}), pres.gen(g)))
        return CommutatorCertificate(X, pairs).checked()

    def residues(self, elements: list[Element]) -> list[dict]:
        out = []
        for X in elements:
            res = {}
            for w, part in self._split(X).items():
                blk = self.blocks.get(w)
                r = blk.reduce(part)[0] if blk is not None else part
                res.update(r)
            out.append(res)
        return out

    def subspace_of(self, other: "CommutatorSpan") -> bool:
        """True when every basis row of self lies in ``other``."""
        for w, blk in self.blocks.items():
            target = other.blocks.get(w)
            for row in blk.rows.values():
                if target is None or not target.contains(row):
                    return False
        return True


def full_pair_span(z, N: int) -> linalg.EchelonBasis:
    """All [u, v] with deg u + deg v <= N; for cross-checking :class:`CommutatorSpan`."""
    z = as_poly(z)
    pres = hz_presentation(z)
    d = span_module_weight(z)
    monos = filtered_monomials(pres, N, d)
    ech = linalg.EchelonBasis(track=False)
    for i, u in enumerate(monos):
        du = filtered_degree(u, pres, d)
        U = Element(pres, {u: Fraction(1)})
        for v in monos[i + 1:]:
            if du + filtered_degree(v, pres, d) <= N:
                ech.add(commutator(U, Element(pres, {v: Fraction(1)})).terms)
    return ech


def tzz_independence_falsifier(z, N: int) -> dict:
    """Look for a relation among 1, Δ, ..., Δ^(m-1) modulo the truncated commutator span."""
    z = as_poly(z)
    if not z:
        raise UsageError("z must be nonzero")
    m = z.degree
    span = CommutatorSpan(z, N)
    pres = span.pres
    if m == 0:
        one = pres.one()
        cert = span.certificate(one)
        return {
            "z": z.format(),
            "m": 0,
            "N": N,
            "vacuous": True,
            "one_in_span": cert is not None,
            "certificate": cert,
            "label": "membership proof" if cert is not None else f"not found at truncation {N}",
        }
    D = casimir(pres)
    powers = [D ** k for k in range(m)]
    residues = span.residues(powers)
    relations = linalg.nullspace(residues)
    return {
        "z": z.format(),
        "m": m,
        "N": N,
        "vacuous": False,
        "span_rank": span.rank,
        "dependency": relations[0] if relations else None,
        "label": ("no dependency found at truncation " + str(N)) if not relations
        else "dependency found: contradicts linear independence",
    }
