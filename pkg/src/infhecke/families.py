"""The undeformed sp(2n) family and the gl_n family with at most linear deformation.

sp(2n) sits inside gl(2n) with basis

    u_jk = E_jk - E_{k+n, j+n},  v_jk = E_{j, k+n} + E_{k, j+n},  w_jk = E_{j+n, k} + E_{k+n, j}

(v and w symmetric in j, k, so only j <= k is kept) acting on V = k^{2n}
with basis e_1, ..., e_{2n}.  The module generators satisfy
[e_i, e_k] = beta0 * delta_{|i-k|, n} * (i - k) / n.

For gl_n the generators are the matrix units E_ij, a copy v_i of the defining
representation and a copy vs_i of its dual, with
[v_i, vs_j] = delta_ij (beta0 + beta1 tau) + beta1 E_ij where tau = sum E_ii.

All structure constants are computed from actual matrices, so nothing here
is typed in by hand except the deformation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from . import linalg
from .engine import LIE, MODULE, Element, Generator, Presentation, apply_antiinvolution, commutator
from .errors import InvariantViolation, UsageError
from .poly import as_fraction, format_rational, parse_rational
from .sl2 import h0, hz_presentation

FAMILIES = ("sp2n", "gln")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    beta0: Fraction = Fraction(0)
    beta1: Fraction = Fraction(0)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UsageError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise UsageError("n must be a positive integer")
        object.__setattr__(self, "beta0", as_fraction(self.beta0))
        object.__setattr__(self, "beta1", as_fraction(self.beta1))
        if self.family == "sp2n" and self.beta1:
            raise UsageError("sp2n is only implemented for a scalar deformation (beta1 = 0)")

    @property
    def undeformed(self) -> bool:
        return not self.beta0 and not self.beta1

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "beta0": format_rational(self.beta0),
            "beta1": format_rational(self.beta1),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FamilySpec":
        try:
            return cls(
                data["family"],
                int(data["n"]),
                parse_rational(str(data.get("beta0", "0"))),
                parse_rational(str(data.get("beta1", "0"))),
            )
        except KeyError as exc:
            raise UsageError(f"family spec misses {exc.args[0]!r}") from None


# ---------------------------------------------------------------------------
# matrix helpers; matrices are dicts {(row, col): Fraction}, 1-based


def _mat_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i, k), x in a.items():
        for (kk, j), y in b.items():
            if k == kk:
                out[(i, j)] = out.get((i, j), 0) + x * y
    return {k: v for k, v in out.items() if v}


def _mat_bracket(a: dict, b: dict) -> dict:
    out = dict(_mat_mul(a, b))
    linalg._axpy(out, -1, _mat_mul(b, a))
    return out


def _sp_basis(n: int) -> dict[str, dict]:
    one = Fraction(1)
    basis = {}
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            m: dict = {}
            linalg._axpy(m, one, {(j, k): one})
            linalg._axpy(m, -one, {(k + n, j + n): one})
            basis[f"u_{j}{k}"] = m
    for j in range(1, n + 1):
        for k in range(j, n + 1):
            v: dict = {}
            linalg._axpy(v, one, {(j, k + n): one})
            linalg._axpy(v, one, {(k, j + n): one})
            basis[f"v_{j}{k}"] = v
            w: dict = {}
            linalg._axpy(w, one, {(j + n, k): one})
            linalg._axpy(w, one, {(k + n, j): one})
            basis[f"w_{j}{k}"] = w
    return basis


def _express(mat: dict, basis: dict[str, dict]) -> dict[str, Fraction]:
    """Coordinates of ``mat`` in ``basis`` (exact; raises if not in the span)."""
    eb = linalg.EchelonBasis(track=True)
    for name, m in basis.items():
        eb.add(m, tag=name)
    coords = eb.express(mat)
    if coords is None:
        raise InvariantViolation("matrix is not in the span of the basis")
    return {k: v for k, v in coords.items() if v}


def sp_generator_names(n: int) -> list[str]:
    """u's, then v's, then w's, each in lexicographic index order; then e_1..e_2n."""
    names = sorted(_sp_basis(n), key=lambda s: (s[0], s[2:]))
    return names + [f"e_{i}" for i in range(1, 2 * n + 1)]


def _sym(letter: str, r: int, s: int) -> str:
    """v_rs and w_rs are symmetric in r, s; u_rs is not."""
    if letter in "vw" and r > s:
        r, s = s, r
    return f"{letter}_{r}{s}"


def _linear(pres_names, coords: dict) -> dict:
    out = {}
    for name, c in coords.items():
        out[tuple(1 if g == name else 0 for g in pres_names)] = c
    return out


# grading by the element sum_j u_jj (resp. tau): weight of v is 2, w is -2,
# e_i is +1 for i <= n and -1 otherwise
def _sp_weight(name: str, n: int) -> Fraction:
    if name.startswith("e_"):
        return Fraction(1 if int(name[2:]) <= n else -1)
    return Fraction({"u": 0, "v": 2, "w": -2}[name[0]])


def _sp_presentation(n: int, beta0: Fraction) -> Presentation:
    basis = _sp_basis(n)
    names = sp_generator_names(n)
    gens = [Generator(nm, MODULE if nm.startswith("e_") else LIE, _sp_weight(nm, n)) for nm in names]
    lie = [nm for nm in names if not nm.startswith("e_")]
    brackets: dict = {}
    for a, b in combinations_with_replacement(lie, 2):
        if a == b:
            continue
        coords = _express(_mat_bracket(basis[a], basis[b]), basis)
        if coords:
            brackets[(a, b)] = _linear(names, coords)
    for a in lie:
        mat = basis[a]
        for i in range(1, 2 * n + 1):
            # X e_i = sum_k X_{k i} e_k
            coords = {f"e_{k}": c for (k, col), c in mat.items() if col == i}
            if coords:
                brackets[(a, f"e_{i}")] = _linear(names, coords)
    if beta0:
        for i in range(1, n + 1):
            # [e_i, e_{i+n}] = beta0 * (i - (i + n)) / n = -beta0
            brackets[(f"e_{i}", f"e_{i + n}")] = {tuple(0 for _ in names): -beta0}
    anti = {}
    for nm in names:
        if nm.startswith("e_"):
            i = int(nm[2:])
            anti[nm] = [(1, (f"e_{i + n if i <= n else i - n}",))]
        else:
            letter, j, k = nm[0], int(nm[2]), int(nm[3])
            if letter == "u":
                anti[nm] = [(1, (f"u_{k}{j}",))]
            else:
                anti[nm] = [(-1, (_sym("w" if letter == "v" else "v", j, k),))]
    return Presentation(f"sp2n(n={n},beta0={format_rational(beta0)})", gens, brackets, anti, grading="mixed")


def gl_generator_names(n: int) -> list[str]:
    names = [f"E_{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
    return names + [f"v_{i}" for i in range(1, n + 1)] + [f"vs_{i}" for i in range(1, n + 1)]


def _gl_weight(name: str) -> Fraction:
    if name.startswith("E_"):
        return Fraction(0)
    return Fraction(1 if name.startswith("v_") else -1)


def _gl_presentation(n: int, beta0: Fraction, beta1: Fraction) -> Presentation:
    names = gl_generator_names(n)
    gens = [Generator(nm, LIE if nm.startswith("E_") else MODULE, _gl_weight(nm)) for nm in names]
    idx = range(1, n + 1)
    brackets: dict = {}

    def add(a, b, coords):
        coords = {k: v for k, v in coords.items() if v}
        if not coords:
            return
        terms = {}
        for key, c in coords.items():
            mono = tuple(0 for _ in names) if key is None else tuple(1 if g == key else 0 for g in names)
            terms[mono] = terms.get(mono, 0) + c
        brackets[(a, b)] = terms

    for i in idx:
        for j in idx:
            for k in idx:
                for l in idx:
                    if (i, j) < (k, l):
                        # [E_ij, E_kl] = delta_jk E_il - delta_il E_kj
                        coords: dict = {}
                        if j == k:
                            coords[f"E_{i}{l}"] = coords.get(f"E_{i}{l}", 0) + 1
                        if i == l:
                            coords[f"E_{k}{j}"] = coords.get(f"E_{k}{j}", 0) - 1
                        add(f"E_{i}{j}", f"E_{k}{l}", coords)
            for k in idx:
                if j == k:
                    add(f"E_{i}{j}", f"v_{k}", {f"v_{i}": 1})
                if i == k:
                    add(f"E_{i}{j}", f"vs_{k}", {f"vs_{j}": -1})
    for i in idx:
        for j in idx:
            coords = {}
            if i == j:
                coords[None] = beta0
                for k in idx:
                    coords[f"E_{k}{k}"] = coords.get(f"E_{k}{k}", 0) + beta1
            coords[f"E_{i}{j}"] = coords.get(f"E_{i}{j}", 0) + beta1
            add(f"v_{i}", f"vs_{j}", coords)
    anti = {}
    for nm in names:
        if nm.startswith("E_"):
            anti[nm] = [(1, (f"E_{nm[3]}{nm[2]}",))]
        elif nm.startswith("v_"):
            anti[nm] = [(-1, (f"vs_{nm[2:]}",))]
        else:
            anti[nm] = [(-1, (f"v_{nm[3:]}",))]
    ident = f"gln(n={n},beta0={format_rational(beta0)},beta1={format_rational(beta1)})"
    return Presentation(ident, gens, brackets, anti, grading="mixed")


@lru_cache(maxsize=None)
def _build(family: str, n: int, beta0: Fraction, beta1: Fraction) -> Presentation:
    if family == "sp2n":
        return _sp_presentation(n, beta0)
    return _gl_presentation(n, beta0, beta1)


def build_presentation(spec: FamilySpec) -> Presentation:
    if spec.n > 9:
        # generator names concatenate two indices without a separator
        raise UsageError("n > 9 is not supported by the generator naming scheme")
    return _build(spec.family, spec.n, spec.beta0, spec.beta1)


def tau(pres: Presentation) -> Element:
    """The identity matrix sum_i E_ii of gl_n, as an element."""
    n = sum(1 for nm in pres.names if nm.startswith("v_"))
    out = pres.zero()
    for i in range(1, n + 1):
        out = out + pres.gen(f"E_{i}{i}")
    return out


# ---------------------------------------------------------------------------
# central elements


def sp_central_element(n: int, beta0=0) -> Element:
    spec = FamilySpec("sp2n", n, beta0)
    if not spec.undeformed:
        raise UsageError("t_n is defined for the undeformed algebra only")
    pres = build_presentation(spec)
    g = pres.gen
    out = pres.zero()
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            out = out + g(_sym("v", r, s)) * g(f"e_{r + n}") * g(f"e_{s + n}")
            out = out + g(f"u_{r}{s}") * g(f"e_{s}") * g(f"e_{r + n}")
            out = out + g(f"u_{s}{r}") * g(f"e_{r}") * g(f"e_{s + n}")
            out = out - g(_sym("w", r, s)) * g(f"e_{r}") * g(f"e_{s}")
    return out


def gl_central_elements(n: int, beta0=0, beta1=0) -> tuple[Element, Element]:
    spec = FamilySpec("gln", n, beta0, beta1)
    if not spec.undeformed:
        raise UsageError("r_n, s_n are stated for the undeformed algebra only")
    pres = build_presentation(spec)
    g = pres.gen
    r = pres.zero()
    for i in range(1, n + 1):
        r = r + g(f"v_{i}") * g(f"vs_{i}")
    s = pres.zero()
    for p in range(1, n + 1):
        for q in range(p + 1, n + 1):
            s = s + g(f"E_{p}{q}") * g(f"v_{q}") * g(f"vs_{p}") + g(f"E_{q}{p}") * g(f"v_{p}") * g(f"vs_{q}")
            s = s - g(f"E_{p}{p}") * g(f"v_{q}") * g(f"vs_{q}") - g(f"E_{q}{q}") * g(f"v_{p}") * g(f"vs_{p}")
    return r, s


def central_defects(a: Element) -> dict[str, Element]:
    """Nonzero commutators [g, a] over all generators g."""
    out = {}
    for name in a.pres.names:
        c = commutator(a.pres.gen(name), a)
        if c:
            out[name] = c
    return out


def centrality_report(a: Element) -> dict:
    defects = central_defects(a)
    return {
        "central": not defects,
        "generators_checked": len(a.pres.names),
        "failing": sorted(defects),
        "fixed_by_j": a.pres.has_anti_involution and apply_antiinvolution(a) == a,
    }


def substitute(a: Element, images: dict[str, Element], target: Presentation) -> Element:
    """Image of ``a`` under the algebra map sending each generator to ``images[name]``."""
    out = target.zero()
    for mono, c in a.terms.items():
        term = target.scalar(c)
        for name, e in zip(a.pres.names, mono):
            for _ in range(e):
                term = term * images[name]
        out = out + term
    return out


def sl2_identification(pres: Presentation, target: Presentation | None = None) -> dict[str, Element]:
    """Images for the n = 1 sp(2) generators: u11 -> h, v11 -> 2e, w11 -> 2f, e_1 -> x, e_2 -> y."""
    if pres.names != ("u_11", "v_11", "w_11", "e_1", "e_2"):
        raise UsageError("the sl2 identification needs the n = 1 sp2n presentation")
    target = target or h0()
    e, f, h, x, y = target.gens("e", "f", "h", "x", "y")
    return {"u_11": h, "v_11": 2 * e, "w_11": 2 * f, "e_1": x, "e_2": y}


def sl2_identification_check(beta0=0) -> dict:
    """Compare every bracket of sp(2) with its image in H_z, z = -beta0 constant.

    With x = e_1 and y = e_2 the relation [e_1, e_2] = -beta0 becomes
    [x, y] = z with the constant z = -beta0.
    """
    beta0 = as_fraction(beta0)
    sp = build_presentation(FamilySpec("sp2n", 1, beta0))
    target = hz_presentation(-beta0) if beta0 else h0()
    images = sl2_identification(sp, target)
    mismatches = []
    for a in sp.names:
        for b in sp.names:
            lhs = substitute(commutator(sp.gen(a), sp.gen(b)), images, target)
            rhs = commutator(images[a], images[b])
            if lhs != rhs:
                mismatches.append((a, b))
    return {"pairs_checked": len(sp.names) ** 2, "mismatches": mismatches, "ok": not mismatches}


def central_lift_search(spec: FamilySpec, seed: Element, degree_bound: int = 2) -> Element | None:
    """Find c in U(gl_n), deg c <= degree_bound, with seed + c central; None if there is none."""
    if spec.family != "gln":
        raise UsageError("central lifts are searched in the gl_n family only")
    pres = build_presentation(spec)
    if seed.pres is not pres:
        seed = pres.element(seed.terms)
    lie = [nm for nm in pres.names if nm.startswith("E_")]
    monos = [pres.one()]
    for d in range(1, degree_bound + 1):
        for combo in combinations_with_replacement(lie, d):
            monos.append(pres.monomial({nm: combo.count(nm) for nm in set(combo)}))
    gens = [pres.gen(nm) for nm in pres.names]

    def stacked(a: Element) -> dict:
        vec = {}
        for gi, g in enumerate(gens):
            for mono, c in commutator(g, a).terms.items():
                vec[(gi, mono)] = c
        return vec

    eb = linalg.EchelonBasis(track=True)
    for i, m in enumerate(monos):
        eb.add(stacked(m), tag=i)
    target = {k: -v for k, v in stacked(seed).items()}
    coords = eb.express(target)
    if coords is None:
        return None
    lift = seed
    for i, c in coords.items():
        lift = lift + c * monos[i]
    if central_defects(lift):
        raise InvariantViolation("linear solve produced a non-central lift")
    return lift


def low_degree_relations(a: Element, b: Element, degree: int = 2) -> list[dict]:
    """Linear relations among the products a^i b^j, i + j <= degree (with i, j >= 0)."""
    exps = [(i, d - i) for d in range(degree + 1) for i in range(d, -1, -1)]
    vecs = [dict(((a ** i) * (b ** j)).terms) for i, j in exps]
    return [{exps[k]: c for k, c in rel.items()} for rel in linalg.nullspace(vecs)]
