"""Verma modules M(λ) for H_z, truncated by depth.

M(λ) has basis f^i y^j v_λ (free over k[f, y]); the depth of f^i y^j v_λ is
2i + j and its weight is λ - depth.  To act with an element we multiply in a
second presentation of H_z whose PBW order is f < y < h < e < x: every
normal monomial there reads (lowering part)(h part)(raising part), so acting
on v_λ just drops monomials containing e or x and evaluates h at λ.

Vectors are dicts ``{(i, j): Fraction}``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .engine import Element, transfer
from .errors import PresentationMismatch, TruncationError, UsageError
from .poly import Poly, as_fraction, format_rational, parse_rational
from .sl2 import as_poly, hz_id, hz_presentation, qz

VERMA_ORDER = ("f", "y", "h", "e", "x")


def basis_at(k: int) -> list[tuple[int, int]]:
    """Monomials f^i y^j with 2i + j = k, by increasing i."""
    return [(i, k - 2 * i) for i in range(k // 2 + 1)]


def depth_of(v: dict) -> int:
    return max((2 * i + j for i, j in v), default=-1)


def phi_z(lam, z) -> Fraction:
    """Scalar by which t_z acts on M(λ): (λ/2 + 1) z(λ²+2λ) - q_z(λ²+2λ)."""
    lam = as_fraction(lam)
    z = as_poly(z)
    c = lam * lam + 2 * lam
    return (lam / 2 + 1) * z(c) - qz(z)(c)


def phi_poly(z) -> Poly:
    """φ_z as a polynomial in λ."""
    z = as_poly(z)
    lam = Poly([0, 1])
    c = lam * lam + 2 * lam
    return (lam * Fraction(1, 2) + 1) * z.compose(c) - qz(z).compose(c)


class VermaModule:
    """M(λ) for H_z, with every operation confined to depth <= ``depth``."""

    def __init__(self, lam, z=None, depth: int = 10):
        if depth < 0:
            raise UsageError("depth must be >= 0")
        self.lam = as_fraction(lam)
        self.z = as_poly(z)
        self.depth = depth
        self.pres = hz_presentation(self.z)
        self.aux = hz_presentation(self.z, order=VERMA_ORDER)
        self._lam_pows = [Fraction(1)]

    def __repr__(self) -> str:
        return f"VermaModule(lambda={self.lam}, z={self.z.format()}, depth={self.depth})"

    # -- vectors -----------------------------------------------------------
    def highest(self) -> dict:
        return {(0, 0): Fraction(1)}

    def basis(self, k: int) -> list[dict]:
        return [{b: Fraction(1)} for b in basis_at(k)]

    def _lam_pow(self, c: int) -> Fraction:
        while len(self._lam_pows) <= c:
            self._lam_pows.append(self._lam_pows[-1] * self.lam)
        return self._lam_pows[c]

    def _to_aux(self, a: Element) -> Element:
        if a.pres is self.aux:
            return a
        if a.pres.algebra_id != hz_id(self.z):
            raise PresentationMismatch(f"{a.pres.algebra_id} does not act on this module")
        return _transfer_cached(a, self.aux)

    def act(self, a: Element, v: dict) -> dict:
        """Exact action of ``a`` on ``v``; refuses results deeper than the truncation."""
        if depth_of(v) > self.depth:
            raise TruncationError(f"input vector has depth {depth_of(v)} > {self.depth}")
        aa = self._to_aux(a)
        k = self.aux.kernel
        out: dict = {}
        for mono, c in aa.terms.items():
            for (i, j), d in v.items():
                for res, r in k.mono_times_mono(mono, (i, j, 0, 0, 0)).items():
                    if res[3] or res[4]:
                        continue
                    key = (res[0], res[1])
                    val = out.get(key, 0) + c * d * r * self._lam_pow(res[2])
                    if val:
                        out[key] = val
                    else:
                        out.pop(key, None)
        if depth_of(out) > self.depth:
            raise TruncationError(
                f"result reaches depth {depth_of(out)}, beyond the truncation {self.depth}"
            )
        return out

    def gen(self, name: str) -> Element:
        return self.pres.gen(name)

    # -- maximal vectors and the simple quotient ---------------------------
    def maximal_vectors(self, up_to_depth: int) -> list[tuple[int, dict]]:
        """Basis, depth by depth, of the vectors killed by e and x."""
        if up_to_depth > self.depth - 2:
            raise UsageError(
                f"search depth {up_to_depth} needs truncation depth >= {up_to_depth + 2}"
            )
        e, x = self.gen("e"), self.gen("x")
        found = []
        for k in range(up_to_depth + 1):
            keys = basis_at(k)
            images = []
            for b in keys:
                vec = {}
                for tag, g in ((0, e), (1, x)):
                    for key, c in self.act(g, {b: Fraction(1)}).items():
                        vec[(tag, key)] = c
                images.append(vec)
            for rel in linalg.nullspace(images):
                found.append((k, {keys[i]: c for i, c in rel.items()}))
        return found

    def pairing_row(self, u: dict, k: int) -> list[Fraction]:
        """Coefficients of v_λ in e^r x^s u for all 2r + s = k, ordered by r."""
        e, x = self.gen("e"), self.gen("x")
        # e and x commute, so apply x^s first and then e^r, one generator at a time
        xs = [u]
        for _ in range(k):
            xs.append(self.act(x, xs[-1]))
        row = []
        for r in range(k // 2 + 1):
            w = xs[k - 2 * r]
            for _ in range(r):
                w = self.act(e, w)
            row.append(w.get((0, 0), Fraction(0)))
        return row

    def in_radical(self, u: dict) -> bool:
        """True when u (pure depth) lies in the maximal proper submodule."""
        if not u:
            return True
        ks = {2 * i + j for i, j in u}
        if len(ks) != 1:
            raise UsageError("in_radical expects a vector of a single depth")
        (k,) = ks
        return not any(self.pairing_row(u, k))

    def simple_dim(self, k: int) -> int:
        """dim V(λ) at depth k: the rank of the contravariant pairing."""
        if k > self.depth:
            raise TruncationError(f"depth {k} beyond truncation {self.depth}")
        rows = [self.pairing_row(b, k) for b in self.basis(k)]
        return linalg.rank([{i: c for i, c in enumerate(r) if c} for r in rows])

    def character(self, depth: int | None = None, quotient: bool = False) -> list[tuple[Fraction, int]]:
        """(weight, dimension) pairs for M(λ), or for V(λ) when ``quotient`` is set."""
        depth = self.depth if depth is None else depth
        if depth > self.depth:
            raise TruncationError(f"depth {depth} beyond truncation {self.depth}")
        out = []
        for k in range(depth + 1):
            dim = self.simple_dim(k) if quotient else k // 2 + 1
            out.append((self.lam - k, dim))
        return out

    def radical_by_singular_search(self, depth: int | None = None) -> list[int]:
        """dim of the maximal submodule N at each depth, found without the pairing.

        N_k = {w : e·w in N_(k-2), x·w in N_(k-1)}, built upward from N_0 = 0.
        This is an independent route to the same numbers as :meth:`simple_dim`.
        """
        depth = self.depth if depth is None else depth
        e, x = self.gen("e"), self.gen("x")
        layers: list[linalg.EchelonBasis] = []
        dims = []
        for k in range(depth + 1):
            ech = linalg.EchelonBasis(track=False)
            if k > 0:
                keys = basis_at(k)
                residues = []
                for b in keys:
                    vec = {}
                    for tag, g, below in ((0, e, k - 2), (1, x, k - 1)):
                        img = self.act(g, {b: Fraction(1)})
                        if below >= 0:
                            img, _ = layers[below].reduce(img)
                        for key, c in img.items():
                            vec[(tag, key)] = c
                    residues.append(vec)
                for rel in linalg.nullspace(residues):
                    ech.add({keys[i]: c for i, c in rel.items()})
            layers.append(ech)
            dims.append(ech.rank)
        return dims

    def submodule_dims(self, generator: dict, depth: int | None = None) -> list[int]:
        """Dimensions, by depth, of the submodule generated by a maximal vector."""
        depth = self.depth if depth is None else depth
        k0 = depth_of(generator)
        f, y = self.gen("f"), self.gen("y")
        out = []
        for k in range(depth + 1):
            if k < k0:
                out.append(0)
                continue
            vecs = []
            for a, b in basis_at(k - k0):
                vecs.append(self.act(f ** a * y ** b, generator))
            out.append(linalg.rank(vecs))
        return out

    # -- serialisation -----------------------------------------------------
    def vector_to_json(self, v: dict) -> dict:
        terms = [{"f": i, "y": j, "coeff": format_rational(c)} for (i, j), c in sorted(v.items())]
        return {"lambda": format_rational(self.lam), "terms": terms}

    def vector_from_json(self, data) -> dict:
        if isinstance(data, str):
            data = json.loads(data)
        if parse_rational(data["lambda"]) != self.lam:
            raise PresentationMismatch("vector belongs to a different highest weight")
        out: dict = {}
        for t in data["terms"]:
            key = (int(t["f"]), int(t["y"]))
            val = out.get(key, 0) + parse_rational(t["coeff"])
            if val:
                out[key] = val
            else:
                out.pop(key, None)
        return out


@lru_cache(maxsize=256)
def _transfer_cached(a: Element, target) -> Element:
    return transfer(a, target)


def format_vector(v: dict) -> str:
    if not v:
        return "0"
    parts = []
    for (i, j), c in sorted(v.items(), key=lambda kv: (-(2 * kv[0][0] + kv[0][1]), kv[0])):
        mono = "*".join(p for p in (
            "" if i == 0 else ("f" if i == 1 else f"f^{i}"),
            "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
        ) if p)
        body = mono + ("*" if mono else "") + "v"
        coeff = format_rational(abs(c))
        if abs(c) != 1:
            body = f"{coeff}*{body}"
        parts.append(("-" if c < 0 else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# finite-dimensional simple modules

def alpha_rm(r: int, m: int, z) -> Fraction:
    """sum_{j = r+3-m}^{r+1} j z(j^2 - 1)."""
    if m < 2:
        raise UsageError("alpha_rm needs m >= 2")
    if r < 0:
        raise UsageError("alpha_rm needs r >= 0")
    z = as_poly(z)
    return sum((j * z(Fraction(j * j - 1)) for j in range(r + 3 - m, r + 2)), Fraction(0))


def alpha_partial(j: int, z) -> Fraction:
    """F(j) = sum_{i=1}^{j} i z(i^2 - 1); alpha_rm telescopes through it."""
    z = as_poly(z)
    return sum((i * z(Fraction(i * i - 1)) for i in range(1, j + 1)), Fraction(0))


def finite_dimensional_test(r: int, z) -> tuple[bool, int | None]:
    """Whether V(r) is finite dimensional, with the smallest witness s."""
    if r < 0:
        raise UsageError("r must be >= 0")
    for s in range(r + 1):
        if alpha_rm(r, r - s + 2, z) == 0:
            return True, s
    return False, None


def simple_dimension(lam, z, max_depth: int = 40) -> dict:
    """Dimension of V(λ) certified by two consecutive vanishing depths.

    Every vector at depth k + 2 is f times depth k plus y times depth k + 1,
    so two empty consecutive depths in V(λ) make every deeper one empty.
    """
    M = VermaModule(lam, z, depth=max_depth)
    dims = []
    for k in range(max_depth + 1):
        dims.append(M.simple_dim(k))
        if k >= 1 and dims[-1] == 0 and dims[-2] == 0:
            return {"finite": True, "dimension": sum(dims), "dims": dims, "certified_at": (k - 1, k)}
    return {"finite": False, "dimension": None, "dims": dims, "certified_at": None}


# ---------------------------------------------------------------------------
# blocks

def block_report(lam, mu, z) -> dict:
    lam, mu = as_fraction(lam), as_fraction(mu)
    a, b = phi_z(lam, z), phi_z(mu, z)
    return {
        "lambda": lam,
        "mu": mu,
        "phi_lambda": a,
        "phi_mu": b,
        "same_block": a == b,
        "rational_fiber": rational_fiber(lam, z),
    }


def rational_fiber(lam, z) -> list[Fraction]:
    """Rational μ with φ_z(μ) = φ_z(λ); a lower bound on the block size."""
    import sympy

    p = phi_poly(z) - phi_z(lam, z)
    if not p:
        return []  # φ_z constant: every weight is in the block
    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** i for i, c in enumerate(p.coeffs))
    roots = sympy.Poly(expr, t, domain="QQ").ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)


# ---------------------------------------------------------------------------
# z = 1: the structure theorem

def half_integer_index(lam) -> int | None:
    """n with λ = n - 3/2 and n >= 1, else None."""
    n = as_fraction(lam) + Fraction(3, 2)
    if n.denominator == 1 and n >= 1:
        return int(n)
    return None


def y2f(pres) -> Element:
    y, f = pres.gen("y"), pres.gen("f")
    return y * y + 2 * f


def maximal_vector_witness(n: int, lam=None, depth: int | None = None) -> dict:
    """For z = 1: e·(y²+2f)^n v = n(2λ+3-2n)(y²+2f)^(n-1) v and x·(y²+2f)^n v = 0."""
    lam = Fraction(n) - Fraction(3, 2) if lam is None else as_fraction(lam)
    depth = depth or 2 * n + 2
    M = VermaModule(lam, Poly.const(1), depth=depth)
    u = y2f(M.pres)
    w = M.act(u ** n, M.highest())
    prev = M.act(u ** (n - 1), M.highest())
    coeff = n * (2 * lam + 3 - 2 * n)
    e_w = M.act(M.gen("e"), w)
    expected = {k: coeff * c for k, c in prev.items() if coeff * c}
    return {
        "n": n,
        "lambda": lam,
        "vector": w,
        "e_coefficient": coeff,
        "e_law_holds": e_w == expected,
        "x_kills": not M.act(M.gen("x"), w),
    }


def annihilator_inclusion_witness(lam, depth: int = 10) -> dict:
    """For z = 1, λ = n - 3/2: (y²+2f)^n kills V(λ) but not V(-3-λ) = M(-3-λ)."""
    n = half_integer_index(lam)
    if n is None:
        raise UsageError(f"lambda = {lam} is not of the form n - 3/2 with n >= 1")
    if 2 * n + 2 > depth:
        raise UsageError(f"depth must be at least {2 * n + 2}")
    lam = as_fraction(lam)
    z = Poly.const(1)
    M = VermaModule(lam, z, depth=depth)
    u = y2f(M.pres) ** n
    checked = []
    for k in range(depth - 2 * n + 1):
        for b in basis_at(k):
            img = M.act(u, {b: Fraction(1)})
            checked.append({"basis": b, "depth": k, "in_radical": M.in_radical(img)})
    mu = -3 - lam
    Mu = VermaModule(mu, z, depth=2 * n)
    w = Mu.act(y2f(Mu.pres) ** n, Mu.highest())
    return {
        "lambda": lam,
        "n": n,
        "mu": mu,
        "kills_V_lambda": all(c["in_radical"] for c in checked),
        "checked_vectors": len(checked),
        "image_of_v_mu": w,
        "nonzero_on_V_mu": bool(w) and not Mu.in_radical(w),
        "depth": depth,
    }


def character_additivity(lam, depth: int = 10) -> dict:
    """Ch M(λ) = Ch V(λ) + Ch V(-3-λ) for z = 1, λ = n - 3/2."""
    n = half_integer_index(lam)
    if n is None:
        raise UsageError(f"lambda = {lam} is not of the form n - 3/2 with n >= 1")
    lam = as_fraction(lam)
    z = Poly.const(1)
    M = VermaModule(lam, z, depth=depth)
    Mu = VermaModule(-3 - lam, z, depth=max(depth - 2 * n, 0))
    shift = 2 * n  # weight -3-λ sits at depth 2n below λ
    rows = []
    ok = True
    for k in range(depth + 1):
        full = k // 2 + 1
        v_lam = M.simple_dim(k)
        v_mu = Mu.simple_dim(k - shift) if k >= shift else 0
        rows.append((k, full, v_lam, v_mu))
        ok = ok and full == v_lam + v_mu
    return {"lambda": lam, "mu": -3 - lam, "rows": rows, "holds": ok}
