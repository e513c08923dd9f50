"""The ten acceptance criteria, runnable from the CLI (``infhecke verify``) and pytest.

Each criterion is a function returning a list of ``Check`` records.  A
criterion passes when every check passes and it finishes inside its time
budget.  Nothing here is tolerance based: every comparison is an exact
equality of rationals, polynomials or normal forms.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import abelian, families, fuzz, sl2, verma
from .engine import deserialize, serialize
from .errors import InfHeckeError
from .poly import Poly, T

TEST_Z = (Poly(), Poly.const(1), T, T + 5, T ** 2, T ** 3 - 2 * T + 1)


@dataclass
class Check:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class CriterionResult:
    number: int
    title: str
    budget: float
    checks: list = field(default_factory=list)
    elapsed: float = 0.0
    error: str | None = None

    @property
    def within_budget(self) -> bool:
        return self.elapsed <= self.budget

    @property
    def passed(self) -> bool:
        return self.error is None and self.within_budget and all(c.ok for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.title} ({len(self.checks)} checks, {self.elapsed:.1f}s / {self.budget:g}s)"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "elapsed": round(self.elapsed, 3),
            "budget": self.budget,
            "error": self.error,
            "checks": len(self.checks),
            "failures": [{"label": c.label, "detail": c.detail} for c in self.failures],
        }


def _guard(label: str, fn) -> Check:
    """Run ``fn`` (returning bool, or (bool, detail)); exceptions count as failures."""
    try:
        out = fn()
    except InfHeckeError as exc:
        return Check(label, False, f"{type(exc).__name__}: {exc}")
    if isinstance(out, tuple):
        return Check(label, bool(out[0]), str(out[1]))
    return Check(label, bool(out))


# ---------------------------------------------------------------------------


def fg_consistency() -> list[Check]:
    checks = []
    for n in range(1, 21):
        pairs = {m: sl2.fg_pair(n, m) for m in sl2.FG_METHODS}
        first = pairs["first-order"]
        checks.append(Check(f"f/g methods agree, n={n}", all(p == first for p in pairs.values())))
        f, g = first
        ok = f.degree == n - 1 and f.lead == 2 * n and g.degree == n - 1 and g.lead == -n * (2 * n + 1)
        checks.append(Check(f"leading data, n={n}", ok, f"f lead {f.lead}, g lead {g.lead}"))
    return checks


def commutator_formulas() -> list[Check]:
    pres = sl2.h0()
    checks = []
    for n in range(1, 9):
        for gen in ("x", "y"):
            checks.append(_guard(f"[Delta^{n}, {gen}]", lambda n=n, gen=gen: sl2.delta_power_commutator(n, gen, pres) is not None))
    return checks


def centrality() -> list[Check]:
    checks = []
    for z in TEST_Z:
        def central(z=z):
            t = sl2.tz(z, verify=False)
            return sl2.verify_central(t), f"{len(t)} terms"
        checks.append(_guard(f"t_z central, z={z.format()}", central))
    for a, b in ((1, 0), (0, 1), (2, -3)):
        def linear(a=a, b=b):
            diff = sl2.tz(Poly([b, a])) - sl2.linear_tz_formula(a, b)
            return diff.is_scalar(), f"difference {diff}"
        checks.append(_guard(f"linear formula up to a constant, z={a}*Delta+{b}", linear))
    return checks


def leading_data() -> list[Check]:
    checks = []
    for m in range(1, 8):
        for n in range(1, 9 - m):
            if m == n:
                continue
            p = sl2.z0(T ** m, T ** n)
            want = Fraction(m - n, m + n)
            checks.append(Check(f"z0(Delta^{m}, Delta^{n}) lead", p.degree == m + n and p.lead == want,
                                f"got {p.lead} at degree {p.degree}, expected {want}"))
    for m in range(0, 6):
        for c in (Fraction(1), Fraction(-2), Fraction(3, 7)):
            q = sl2.qz(c * T ** m)
            want = -c * m / (2 * (m + 1))
            checks.append(Check(f"q_z lead, z=({c})*Delta^{m}", q.degree == m + 1 and q.lead == want,
                                f"got {q.lead} at degree {q.degree}, expected {want}"))
    return checks


def verma_eigenvalue() -> list[Check]:
    rng = random.Random(fuzz.DEFAULT_SEED)
    checks = []
    for z in TEST_Z:
        t = sl2.tz(z, verify=False)
        bad = []
        for _ in range(20):
            lam = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
            M = verma.VermaModule(lam, z, depth=4)
            phi = verma.phi_z(lam, z)
            got = M.act(t, M.highest())
            if got != ({(0, 0): phi} if phi else {}):
                bad.append(lam)
        checks.append(Check(f"t_z acts by phi_z on v_lambda, z={z.format()}", not bad, f"failing lambdas {bad}"))
    phi1 = verma.phi_poly(1)
    checks.append(Check("phi_1(lambda) = phi_1(-3-lambda)", phi1 == phi1.compose(Poly([-3, -1])), phi1.format("lambda")))
    return checks


def z1_structure() -> list[Check]:
    checks = []
    for n in range(1, 5):
        def witness(n=n):
            w = verma.maximal_vector_witness(n)
            return w["e_law_holds"] and w["x_kills"] and w["e_coefficient"] == 0 and bool(w["vector"]), \
                f"e coefficient {w['e_coefficient']}"
        checks.append(_guard(f"(y^2+2f)^{n} v maximal at lambda={n}-3/2", witness))
    for lam in (Fraction(1, 3), Fraction(-2), Fraction(7, 5)):
        def none_found(lam=lam):
            M = verma.VermaModule(lam, 1, depth=14)
            depths = sorted({d for d, _ in M.maximal_vectors(12)})
            return depths == [0], f"maximal vectors at depths {depths}"
        checks.append(_guard(f"no maximal vector below v_lambda to depth 12, lambda={lam}", none_found))
    for n in (1, 2, 3):
        lam = Fraction(n) - Fraction(3, 2)
        checks.append(_guard(f"Ch M = Ch V(lambda) + Ch V(-3-lambda), lambda={lam}",
                             lambda lam=lam: verma.character_additivity(lam, depth=10)["holds"]))
    for n in (1, 2):
        lam = Fraction(n) - Fraction(3, 2)
        def strict(lam=lam):
            w = verma.annihilator_inclusion_witness(lam, depth=10)
            return w["kills_V_lambda"] and w["nonzero_on_V_mu"]
        checks.append(_guard(f"annihilator strictness witness, n={n}", strict))
    return checks


def finite_dimensionality() -> list[Check]:
    checks = []
    found = [r for r in range(31) if verma.finite_dimensional_test(r, 1)[0]]
    checks.append(Check("z=1: no finite-dimensional V(r), r <= 30", not found, f"finite for r in {found}"))
    z = T - 2
    a13 = verma.alpha_rm(1, 3, z)
    checks.append(Check("z=Delta-2: alpha_{1,3} = 0", a13 == 0, f"alpha_13 = {a13}"))
    rep = verma.simple_dimension(1, z)
    checks.append(Check("z=Delta-2: dim V(1) = 2", rep["dimension"] == 2,
                        f"computed dimension {rep['dimension']}, depth profile {rep['dims']}"))
    M = verma.VermaModule(1, z, depth=10)
    depths = sorted({d for d, _ in M.maximal_vectors(8)})
    checks.append(Check("z=Delta-2: maximal vectors in M(1) bound a finite quotient", rep["finite"] and len(depths) > 1,
                        f"maximal vectors at depths {depths}"))
    return checks


def abelianization() -> list[Check]:
    checks = []
    for z in (Poly(), Poly.const(1), T ** 2):
        bad = [n for n in range(1, 9) if not abelian.l5_identity(n, z)]
        checks.append(Check(f"L5 identity n<=8, z={z.format()}", not bad, f"fails for n in {bad}"))
    for z in (Poly(), Poly.const(1), T ** 2):
        pres = sl2.hz_presentation(z)
        count = 0
        bad = []
        for mono in sl2.filtered_monomials(pres, 4, 1):
            if mono[3] or mono[4]:
                continue
            c = pres.monomial(mono)
            for v in ("x", "y"):
                try:
                    abelian.lfilt_decompose(c, v)
                    count += 1
                except InfHeckeError:
                    bad.append((mono, v))
        checks.append(Check(f"Lfilt certificates for U(g) degree <= 4, z={z.format()}", not bad and count == 70,
                            f"{count} certificates, failures {bad[:3]}"))
    for z in (T, T ** 2):
        m = z.degree
        for a in range(3):
            for b in range(3):
                def step(a=a, b=b, z=z, m=m):
                    r = abelian.pstep_certificate(a, b, z)
                    want = a * (m + 1) + b
                    return r.p.degree == want and r.certificate.verify(), f"deg p = {r.p.degree}, expected {want}"
                checks.append(_guard(f"pstep a={a} b={b} z={z.format()}", step))
    rep = abelian.tzz_independence_falsifier(T ** 2, 6)
    checks.append(Check("no dependency at N=6 for z=Delta^2", rep["dependency"] is None, rep["label"]))
    for c in (1, 5):
        rep = abelian.tzz_independence_falsifier(Poly.const(c), 4)
        checks.append(Check(f"1 in commutator span for z={c}", rep["one_in_span"] and rep["certificate"].verify(), rep["label"]))
    return checks


def families_check() -> list[Check]:
    checks = []
    for n in (1, 2):
        t_n = families.sp_central_element(n)
        rep = families.centrality_report(t_n)
        checks.append(Check(f"t_{n} central and j-fixed", rep["central"] and rep["fixed_by_j"], str(rep["failing"])))
    sp1 = families.build_presentation(families.FamilySpec("sp2n", 1))
    img = families.substitute(families.sp_central_element(1), families.sl2_identification(sp1), sl2.h0())
    checks.append(Check("t_1 = 2t under the sl2 identification", img == 2 * sl2.t_element(sl2.h0())))
    checks.append(Check("sp(2) brackets match H_0 brackets", families.sl2_identification_check(0)["ok"]))
    for n in (2, 3):
        r, s = families.gl_central_elements(n)
        for name, el in (("r", r), ("s", s)):
            rep = families.centrality_report(el)
            checks.append(Check(f"{name}_{n} central and j-fixed", rep["central"] and rep["fixed_by_j"], str(rep["failing"])))
    specs = [families.FamilySpec("sp2n", 1), families.FamilySpec("sp2n", 2), families.FamilySpec("sp2n", 2, 1),
             families.FamilySpec("gln", 2), families.FamilySpec("gln", 2, 1, 1), families.FamilySpec("gln", 3, 2, -1)]
    for spec in specs:
        rep = fuzz.antiinvolution_fuzz(families.build_presentation(spec), 500)
        checks.append(Check(rep.summary(), rep.ok))
    r2, _ = families.gl_central_elements(2)
    for b0, b1 in ((1, 0), (0, 1), (1, 1)):
        lift = families.central_lift_search(families.FamilySpec("gln", 2, b0, b1), r2, 2)
        checks.append(Check(f"central lift of r_2, beta=({b0},{b1})", lift is not None, str(lift)))
    return checks


def engine_soundness() -> list[Check]:
    checks = []
    presentations = [sl2.hz_presentation(z) for z in TEST_Z]
    presentations += [families.build_presentation(s) for s in (
        families.FamilySpec("sp2n", 1), families.FamilySpec("sp2n", 2, 1),
        families.FamilySpec("gln", 2, 1, 1), families.FamilySpec("gln", 3, 2, -1))]
    for pres in presentations:
        rep = fuzz.associativity_fuzz(pres, 1000)
        checks.append(Check(rep.summary(), rep.ok))
        rep = fuzz.serialization_fuzz(pres, 200)
        checks.append(Check(rep.summary(), rep.ok))
    for z in TEST_Z:
        checks.append(Check(f"polynomial round trip {z.format()}", Poly.from_json(z.to_json()) == z))
    spec = families.FamilySpec("gln", 3, Fraction(1, 2), -2)
    checks.append(Check("family spec round trip", families.FamilySpec.from_json(spec.to_json()) == spec))
    M = verma.VermaModule(Fraction(-1, 2), 1, depth=6)
    v = M.act(verma.y2f(M.pres), M.highest())
    checks.append(Check("module vector round trip", M.vector_from_json(M.vector_to_json(v)) == v))
    t = sl2.tz(T ** 2)
    checks.append(Check("t_z round trip", deserialize(serialize(t), t.pres) == t))
    return checks


CRITERIA = [
    (1, "f_n/g_n consistency and leading data", fg_consistency, 5),
    (2, "[Delta^n, x] and [Delta^n, y] formulas", commutator_formulas, 10),
    (3, "centrality of t_z", centrality, 30),
    (4, "z0 and q_z leading data", leading_data, 10),
    (5, "Verma eigenvalue of t_z", verma_eigenvalue, 10),
    (6, "z=1 structure theorem", z1_structure, 60),
    (7, "finite-dimensionality", finite_dimensionality, 10),
    (8, "abelianization certificates", abelianization, 300),
    (9, "sp2n and gl_n families", families_check, 120),
    (10, "engine soundness", engine_soundness, 600),
]


def run_criterion(number: int) -> CriterionResult:
    for num, title, fn, budget in CRITERIA:
        if num == number:
            res = CriterionResult(num, title, budget)
            start = time.perf_counter()
            try:
                res.checks = fn()
            except InfHeckeError as exc:
                res.error = f"{type(exc).__name__}: {exc}"
            res.elapsed = time.perf_counter() - start
            return res
    raise KeyError(number)


def run_all(numbers=None) -> list[CriterionResult]:
    numbers = sorted(numbers or [c[0] for c in CRITERIA])
    return [run_criterion(n) for n in numbers]
