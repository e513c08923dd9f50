"""Randomised consistency checks for presentations.

Straightening with pairwise rules is only well defined when the rules are
confluent, which for a Lie-type presentation amounts to the Jacobi identity
on every triple of generators.  Rather than trusting that, we multiply random
triples both ways and compare.  The anti-involution gets the same treatment:
j(ab) must equal j(b) j(a) and j must square to the identity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import Element, Presentation, apply_antiinvolution, deserialize, serialize
from .errors import UsageError

DEFAULT_SEED = 20240601


def random_element(pres: Presentation, rng: random.Random, max_terms: int = 3, max_degree: int = 3) -> Element:
    """A sparse element with small rational coefficients."""
    terms: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = [0] * pres.ngens
        for _ in range(rng.randint(0, max_degree)):
            mono[rng.randrange(pres.ngens)] += 1
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        if c:
            terms[tuple(mono)] = terms.get(tuple(mono), 0) + c
    return pres.element({m: c for m, c in terms.items() if c})


@dataclass
class FuzzReport:
    check: str
    algebra: str
    trials: int
    seed: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.failures)} failures"
        return f"{self.check} on {self.algebra}: {self.trials} trials, seed {self.seed}, {status}"

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "algebra": self.algebra,
            "trials": self.trials,
            "seed": self.seed,
            "ok": self.ok,
            "failures": [[serialize(a) for a in f] for f in self.failures[:5]],
        }


def associativity_fuzz(pres: Presentation, trials: int = 1000, seed: int = DEFAULT_SEED,
                       max_degree: int = 3) -> FuzzReport:
    rng = random.Random(seed)
    report = FuzzReport("associativity", pres.algebra_id, trials, seed)
    for _ in range(trials):
        a, b, c = (random_element(pres, rng, max_degree=max_degree) for _ in range(3))
        if (a * b) * c != a * (b * c):
            report.failures.append((a, b, c))
    return report


def antiinvolution_fuzz(pres: Presentation, trials: int = 500, seed: int = DEFAULT_SEED,
                        max_degree: int = 3) -> FuzzReport:
    if not pres.has_anti_involution:
        raise UsageError(f"{pres.algebra_id} carries no anti-involution")
    rng = random.Random(seed)
    report = FuzzReport("anti-involution", pres.algebra_id, trials, seed)
    j = apply_antiinvolution
    for _ in range(trials):
        a, b = (random_element(pres, rng, max_degree=max_degree) for _ in range(2))
        if j(a * b) != j(b) * j(a) or j(j(a)) != a:
            report.failures.append((a, b))
    return report


def serialization_fuzz(pres: Presentation, trials: int = 200, seed: int = DEFAULT_SEED) -> FuzzReport:
    rng = random.Random(seed)
    report = FuzzReport("serialization", pres.algebra_id, trials, seed)
    for _ in range(trials):
        a = random_element(pres, rng, max_terms=5, max_degree=5)
        if deserialize(serialize(a), pres) != a:
            report.failures.append((a,))
    return report
