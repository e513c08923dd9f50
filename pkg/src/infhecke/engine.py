"""PBW normal forms for algebras of the shape U(g) ⋉ TV modulo [v_i, v_j] = κ(v_i, v_j).

A :class:`Presentation` fixes an ordered generator list and, for every pair
out of order, the correction that straightening inserts.  :class:`Element`
values are always held in normal form: a dict from exponent tuples to
Fractions, with zero coefficients dropped.

The straightening kernel is compiled when the ``_kernel`` extension is
available and falls back to :mod:`infhecke._kernel_py` otherwise; set
``INFHECKE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import PresentationMismatch, UsageError
from .poly import as_fraction, format_rational, parse_rational

if os.environ.get("INFHECKE_PURE_PYTHON"):
    from ._kernel_py import Straightener
    KERNEL = "python"
else:
    try:
        from ._kernel import Straightener  # type: ignore[no-redef]
        KERNEL = "compiled"
    except ImportError:  # pragma: no cover - depends on the build
        from ._kernel_py import Straightener
        KERNEL = "python"

MIXED = "mixed"

LIE = "lie"
MODULE = "module"


@dataclass(frozen=True)
class Generator:
    name: str
    kind: str
    weight: Fraction


class Presentation:
    """Ordered generators plus straightening rules for one algebra.

    ``brackets`` maps a pair of generator names ``(a, b)`` to the normal form
    of ``[a, b]``, given as ``{exponent_tuple: coeff}`` or as an
    :class:`Element` of a presentation with the same generator list.  Pairs
    that are absent commute.  ``anti_involution`` maps each generator name to
    a list of ``(coeff, word)`` pairs, ``word`` being a tuple of names.
    """

    def __init__(
        self,
        algebra_id: str,
        generators: Sequence[Generator],
        brackets: Mapping[tuple[str, str], object],
        anti_involution: Mapping[str, Sequence[tuple[object, Sequence[str]]]] | None = None,
        grading: str | None = None,
    ):
        self.algebra_id = algebra_id
        self.generators = tuple(generators)
        self.names = tuple(g.name for g in self.generators)
        if len(set(self.names)) != len(self.names):
            raise UsageError("duplicate generator names")
        self.index = {name: i for i, name in enumerate(self.names)}
        self.ngens = len(self.generators)
        self.grading = grading
        self.weights = tuple(g.weight for g in self.generators)
        self.module_mask = tuple(g.kind == MODULE for g in self.generators)

        corrections: dict[tuple[int, int], dict] = {}
        self.brackets: dict[tuple[int, int], dict] = {}
        for (a, b), value in brackets.items():
            i, j = self._gen_index(a), self._gen_index(b)
            poly = self._coerce_terms(value)
            if i == j:
                if poly:
                    raise UsageError(f"[{a}, {a}] must vanish")
                continue
            # [g_i, g_j] = poly; for i > j the rule is g_i g_j = g_j g_i + [g_i, g_j]
            if i > j:
                corrections[(i, j)] = poly
            else:
                corrections[(j, i)] = {m: -c for m, c in poly.items()}
        self.corrections = corrections
        self.kernel = Straightener(self.ngens, corrections)

        self._anti: dict[int, dict] | None = None
        if anti_involution is not None:
            self._anti = {}
            for name in self.names:
                if name not in anti_involution:
                    raise UsageError(f"anti-involution table misses {name}")
                acc: dict = {}
                for coeff, word in anti_involution[name]:
                    nf = self.kernel.word([self._gen_index(w) for w in word])
                    c = as_fraction(coeff)
                    for m, v in nf.items():
                        _add_into(acc, m, c * v)
                self._anti[self.index[name]] = acc

    # -- helpers ---------------------------------------------------------
    def _gen_index(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UsageError(f"unknown generator {name!r} in {self.algebra_id}") from None

    def _coerce_terms(self, value) -> dict:
        if isinstance(value, Element):
            if value.pres.names != self.names:
                raise PresentationMismatch("bracket given in an incompatible presentation")
            return dict(value.terms)
        out: dict = {}
        for m, c in dict(value).items():
            m = tuple(m)
            if len(m) != self.ngens or any(e < 0 for e in m):
                raise UsageError(f"bad exponent vector {m}")
            _add_into(out, m, as_fraction(c))
        return out

    def unit_monomial(self, name: str | None = None, power: int = 1) -> tuple:
        lst = [0] * self.ngens
        if name is not None:
            lst[self._gen_index(name)] = power
        return tuple(lst)

    @property
    def has_anti_involution(self) -> bool:
        return self._anti is not None

    def __repr__(self) -> str:
        return f"Presentation({self.algebra_id!r}, {list(self.names)})"

    # -- element constructors -------------------------------------------
    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {self.kernel.unit: Fraction(1)})

    def scalar(self, c) -> "Element":
        c = as_fraction(c)
        return Element(self, {self.kernel.unit: c} if c else {})

    def gen(self, name: str) -> "Element":
        return Element(self, {self.unit_monomial(name): Fraction(1)})

    def gens(self, *names: str) -> tuple["Element", ...]:
        return tuple(self.gen(n) for n in names)

    def monomial(self, exps: Mapping[str, int] | Sequence[int], coeff=1) -> "Element":
        if isinstance(exps, Mapping):
            lst = [0] * self.ngens
            for name, e in exps.items():
                if int(e) < 0:
                    raise UsageError("negative exponent")
                lst[self._gen_index(name)] += int(e)
            mono = tuple(lst)
        else:
            mono = tuple(int(e) for e in exps)
        c = as_fraction(coeff)
        return Element(self, {mono: c} if c else {})

    def element(self, terms: Mapping) -> "Element":
        return Element(self, self._coerce_terms(terms))


def _add_into(acc: dict, mono, c) -> None:
    v = acc.get(mono, 0) + c
    if v:
        acc[mono] = v
    else:
        acc.pop(mono, None)


class Element:
    """Normal-form element; treat as immutable."""

    __slots__ = ("pres", "terms", "_hash")

    def __init__(self, pres: Presentation, terms: dict):
        self.pres = pres
        self.terms = terms
        self._hash = None

    # -- arithmetic ------------------------------------------------------
    def _same(self, other: "Element") -> None:
        if other.pres is not self.pres:
            raise PresentationMismatch(
                f"{self.pres.algebra_id} vs {other.pres.algebra_id}"
            )

    def _lift(self, other) -> "Element":
        if isinstance(other, Element):
            self._same(other)
            return other
        return self.pres.scalar(other)

    def __add__(self, other) -> "Element":
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(out, m, c)
        return Element(self.pres, out)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element(self.pres, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Element":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Element":
        return self._lift(other) - self

    def __mul__(self, other) -> "Element":
        if isinstance(other, Element):
            return multiply(self, other)
        c = as_fraction(other)
        if not c:
            return self.pres.zero()
        return Element(self.pres, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, other) -> "Element":
        return self * other

    def __truediv__(self, other) -> "Element":
        return self * (1 / as_fraction(other))

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise UsageError("negative power")
        result, base = self.pres.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.pres.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return other.pres is self.pres and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.pres.algebra_id, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    # -- inspection ------------------------------------------------------
    def coeff(self, exps: Mapping[str, int] | tuple) -> Fraction:
        mono = self.pres.monomial(exps).terms if isinstance(exps, Mapping) else {tuple(exps): 1}
        (m,) = mono.keys()
        return self.terms.get(m, Fraction(0))

    def scalar_part(self) -> Fraction:
        return self.terms.get(self.pres.kernel.unit, Fraction(0))

    def is_scalar(self) -> bool:
        return all(not any(m) for m in self.terms)

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: (-sum(mc[0]), tuple(-e for e in mc[0])))

    def format(self) -> str:
        if not self.terms:
            return "0"
        names = self.pres.names
        out = ""
        for idx, (mono, c) in enumerate(self.sorted_terms()):
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if factors:
                body = "*".join(factors)
                if mag != 1:
                    body = f"{format_rational(mag)}*{body}"
            else:
                body = format_rational(mag)
            if idx == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    __str__ = format

    def __repr__(self) -> str:
        return f"<{self.pres.algebra_id}: {self.format()}>"


# ---------------------------------------------------------------------------
# Operations


def normal_form(word: Iterable[str], pres: Presentation) -> Element:
    """Normal form of the product of the generators named in ``word``."""
    idx = [pres._gen_index(name) for name in word]
    return Element(pres, dict(pres.kernel.word(idx)))


def multiply(a: Element, b: Element) -> Element:
    a._same(b)
    return Element(a.pres, a.pres.kernel.mul(a.terms, b.terms))


def commutator(a: Element, b: Element) -> Element:
    a._same(b)
    k = a.pres.kernel
    ab = k.mul(a.terms, b.terms)
    for m, c in k.mul(b.terms, a.terms).items():
        _add_into(ab, m, -c)
    return Element(a.pres, ab)


def ad_power(a: Element, n: int, target: Element) -> Element:
    if n < 0:
        raise UsageError("ad_power needs n >= 0")
    out = target
    for _ in range(n):
        out = commutator(a, out)
    return out


def monomial_weight(pres: Presentation, mono: tuple) -> Fraction:
    return sum((w * e for w, e in zip(pres.weights, mono) if e), Fraction(0))


def weight_of(a: Element):
    """Common grading weight of all monomials, :data:`MIXED`, or None for zero."""
    ws = {monomial_weight(a.pres, m) for m in a.terms}
    if not ws:
        return None
    if len(ws) > 1:
        return MIXED
    return ws.pop()


def monomial_degrees(pres: Presentation, mono: tuple) -> tuple[int, int]:
    v = sum(e for e, is_mod in zip(mono, pres.module_mask) if is_mod)
    return v, sum(mono)


def filtration_degrees(a: Element) -> tuple[int, int]:
    """(max module-generator degree, max total degree) over the monomials of ``a``."""
    if not a.terms:
        raise UsageError("filtration degrees of the zero element are undefined")
    pairs = [monomial_degrees(a.pres, m) for m in a.terms]
    return max(p[0] for p in pairs), max(p[1] for p in pairs)


def apply_antiinvolution(a: Element) -> Element:
    pres = a.pres
    if pres._anti is None:
        raise UsageError(f"{pres.algebra_id} carries no anti-involution")
    k = pres.kernel
    out: dict = {}
    for mono, c in a.terms.items():
        img = {k.unit: c}
        # j(g_1^a_1 ... g_r^a_r) = j(g_r)^a_r ... j(g_1)^a_1
        for i in range(pres.ngens - 1, -1, -1):
            for _ in range(mono[i]):
                img = k.mul(img, pres._anti[i])
        for m, v in img.items():
            _add_into(out, m, v)
    return Element(pres, out)


def to_json(a: Element) -> dict:
    names = a.pres.names
    terms = []
    for mono, c in a.sorted_terms():
        terms.append({
            "exp": {n: e for n, e in zip(names, mono) if e},
            "coeff": format_rational(c),
        })
    return {"algebra": a.pres.algebra_id, "terms": terms}


def serialize(a: Element) -> str:
    return json.dumps(to_json(a), sort_keys=True)


def from_json(data, pres: Presentation) -> Element:
    if not isinstance(data, dict) or not isinstance(data.get("terms"), list):
        raise UsageError("element JSON needs a 'terms' list")
    algebra = data.get("algebra")
    if algebra is not None and algebra != pres.algebra_id:
        raise PresentationMismatch(f"element is for {algebra!r}, not {pres.algebra_id!r}")
    out: dict = {}
    for term in data["terms"]:
        try:
            exps = term["exp"]
            coeff = term["coeff"]
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed term {term!r}") from exc
        if not isinstance(coeff, str):
            raise UsageError(f"coefficient must be a 'p/q' string, got {coeff!r}")
        if not isinstance(exps, dict) or not all(
            isinstance(e, int) and not isinstance(e, bool) for e in exps.values()
        ):
            raise UsageError(f"malformed exponent map {exps!r}")
        mono = pres.monomial(exps).terms
        (m,) = mono.keys()
        _add_into(out, m, parse_rational(coeff))
    return Element(pres, out)


def deserialize(text: str, pres: Presentation) -> Element:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc
    return from_json(data, pres)


def transfer(a: Element, target: Presentation) -> Element:
    """Re-express ``a`` in another presentation of the same algebra (matched by name)."""
    k = target.kernel
    out: dict = {}
    for mono, c in a.terms.items():
        word = []
        for name, e in zip(a.pres.names, mono):
            word.extend([target._gen_index(name)] * e)
        for m, v in k.word(word).items():
            _add_into(out, m, c * v)
    return Element(target, out)


def linear_combination(pres: Presentation, pairs: Iterable[tuple[object, Element]]) -> Element:
    out: dict = {}
    for c, el in pairs:
        c = as_fraction(c)
        for m, v in el.terms.items():
            _add_into(out, m, c * v)
    return Element(pres, out)
