"""Univariate polynomials over the rationals, and the ring Q[T][s]/(s^2 - (T+1)).

``Poly`` is used for every polynomial in the Casimir element (z, f_n, g_n,
q_z, z0, the central character) and also for polynomials in a weight
variable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import UsageError


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: every quantity in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise UsageError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise UsageError(f"not an exact rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    if not s:
        raise UsageError("empty rational literal")
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    num, sep, den = s.partition("/")
    if not num.isdigit() or (sep and not den.isdigit()):
        raise UsageError(f"malformed rational literal: {text!r}")
    d = int(den) if sep else 1
    if d == 0:
        raise UsageError(f"zero denominator in {text!r}")
    return Fraction(sign * int(num), d)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Poly:
    """Dense univariate polynomial with Fraction coefficients, ascending order.

    Trailing zeros are trimmed, so ``coeffs == ()`` is the zero polynomial,
    whose degree is ``-1`` (used as the minus-infinity sentinel).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Poly":
        return cls([0] * degree + [coeff])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(as_fraction(other))

    def __add__(self, other) -> "Poly":
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        o = self._coerce(other)
        if not self.coeffs or not o.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise UsageError("negative power of a polynomial")
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - other.degree, 0)
        for k in range(len(rem) - 1, other.degree - 1, -1):
            c = rem[k] / other.lead
            if c:
                q[k - other.degree] = c
                for i, b in enumerate(other.coeffs):
                    rem[k - other.degree + i] -= c * b
        return Poly(q), Poly(rem)

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a number, a Poly or any ring element."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return Fraction(0) if not isinstance(x, Poly) else Poly()
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def to_json(self, var: str = "Delta") -> dict:
        return {"var": var, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Poly":
        try:
            return cls(parse_rational(c) for c in data["coeffs"])
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed polynomial JSON: {exc}") from exc

    def format(self, var: str = "Delta") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = format_rational(mag)
            else:
                pw = var if i == 1 else f"{var}^{i}"
                body = pw if mag == 1 else f"{format_rational(mag)}*{pw}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self.format('T')})"


T = Poly([0, 1])


class SqrtRingElement:
    """Element p + q*s of Q[T][s]/(s^2 - (T+1))."""

    __slots__ = ("p", "q")

    def __init__(self, p: Poly | int = 0, q: Poly | int = 0):
        self.p = p if isinstance(p, Poly) else Poly.const(p)
        self.q = q if isinstance(q, Poly) else Poly.const(q)

    def __add__(self, other: "SqrtRingElement") -> "SqrtRingElement":
        return SqrtRingElement(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "SqrtRingElement") -> "SqrtRingElement":
        return SqrtRingElement(self.p - other.p, self.q - other.q)

    def __mul__(self, other) -> "SqrtRingElement":
        if not isinstance(other, SqrtRingElement):
            other = SqrtRingElement(other if isinstance(other, Poly) else Poly.const(other))
        # s^2 = T + 1
        return SqrtRingElement(
            self.p * other.p + self.q * other.q * (T + 1),
            self.p * other.q + self.q * other.p,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SqrtRingElement":
        result, base = SqrtRingElement(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, SqrtRingElement) and self.p == other.p and self.q == other.q

    def __repr__(self) -> str:
        return f"({self.p.format('T')}) + ({self.q.format('T')})*s"


S = SqrtRingElement(0, 1)


def poly_sum(polys: Sequence[Poly]) -> Poly:
    acc = Poly()
    for p in polys:
        acc = acc + p
    return acc
