"""Expression language for the command line.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := rational | ident | '(' expr ')' | '[' expr ',' expr ']' | '-' factor

A rational literal is ``p`` or ``p/q``; a minus sign directly in front of a
literal (in operand position) belongs to the literal.  Square brackets denote
the commutator, so ``[Delta, x]`` is Delta*x - x*Delta.  Whitespace is
ignored.  Decimals are rejected: everything here is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import Element, Presentation, commutator
from .errors import UsageError
from .poly import Poly, T, format_rational


class ParseError(UsageError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.offset}^"


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Name:
    name: str
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Comm:
    left: object
    right: object


_PREC = {"+": 1, "-": 1, "*": 2}

_TOKEN = re.compile(r"(\d+\.\d*|\.\d+)|(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S)")
_SPACE = re.compile(r"\s*")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Tokens as (kind, value, offset); kind in {'int', 'ident', 'op', 'end'}."""
    out = []
    pos = 0
    while True:
        pos = _SPACE.match(text, pos).end()
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m.group(1):
            raise ParseError("decimal literals are not allowed", m.start(1), text)
        if m.group(2):
            out.append(("int", m.group(2), m.start(2)))
        elif m.group(3):
            out.append(("ident", m.group(3), m.start(3)))
        elif m.group(4):
            ch = m.group(4)
            if ch not in "+-*/^()[],":
                raise ParseError(f"unexpected character {ch!r}", m.start(4), text)
            out.append(("op", ch, m.start(4)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, msg: str, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, tok[2], self.text)

    def accept(self, value: str) -> bool:
        if self.tok[0] == "op" and self.tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str):
        if not self.accept(value):
            found = self.tok[1] or "end of input"
            self.error(f"expected {value!r}, found {found!r}")

    def parse(self):
        node = self.expr()
        if self.tok[0] != "end":
            self.error(f"unexpected {self.tok[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.tok[0] == "op" and self.tok[1] in "+-":
            op = self.tok[1]
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.accept("*"):
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.accept("^"):
            if self.tok[0] != "int":
                self.error("exponent must be a non-negative integer")
            exp = int(self.tok[1])
            self.i += 1
            node = Pow(node, exp)
        return node

    def rational(self, sign: int) -> Num:
        num = int(self.tok[1])
        self.i += 1
        den = 1
        if self.accept("/"):
            if self.tok[0] != "int":
                self.error("expected a denominator")
            den = int(self.tok[1])
            if den == 0:
                self.error("zero denominator")
            self.i += 1
        return Num(Fraction(sign * num, den))

    def atom(self):
        kind, value, pos = self.tok
        if kind == "int":
            return self.rational(1)
        if kind == "ident":
            self.i += 1
            return Name(value, pos)
        if self.accept("-"):
            if self.tok[0] == "int":
                return self.rational(-1)
            return Neg(self.factor())
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if self.accept("["):
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Comm(left, right)
        if kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {value!r}")


def parse(text: str):
    return _Parser(text).parse()


# -- printing ----------------------------------------------------------------


def to_text(node) -> str:
    """Canonical text; parse(to_text(a)) == a."""
    if isinstance(node, Num):
        return format_rational(node.value)
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Comm):
        return f"[{to_text(node.left)}, {to_text(node.right)}]"
    if isinstance(node, Neg):
        inner = node.operand
        # "-1/2" or "-2^3" would read back as a signed literal, and "-a*b" as -(a)*b
        text = to_text(inner)
        if isinstance(inner, (Num, BinOp)) or text[0].isdigit():
            return f"-({text})"
        return f"-{text}"
    if isinstance(node, Pow):
        base = node.base
        wrap = isinstance(base, (BinOp, Pow, Neg)) or (isinstance(base, Num) and (base.value < 0 or base.value.denominator != 1))
        b = f"({to_text(base)})" if wrap else to_text(base)
        return f"{b}^{node.exp}"
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        left = to_text(node.left)
        if isinstance(node.left, BinOp) and _PREC[node.left.op] < p:
            left = f"({left})"
        right = to_text(node.right)
        if isinstance(node.right, BinOp) and _PREC[node.right.op] <= p:
            right = f"({right})"
        if node.op == "*":
            return f"{left}*{right}"
        return f"{left} {node.op} {right}"
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation ----------------------------------------------------------------


def _named_constants(pres: Presentation) -> dict:
    """Identifiers beyond the generator names: Delta and t over sl2, tau over gl_n."""
    out = {}
    if set(pres.names) == {"e", "f", "h", "x", "y"}:
        from .sl2 import casimir, t_element

        out["Delta"] = lambda: casimir(pres)
        out["t"] = lambda: t_element(pres)
    elif any(n.startswith("vs_") for n in pres.names):
        from .families import tau

        out["tau"] = lambda: tau(pres)
    return out


def evaluate(node, pres: Presentation) -> Element:
    consts = _named_constants(pres)
    cache: dict = {}

    def ev(nd) -> Element:
        if isinstance(nd, Num):
            return pres.scalar(nd.value)
        if isinstance(nd, Name):
            if nd.name in pres.index:
                return pres.gen(nd.name)
            if nd.name in consts:
                if nd.name not in cache:
                    cache[nd.name] = consts[nd.name]()
                return cache[nd.name]
            raise ParseError(f"unknown identifier {nd.name!r}", nd.pos)
        if isinstance(nd, Neg):
            return -ev(nd.operand)
        if isinstance(nd, Pow):
            return ev(nd.base) ** nd.exp
        if isinstance(nd, Comm):
            return commutator(ev(nd.left), ev(nd.right))
        if isinstance(nd, BinOp):
            a, b = ev(nd.left), ev(nd.right)
            return a + b if nd.op == "+" else a - b if nd.op == "-" else a * b
        raise TypeError(f"not an expression node: {nd!r}")

    return ev(node)


def parse_element(text: str, pres: Presentation) -> Element:
    try:
        return evaluate(parse(text), pres)
    except ParseError as exc:
        exc.text = text
        raise


def evaluate_poly(node) -> Poly:
    """Evaluate an expression in the single variable Delta (also spelled T)."""
    if isinstance(node, Num):
        return Poly.const(node.value)
    if isinstance(node, Name):
        if node.name in ("Delta", "T"):
            return T
        raise ParseError(f"unknown identifier {node.name!r} (only Delta is allowed in z)", node.pos)
    if isinstance(node, Neg):
        return -evaluate_poly(node.operand)
    if isinstance(node, Pow):
        return evaluate_poly(node.base) ** node.exp
    if isinstance(node, Comm):
        evaluate_poly(node.left)
        evaluate_poly(node.right)
        return Poly()
    if isinstance(node, BinOp):
        a, b = evaluate_poly(node.left), evaluate_poly(node.right)
        return a + b if node.op == "+" else a - b if node.op == "-" else a * b
    raise TypeError(f"not an expression node: {node!r}")


def parse_poly(text: str) -> Poly:
    try:
        return evaluate_poly(parse(text))
    except ParseError as exc:
        exc.text = text
        raise
