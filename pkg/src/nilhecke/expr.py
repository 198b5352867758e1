"""Operator-expression parser and evaluator.

Grammar (``*`` and ``/`` bind tighter than ``+``/``-``, all left-associative)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := INT | "d"INT | "t"INT | "s"INT | "e" | "eP[" [INT ("," INT)*] "]"
            | "(" expr ")"

``d<i>`` is the Demazure operator, ``t<i>`` multiplication by ``t_i``,
``s<i>`` the embedded simple reflection, ``e`` the identity and ``eP[J]``
the averaging idempotent of the parabolic subgroup ``W_J``.  Division is
only by nonzero rational scalars.  The same grammar, restricted to numbers
and ``t<i>``, reads polynomials.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .polyring import Polynomial


class ParseError(ValueError):
    def __init__(self, message: str, source: str, position: int):
        self.message = message
        self.source = source
        self.position = position
        before = source[:position]
        self.line = before.count("\n") + 1
        self.column = position - (before.rfind("\n") + 1) + 1
        super().__init__(f"{message} at position {position} (line {self.line}, column {self.column})")


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int = 0


@dataclass(frozen=True)
class Atom:
    kind: str  # "d", "t", "s", "e", "eP"
    arg: Union[int, Tuple[int, ...], None]
    pos: int = 0


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: int = 0


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    pos: int = 0


Node = Union[Num, Atom, Neg, BinOp, Pow]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ep>eP\[)
  | (?P<gen>[dts])(?P<idx>\d+)
  | (?P<e>e)(?![A-Za-z0-9])
  | (?P<int>\d+)
  | (?P<op>[-+*/^(),\]])
    """,
    re.VERBOSE,
)


def _tokenize(src: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", src, pos)
        kind = m.lastgroup
        if kind == "idx":
            kind = "gen"
        if kind != "ws":
            tokens.append((kind, m.group(0), pos))
        pos = m.end()
    tokens.append(("eof", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        if tok[0] == "eof":
            msg = f"{msg}: unexpected end of input"
        else:
            msg = f"{msg}: unexpected {tok[1]!r}"
        raise ParseError(msg, self.src, tok[2])

    def expect(self, text):
        tok = self.peek()
        if tok[1] != text or tok[0] != "op":
            self.error(f"expected {text!r}")
        return self.next()

    def parse(self) -> Node:
        node = self.expr()
        if self.peek()[0] != "eof":
            self.error("trailing input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            tok = self.next()
            node = BinOp(tok[1], node, self.term(), tok[2])
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.next()
            node = BinOp(tok[1], node, self.unary(), tok[2])
        return node

    def unary(self) -> Node:
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.next()
            return Neg(self.unary(), tok[2])
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            tok = self.next()
            exp = self.peek()
            if exp[0] != "int":
                self.error("expected integer exponent")
            self.next()
            node = Pow(node, int(exp[1]), tok[2])
        return node

    def atom(self) -> Node:
        tok = self.peek()
        kind, text, pos = tok
        if kind == "int":
            self.next()
            return Num(Fraction(int(text)), pos)
        if kind == "gen":
            self.next()
            idx = int(text[1:])
            if idx < 1:
                raise ParseError(f"index must be >= 1 in {text!r}", self.src, pos)
            return Atom(text[0], idx, pos)
        if kind == "e":
            self.next()
            return Atom("e", None, pos)
        if kind == "ep":
            self.next()
            J = []
            if not (self.peek()[0] == "op" and self.peek()[1] == "]"):
                while True:
                    t = self.peek()
                    if t[0] != "int":
                        self.error("expected parabolic index")
                    self.next()
                    J.append(int(t[1]))
                    if self.peek()[0] == "op" and self.peek()[1] == ",":
                        self.next()
                        continue
                    break
            self.expect("]")
            return Atom("eP", tuple(J), pos)
        if kind == "op" and text == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        self.error("expected an operand")


def parse_expr(src: str) -> Node:
    """Parse an operator expression into an AST, raising :class:`ParseError` on bad input."""
    return _Parser(src).parse()


def evaluate(node: Node, nh, convention: str = "paper"):
    """Evaluate an AST to an element of the nil Hecke algebra ``nh``."""
    from .algebra import convention_sign
    from .parabolic import idempotent

    def ev(n):
        if isinstance(n, Num):
            return nh.scalar(n.value)
        if isinstance(n, Atom):
            if n.kind == "e":
                return nh.one()
            if n.kind == "t":
                if n.arg > nh.nvars:
                    raise EvaluationError(f"t{n.arg}: only {nh.nvars} variables")
                return nh.t(n.arg)
            if n.kind in ("d", "s") and n.arg > nh.group.rank:
                raise EvaluationError(f"{n.kind}{n.arg}: rank is {nh.group.rank}")
            if n.kind == "d":
                return nh.delta(n.arg).scale(convention_sign(1, convention))
            if n.kind == "s":
                return nh.embed_weyl(n.arg)
            if n.kind == "eP":
                try:
                    return idempotent(nh, n.arg)
                except ValueError as exc:
                    raise EvaluationError(str(exc)) from None
        if isinstance(n, Neg):
            return -ev(n.operand)
        if isinstance(n, Pow):
            return ev(n.base) ** n.exponent
        if isinstance(n, BinOp):
            a, b = ev(n.left), ev(n.right)
            if n.op == "+":
                return a + b
            if n.op == "-":
                return a - b
            if n.op == "*":
                return a * b
            if n.op == "/":
                c = _as_scalar(b)
                if c is None or c == 0:
                    raise EvaluationError("division is only by nonzero rational scalars")
                return a.scale(1 / c)
        raise EvaluationError(f"cannot evaluate {n!r}")

    return ev(node)


def _as_scalar(x):
    if isinstance(x, Polynomial):
        return x.constant_term() if x.is_constant() else None
    coeffs = getattr(x, "coeffs", None)
    if coeffs is None:
        return None
    if not coeffs:
        return Fraction(0)
    if set(coeffs) != {0} or not coeffs[0].is_constant():
        return None
    return coeffs[0].constant_term()


def evaluate_polynomial(node: Node, nvars: int) -> Polynomial:
    def ev(n):
        if isinstance(n, Num):
            return Polynomial.constant(nvars, n.value)
        if isinstance(n, Atom):
            if n.kind != "t":
                raise EvaluationError(f"operator atom {n.kind!r} in a polynomial")
            if n.arg > nvars:
                raise EvaluationError(f"t{n.arg}: only {nvars} variables")
            return Polynomial.variable(nvars, n.arg - 1)
        if isinstance(n, Neg):
            return -ev(n.operand)
        if isinstance(n, Pow):
            return ev(n.base) ** n.exponent
        if isinstance(n, BinOp):
            a, b = ev(n.left), ev(n.right)
            if n.op == "+":
                return a + b
            if n.op == "-":
                return a - b
            if n.op == "*":
                return a * b
            c = _as_scalar(b)
            if c is None or c == 0:
                raise EvaluationError("division is only by nonzero rational scalars")
            return a.scale(1 / c)
        raise EvaluationError(f"cannot evaluate {n!r}")

    return ev(node)


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    return evaluate_polynomial(parse_expr(text), nvars)


def to_source(node: Node) -> str:
    """Fully parenthesised source text for an AST."""
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"({v.numerator}/{v.denominator})"
    if isinstance(node, Atom):
        if node.kind == "e":
            return "e"
        if node.kind == "eP":
            return "eP[" + ",".join(map(str, node.arg)) + "]"
        return f"{node.kind}{node.arg}"
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, Pow):
        return f"({to_source(node.base)})^{node.exponent}"
    return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
