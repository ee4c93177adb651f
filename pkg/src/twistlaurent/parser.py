"""Expression language: tokenizer, AST, and recursive-descent parser.

Precedence (tightest first): power, unary minus, * and /, + and -.
Binary operators associate left; a power takes a single integer or
parenthesized rational exponent, e.g. ``x1^2``, ``x1^-1``, ``x1^(1/2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

KNOWN_FUNCTIONS = {
    "inv": 1,
    "root": 2,
    "towerroot": 1,
    "val": 1,
    "lead": 1,
    "comm": 2,
    "inH1M": 1,
    "kummer": 1,
    "central": 1,
}


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: Fraction


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


@dataclass(frozen=True)
class Let:
    name: str
    expr: object


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),=]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}", pos)
            break
        if m.group("num"):
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.next()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", pos)

    def at_op(self, *ops) -> bool:
        kind, value, _ = self.peek()
        return kind == "op" and value in ops

    # -- grammar -------------------------------------------------------------

    def statement(self):
        kind, value, _ = self.peek()
        if kind == "name" and value == "let":
            self.next()
            nkind, name, npos = self.next()
            if nkind != "name":
                raise ParseError("expected a name after 'let'", npos)
            if name in KNOWN_FUNCTIONS or name == "w" or name == "let":
                raise ParseError(f"{name!r} is reserved", npos)
            self.expect_op("=")
            node = Let(name, self.expr())
        else:
            node = self.expr()
        kind, value, pos = self.peek()
        if kind is not None:
            raise ParseError(f"unexpected trailing input {value!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while self.at_op("+", "-"):
            op = self.next()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.at_op("*", "/"):
            op = self.next()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        if self.at_op("-"):
            self.next()
            return Neg(self.factor())
        return self.power()

    def power(self):
        base = self.atom()
        if self.at_op("^"):
            self.next()
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> Fraction:
        sign = 1
        if self.at_op("-"):
            self.next()
            sign = -1
        kind, value, pos = self.peek()
        if kind == "num":
            self.next()
            return Fraction(sign * int(value))
        if kind == "op" and value == "(":
            if sign < 0:
                raise ParseError("put the sign inside the parentheses", pos)
            self.next()
            s = 1
            if self.at_op("-"):
                self.next()
                s = -1
            nkind, num, npos = self.next()
            if nkind != "num":
                raise ParseError("expected a number in the exponent", npos)
            den = 1
            if self.at_op("/"):
                self.next()
                dkind, dval, dpos = self.next()
                if dkind != "num":
                    raise ParseError("expected a denominator", dpos)
                den = int(dval)
                if den == 0:
                    raise ParseError("zero denominator", dpos)
            self.expect_op(")")
            return Fraction(s * int(num), den)
        raise ParseError("expected an exponent", pos)

    def atom(self):
        kind, value, pos = self.next()
        if kind == "num":
            return Num(Fraction(int(value)))
        if kind == "name":
            if self.at_op("("):
                self.next()
                args = []
                if not self.at_op(")"):
                    args.append(self.expr())
                    while self.at_op(","):
                        self.next()
                        args.append(self.expr())
                self.expect_op(")")
                if value not in KNOWN_FUNCTIONS:
                    raise ParseError(f"unknown function {value!r}", pos)
                if len(args) != KNOWN_FUNCTIONS[value]:
                    raise ParseError(
                        f"{value} takes {KNOWN_FUNCTIONS[value]} argument(s), got {len(args)}",
                        pos,
                    )
                return Call(value, tuple(args))
            return Name(value)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError("expected a value", pos)


def parse(text: str):
    """Parse one statement (an expression or ``let name = expr``)."""
    stripped = text.split("#", 1)[0].strip()
    if not stripped:
        return None
    return _Parser(stripped).statement()


def render(node) -> str:
    """Compact unparser used in error context messages."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Name):
        return node.ident
    if isinstance(node, Neg):
        return f"-{render(node.arg)}"
    if isinstance(node, BinOp):
        return f"({render(node.left)} {node.op} {render(node.right)})"
    if isinstance(node, Pow):
        e = node.exponent
        etxt = str(e) if e.denominator == 1 and e >= 0 else f"({e})"
        return f"{render(node.base)}^{etxt}"
    if isinstance(node, Call):
        return f"{node.func}({', '.join(render(a) for a in node.args)})"
    if isinstance(node, Let):
        return f"let {node.name} = {render(node.expr)}"
    return repr(node)
