"""Evaluation of parsed expressions against a configured ring session."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import cyclo, obstruction, parser, roots, series
from .cyclo import CycloNum
from .errors import EvalError, KernelError
from .exponents import ExponentVec, RingSig
from .parser import BinOp, Call, Let, Name, Neg, Num, Pow
from .series import TwistedSeries

_VAR_RE = re.compile(r"^([xy])([1-9][0-9]*)$")


@dataclass
class Session:
    """One configured ring plus named bindings; reconfiguring the ring
    drops all bindings (values never cross signatures)."""

    sig: RingSig
    seed: int = 0
    output_format: str = "text"
    bindings: dict[str, TwistedSeries] = field(default_factory=dict)

    def __post_init__(self):
        if self.output_format != "text":
            raise ValueError(f"unsupported output format {self.output_format!r}")

    def set_sig(self, sig: RingSig):
        self.sig = sig
        self.bindings = {}


def _lookup(session: Session, ident: str) -> TwistedSeries:
    sig = session.sig
    if ident == "w":
        return TwistedSeries.scalar(sig, cyclo.omega(sig.m))
    m = _VAR_RE.match(ident)
    if m:
        i = int(m.group(2))
        if i > sig.r:
            raise EvalError(f"variable {ident} outside this ring (r = {sig.r})")
        return TwistedSeries.gen_x(sig, i) if m.group(1) == "x" else TwistedSeries.gen_y(sig, i)
    if ident in session.bindings:
        return session.bindings[ident]
    raise EvalError(f"unknown identifier {ident!r}")


def _need_series(value, what: str) -> TwistedSeries:
    if not isinstance(value, TwistedSeries):
        raise EvalError(f"{what} needs a series value")
    return value


def _need_int(value, what: str) -> int:
    if isinstance(value, TwistedSeries):
        if value.is_zero():
            raise EvalError(f"{what} must be a positive integer")
        vec = value.val()
        if vec.is_zero() and len(value.terms) == 1:
            q = value.terms[vec].as_rational()
            if q is not None and q.denominator == 1 and q > 0:
                return int(q)
    raise EvalError(f"{what} must be a positive integer")


def _monomial_power(f: TwistedSeries, q: Fraction) -> TwistedSeries:
    if len(f.terms) != 1:
        raise EvalError("fractional powers apply to monomials only")
    vec, c = next(iter(f.terms.items()))
    new_vec = f.sig.exponent([v * q for v in vec.values()])
    if c == 1:
        new_c: CycloNum = cyclo.one(f.sig.m)
    else:
        new_c, _ = cyclo.const_root(cyclo.pow_(c, q.numerator), q.denominator)
    return TwistedSeries.monomial(f.sig, new_c, new_vec)


def _call(session: Session, node: Call):
    args = [_eval(session, a) for a in node.args]
    name = node.func
    if name == "inv":
        return _need_series(args[0], "inv").inv()
    if name == "root":
        return roots.general_root(_need_series(args[0], "root"), _need_int(args[1], "root index"))
    if name == "towerroot":
        return roots.tower_pth_root(_need_series(args[0], "towerroot"))
    if name == "val":
        return _need_series(args[0], "val").val()
    if name == "lead":
        f = _need_series(args[0], "lead")
        alpha = f.val()
        return TwistedSeries.monomial(f.sig, f.terms[alpha], alpha)
    if name == "comm":
        return obstruction.commutator(
            _need_series(args[0], "comm"), _need_series(args[1], "comm")
        )
    if name == "inH1M":
        return obstruction.in_omega_one_plus_M(_need_series(args[0], "inH1M"))
    if name == "kummer":
        return obstruction.kummer_class(_need_series(args[0], "kummer"))
    if name == "central":
        return _need_series(args[0], "central").is_central()
    raise EvalError(f"unknown function {name!r}")


def _eval(session: Session, node):
    sig = session.sig
    if isinstance(node, Num):
        return TwistedSeries.scalar(sig, node.value)
    if isinstance(node, Name):
        return _lookup(session, node.ident)
    if isinstance(node, Neg):
        v = _eval(session, node.arg)
        if isinstance(v, TwistedSeries):
            return -v
        raise EvalError("cannot negate a non-series value")
    if isinstance(node, BinOp):
        left = _need_series(_eval(session, node.left), f"operator {node.op}")
        right = _need_series(_eval(session, node.right), f"operator {node.op}")
        try:
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return left * right
            if node.op == "/":
                return left * right.inv()
        except KernelError as e:
            raise type(e)(f"{e} [in {parser.render(node)}]") from None
        raise EvalError(f"unknown operator {node.op!r}")
    if isinstance(node, Pow):
        base = _need_series(_eval(session, node.base), "power")
        e = node.exponent
        try:
            if e.denominator == 1:
                return base ** int(e)
            return _monomial_power(base, e)
        except KernelError as err:
            raise type(err)(f"{err} [in {parser.render(node)}]") from None
    if isinstance(node, Call):
        try:
            return _call(session, node)
        except KernelError as e:
            raise type(e)(f"{e} [in {parser.render(node)}]") from None
    raise EvalError(f"cannot evaluate {node!r}")


def eval_node(session: Session, node):
    """Evaluate a parsed statement; ``let`` stores and returns the value."""
    if isinstance(node, Let):
        value = _eval(session, node.expr)
        if not isinstance(value, TwistedSeries):
            raise EvalError("only series values can be bound")
        session.bindings[node.name] = value
        return value
    return _eval(session, node)


def eval_statement(session: Session, text: str):
    """Parse and evaluate one statement; None for blank/comment lines."""
    node = parser.parse(text)
    if node is None:
        return None
    return eval_node(session, node)


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, TwistedSeries):
        return series.to_text(value)
    if isinstance(value, ExponentVec):
        return "(" + ", ".join(str(v) for v in value.values()) + ")"
    if isinstance(value, obstruction.KummerClass):
        return (
            f"kummer(r={value.r_mod} mod {value.modulus}, "
            f"s={value.s_mod} mod {value.modulus}, unit={value.disposition})"
        )
    if isinstance(value, str):
        return value
    raise EvalError(f"unformattable value {value!r}")
