"""Twisted truncated Laurent series: normal-ordered monomial tables with a
phase cocycle, conservative precision, valuations and leading terms.

A series is a finite map exponent -> coefficient together with a precision
``prec`` (a weighted-degree bound): every stored coefficient is exact, and
every omitted exponent of weighted degree < prec really has coefficient 0.
Exact elements (finite support, nothing omitted) carry ``prec = inf``.
Operations only ever shrink precision, never report a wrong coefficient.

Values are immutable; nothing here mutates shared state.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction

from . import cyclo
from .cyclo import CycloNum
from .errors import GradingError, SignatureMismatch, ZeroValuation
from .exponents import ExponentVec, RingSig, lex_cmp, phase

INF = math.inf


def _as_coeff(c) -> CycloNum:
    if isinstance(c, CycloNum):
        return c
    return CycloNum.from_rational(Fraction(c))


class TwistedSeries:
    __slots__ = ("sig", "terms", "prec")

    def __init__(self, sig: RingSig, terms, prec=INF):
        clean: dict[ExponentVec, CycloNum] = {}
        for vec, c in terms.items():
            if vec.sig != sig:
                raise SignatureMismatch("term exponent from a different signature")
            c = _as_coeff(c)
            if c and vec.wdeg < prec:
                clean[vec] = c
        self.sig = sig
        self.terms = clean
        self.prec = prec

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, sig: RingSig) -> "TwistedSeries":
        return cls(sig, {})

    @classmethod
    def one(cls, sig: RingSig) -> "TwistedSeries":
        return cls(sig, {sig.zero_vec(): cyclo.one(sig.m)})

    @classmethod
    def scalar(cls, sig: RingSig, c) -> "TwistedSeries":
        return cls(sig, {sig.zero_vec(): _as_coeff(c)})

    @classmethod
    def monomial(cls, sig: RingSig, c, vec: ExponentVec) -> "TwistedSeries":
        return cls(sig, {vec: _as_coeff(c)})

    @classmethod
    def gen_x(cls, sig: RingSig, i: int) -> "TwistedSeries":
        return cls.monomial(sig, 1, sig.x_vec(i))

    @classmethod
    def gen_y(cls, sig: RingSig, i: int) -> "TwistedSeries":
        return cls.monomial(sig, 1, sig.y_vec(i))

    # -- basic queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coeff(self, vec: ExponentVec) -> CycloNum:
        c = self.terms.get(vec)
        return c if c is not None else cyclo.zero(self.sig.m)

    def min_wdeg(self):
        """Least weighted degree of the stored support (prec when empty)."""
        if not self.terms:
            return self.prec
        return min(v.wdeg for v in self.terms)

    def val(self) -> ExponentVec:
        """Lex-minimum of the support."""
        if not self.terms:
            raise ZeroValuation("the zero series has no valuation")
        it = iter(self.terms)
        best = next(it)
        for v in it:
            if lex_cmp(v, best) < 0:
                best = v
        return best

    def truncate(self, prec) -> "TwistedSeries":
        if prec >= self.prec:
            return self
        return TwistedSeries(self.sig, self.terms, prec)

    # -- ring operations ---------------------------------------------------------

    def _check(self, other: "TwistedSeries"):
        if self.sig != other.sig:
            raise SignatureMismatch("series from different ring signatures")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            other = TwistedSeries.scalar(self.sig, other)
        if not isinstance(other, TwistedSeries):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for vec, c in other.terms.items():
            cur = out.get(vec)
            s = c if cur is None else cur + c
            if s:
                out[vec] = s
            elif cur is not None:
                del out[vec]
        return TwistedSeries(self.sig, out, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return TwistedSeries(self.sig, {v: -c for v, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            other = TwistedSeries.scalar(self.sig, other)
        if not isinstance(other, TwistedSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scalar_mul(self, c) -> "TwistedSeries":
        c = _as_coeff(c)
        if not c:
            return TwistedSeries(self.sig, {}, self.prec)
        return TwistedSeries(self.sig, {v: c * cv for v, cv in self.terms.items()}, self.prec)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            return self.scalar_mul(other)
        if not isinstance(other, TwistedSeries):
            return NotImplemented
        self._check(other)
        out_prec = min(self.prec + other.min_wdeg(), other.prec + self.min_wdeg())
        twisted = self.sig.twisted
        out: dict[ExponentVec, CycloNum] = {}
        for va, ca in self.terms.items():
            wa = va.wdeg
            for vb, cb in other.terms.items():
                if wa + vb.wdeg >= out_prec:
                    continue
                vec = va + vb
                c = ca * cb
                if twisted:
                    ph = phase(va, vb)
                    if ph != 1:
                        c = c * ph
                cur = out.get(vec)
                s = c if cur is None else cur + c
                if s:
                    out[vec] = s
                elif cur is not None:
                    del out[vec]
        return TwistedSeries(self.sig, out, out_prec)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            return self.scalar_mul(other)
        return NotImplemented

    def __pow__(self, n: int) -> "TwistedSeries":
        if n < 0:
            return self.inv() ** (-n)
        result = TwistedSeries.one(self.sig)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- leading structure ------------------------------------------------------

    def decompose(self) -> tuple[CycloNum, ExponentVec, "TwistedSeries"]:
        """Write f = c * X^alpha * (1 + d) with alpha = val(f), val(d) > 0."""
        alpha = self.val()
        c = self.terms[alpha]
        lead_inv = cyclo.inv(c * phase(alpha, -alpha))
        one_plus_d = TwistedSeries.monomial(self.sig, lead_inv, -alpha) * self
        d = one_plus_d - 1
        return c, alpha, d

    def inv(self) -> "TwistedSeries":
        """Inverse via the geometric series on the 1+d part; the session
        truncation level caps the expansion of genuinely infinite inverses."""
        c, alpha, d = self.decompose()
        mono_inv = TwistedSeries.monomial(
            self.sig, cyclo.inv(c * phase(alpha, -alpha)), -alpha
        )
        if d.is_zero():
            return mono_inv.truncate(d.prec + (-alpha).wdeg if d.prec != INF else INF)
        target = min(d.prec, self.sig.N)
        for v in d.terms:
            if v.wdeg <= 0:
                raise GradingError(
                    "tail term with nonpositive weighted degree; raise the radix"
                )
        acc = TwistedSeries.one(self.sig).truncate(target)
        cur = (-d).truncate(target)
        while cur.terms:
            acc = acc + cur
            cur = (cur * (-d)).truncate(target)
        return (acc * mono_inv).truncate(target + (-alpha).wdeg)

    # -- comparisons ------------------------------------------------------------

    def eq_to_prec(self, other: "TwistedSeries") -> bool:
        """Coefficientwise equality below the smaller precision."""
        self._check(other)
        bound = min(self.prec, other.prec)
        for vec in self.terms.keys() | other.terms.keys():
            if vec.wdeg >= bound:
                continue
            if self.coeff(vec) != other.coeff(vec):
                return False
        return True

    def is_central(self) -> bool:
        """Whether f commutes with every generator x_i, y_i.

        Conjugation by a generator rescales each monomial in place, so f is
        central exactly when each support exponent has all pair coordinates
        divisible by the pair's index.
        """
        if not self.sig.twisted:
            return True
        for vec in self.terms:
            for i, n_i in enumerate(self.sig.indices):
                if vec.numerators[2 * i] % n_i or vec.numerators[2 * i + 1] % n_i:
                    return False
        return True

    # -- rendering ----------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[ExponentVec, CycloNum]]:
        return sorted(
            self.terms.items(), key=functools.cmp_to_key(lambda a, b: lex_cmp(a[0], b[0]))
        )

    def __repr__(self):
        return f"TwistedSeries({to_text(self)!r}, prec={self.prec})"


# ---------------------------------------------------------------------------
# canonical text form (consumed by the CLI; ascending lex exponents)


def _exp_text(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v) if v >= 0 else f"({v})"
    return f"({v})"


def _monomial_text(vec: ExponentVec) -> str:
    parts = []
    vals = vec.values()
    for i in range(vec.sig.r):
        for name, v in ((f"x{i + 1}", vals[2 * i]), (f"y{i + 1}", vals[2 * i + 1])):
            if v == 0:
                continue
            parts.append(name if v == 1 else f"{name}^{_exp_text(v)}")
    return "*".join(parts)


def _term_text(vec: ExponentVec, c: CycloNum) -> tuple[int, str]:
    """(sign, body) with the sign pulled out when the coefficient is a
    single w-monomial; multi-term coefficients stay parenthesized."""
    mono = _monomial_text(vec)
    nonzero = [k for k, q in enumerate(c.coeffs) if q]
    if len(nonzero) == 1:
        k = nonzero[0]
        q = c.coeffs[k]
        sign = 1 if q > 0 else -1
        q = abs(q)
        if k == 0:
            coeff_body = str(q)
        else:
            wpart = "w" if k == 1 else f"w^{k}"
            coeff_body = wpart if q == 1 else f"{q}*{wpart}"
        if not mono:
            return sign, coeff_body
        if coeff_body == "1":
            return sign, mono
        return sign, f"{coeff_body}*{mono}"
    body = f"({cyclo.to_text(c)})"
    return 1, body if not mono else f"{body}*{mono}"


def to_text(f: TwistedSeries) -> str:
    if not f.terms:
        return "0"
    chunks = []
    for vec, c in f.sorted_terms():
        sign, body = _term_text(vec, c)
        if not chunks:
            chunks.append(body if sign > 0 else f"-{body}")
        else:
            chunks.append(f" + {body}" if sign > 0 else f" - {body}")
    return "".join(chunks)
