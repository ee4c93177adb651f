"""Constructive root extraction for series.

``unit_root`` runs the graded recursion: writing g = 1 + sum b_gamma X^gamma
and matching coefficients of g^n against the target level by level in
ascending weighted degree, each new coefficient is
(target coefficient - coefficient of the current partial power) / n.
No closed form for the lower-order correction terms is ever needed; they
are read off the partial power directly.

Roots are normalized: unit parts have constant term exactly 1, scalar
roots follow the deterministic convention of :func:`cyclo.const_root`.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import cyclo
from .cyclo import CycloNum
from .errors import (
    DenominatorCapExceeded,
    ExponentNotDivisible,
    GradingError,
    NotAOneUnit,
    NotInCenter,
    SignatureMismatch,
    TwistObstruction,
    ZeroValuation,
)
from .exponents import ExponentVec, divide, lex_cmp, phase, self_phase_product
from .series import INF, TwistedSeries


def _check_phase_commutative(sig, vecs):
    if not sig.twisted:
        return
    vecs = list(vecs)
    for a in vecs:
        for b in vecs:
            if phase(a, b) != 1:
                raise TwistObstruction(
                    "support is not phase-commutative; no graded root recursion"
                )


def unit_root(f: TwistedSeries, n: int) -> TwistedSeries:
    """The n-th root with constant term 1 of a series with constant term 1."""
    if n < 1:
        raise ValueError("root index must be positive")
    sig = f.sig
    if f.is_zero():
        raise NotAOneUnit("zero series")
    alpha = f.val()
    if not alpha.is_zero() or f.terms[alpha] != 1:
        raise NotAOneUnit("series root needs leading term exactly 1")
    if n == 1:
        return f
    _check_phase_commutative(sig, f.terms.keys())
    target = min(f.prec, sig.N)
    for v in f.terms:
        if not v.is_zero() and v.wdeg <= 0:
            raise GradingError("unit tail with nonpositive weighted degree; raise the radix")

    zero_vec = sig.zero_vec()
    one_c = cyclo.one(sig.m)
    goal = {v: c for v, c in f.terms.items() if v.wdeg < target}
    # pows[j] tracks g^j below the target level; updated per added term
    pows: list[dict] = [{zero_vec: one_c} for _ in range(n + 1)]
    g: dict = {zero_vec: one_c}
    binom = [[math.comb(j, i) for i in range(j + 1)] for j in range(n + 1)]

    while True:
        gamma = None
        gw = None
        coeff = None
        top = pows[n]
        for vec in goal.keys() | top.keys():
            w = vec.wdeg
            if w >= target or vec.is_zero():
                continue
            a = goal.get(vec)
            b = top.get(vec)
            c = a - b if a is not None and b is not None else (a if b is None else -b)
            if not c:
                continue
            if gw is None or w < gw or (w == gw and lex_cmp(vec, gamma) < 0):
                gamma, gw, coeff = vec, w, c
        if gamma is None:
            break
        b_new = coeff / n
        g[gamma] = b_new
        # fold (b X^gamma) into every tracked power via the binomial
        # expansion; powers of X^gamma past the target level are dropped
        # before they can leave the window
        shift_pows: list[tuple[ExponentVec, CycloNum]] = [(zero_vec, one_c)]
        acc_vec, acc_c = zero_vec, one_c
        for i in range(1, n + 1):
            if i * gw >= target:
                break
            acc_vec = acc_vec + gamma
            acc_c = acc_c * b_new
            shift_pows.append((acc_vec, acc_c))
        for j in range(n, 0, -1):
            new_j = dict(pows[j])
            for i in range(1, min(j, len(shift_pows) - 1) + 1):
                svec, sc = shift_pows[i]
                sw = svec.wdeg
                scale = sc * binom[j][i]
                for vec, c in pows[j - i].items():
                    if vec.wdeg + sw >= target:
                        continue
                    tvec = vec + svec
                    add = c * scale
                    cur = new_j.get(tvec)
                    s = add if cur is None else cur + add
                    if s:
                        new_j[tvec] = s
                    elif cur is not None:
                        del new_j[tvec]
            pows[j] = new_j

    return TwistedSeries(sig, g, target)


def monomial_root(c: CycloNum, alpha: ExponentVec, n: int) -> tuple[CycloNum, ExponentVec]:
    """Root of c * X^alpha: divide the exponent, then solve for the scalar
    against the accumulated self-phase of X^(alpha/n)."""
    beta = divide(alpha, n)
    if beta is None:
        raise ExponentNotDivisible(f"exponent {alpha!r} is not divisible by {n}")
    ph = self_phase_product(beta, n)
    root, _ = cyclo.const_root(c * cyclo.inv(ph) if ph != 1 else c, n)
    return root, beta


def general_root(f: TwistedSeries, n: int) -> TwistedSeries:
    """n-th root of a nonzero series: decompose, root each factor, recombine."""
    if f.is_zero():
        raise ZeroValuation("the zero series has no root decomposition")
    if n == 1:
        return f
    c, alpha, d = f.decompose()
    root_c, beta = monomial_root(c, alpha, n)
    if f.sig.twisted:
        for vec in d.terms:
            if phase(beta, vec) != 1 or phase(vec, beta) != 1:
                raise TwistObstruction(
                    "leading monomial root does not commute with the unit tail"
                )
    unit = unit_root(TwistedSeries.one(f.sig) + d, n)
    return TwistedSeries.monomial(f.sig, root_c, beta) * unit


def _tower_root(a: TwistedSeries, level: int) -> TwistedSeries:
    sig = a.sig
    if level == 0:
        vec = a.val()
        root, _ = cyclo.const_root(a.terms[vec], sig.p)
        return TwistedSeries.scalar(sig, root).truncate(a.prec)
    idx = 2 * (level - 1)
    exps = {v.values()[idx] for v in a.terms}
    if exps == {Fraction(0)}:
        return _tower_root(a, level - 1)
    e0 = min(exps)
    unit_vec = sig.x_vec(level)
    shift = sig.exponent([e0 if j == idx else 0 for j in range(sig.width)])
    b0 = TwistedSeries(
        sig,
        {v - shift: c for v, c in a.terms.items() if v.values()[idx] == e0},
        a.prec - shift.wdeg if a.prec != INF else INF,
    )
    beta = divide(shift, sig.p)
    if beta is None:
        raise DenominatorCapExceeded(
            f"exponent {e0}/{sig.p} needs denominator beyond the cap {sig.M}"
        )
    unit_part = b0.inv() * (a * TwistedSeries.monomial(sig, 1, -shift))
    b0_root = _tower_root(b0, level - 1)
    u_root = unit_root(unit_part, sig.p)
    return b0_root * TwistedSeries.monomial(sig, 1, beta) * u_root


def tower_pth_root(a: TwistedSeries) -> TwistedSeries:
    """p-th root inside the commutative fractional-exponent tower.

    Recurses on the number of variables: the level coefficient is rooted
    by recursion (a scalar falls through to the constant oracle), the
    leading power of the level variable by an exponent-denominator bump,
    and the remaining one-unit by the graded recursion.
    """
    sig = a.sig
    if sig.twisted:
        raise SignatureMismatch("tower roots live in commutative signatures")
    if a.is_zero():
        raise ZeroValuation("the zero series has no root")
    for v in a.terms:
        if any(v.numerators[2 * i + 1] for i in range(sig.r)):
            raise NotInCenter("tower elements are series in the x-variables only")
    return _tower_root(a, sig.r)
