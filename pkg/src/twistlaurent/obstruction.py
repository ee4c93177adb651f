"""Commutator structure and the two computational witnesses.

The constraint under test: every group commutator of nonzero series has
valuation zero and leading coefficient inside the cyclic group generated
by w_m.  A primitive p^2-th root of unity therefore cannot be a
commutator when m = p, while w_p itself passes; and in the rank check,
classes of central elements modulo p^n-th powers are pinned to the two
exponent residues, because the remaining unit factor is itself a p^n-th
power.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import cyclo, roots, sampling
from .cyclo import CycloNum
from .errors import NotInCenter, RootNotInField, ZeroValuation
from .exponents import RingSig
from .series import TwistedSeries


def commutator(f: TwistedSeries, g: TwistedSeries) -> TwistedSeries:
    """The group commutator f g f^-1 g^-1."""
    if f.is_zero() or g.is_zero():
        raise ZeroValuation("commutators need invertible (nonzero) series")
    return f * g * f.inv() * g.inv()


def in_omega_one_plus_M(f: TwistedSeries) -> bool:
    """Membership in <w_m> * (1 + M): valuation zero and leading
    coefficient a power of w_m."""
    c, alpha, _ = f.decompose()
    return alpha.is_zero() and cyclo.in_cyclic_subgroup(c, f.sig.m) is not None


def commutator_class_check(f: TwistedSeries, g: TwistedSeries) -> bool:
    return in_omega_one_plus_M(commutator(f, g))


# ---------------------------------------------------------------------------
# Kummer classes in P = k((x1^{p^n}, y1^{p^n}))


def kummer_sig(p: int, n: int, *, N: int | None = None, B: int | None = None, radix: int = 2) -> RingSig:
    """Signature housing the center P: one commutative variable pair with
    support constrained (by the class map) to exponents in p^n Z x p^n Z.
    The truncation level scales with the modulus so root supports stay
    small; sampled supports are nonnegative, where a radix of 2 is safe."""
    pn = p**n
    if N is None:
        N = 10 * pn
    if B is None:
        B = 3 * N
    return RingSig(p=p, indices=(pn,), twisted=False, M=0, N=N, B=B, radix=radix)


@dataclass(frozen=True)
class KummerClass:
    """Image of an element in the quotient by p^n-th powers: the two
    exponent residues plus what happened to the unit factor."""

    modulus: int
    r_mod: int
    s_mod: int
    disposition: str  # "trivial" (verified witness) or "oracle-failed"
    witness: TwistedSeries | None = None

    @property
    def residues(self) -> tuple[int, int]:
        return (self.r_mod, self.s_mod)


def kummer_class(a: TwistedSeries) -> KummerClass:
    sig = a.sig
    if sig.twisted or sig.r != 1:
        raise NotInCenter("the class map lives in one commutative variable pair")
    pn = sig.indices[0]
    if a.is_zero():
        raise ZeroValuation("the zero element has no class")
    for vec in a.terms:
        if vec.denom_log or any(x % pn for x in vec.numerators):
            raise NotInCenter(f"support must lie in {pn}Z x {pn}Z")
    c, alpha, d = a.decompose()
    r_mod = (alpha.numerators[0] // pn) % pn
    s_mod = (alpha.numerators[1] // pn) % pn

    # p^n-th root of the unit factor c*(1+d): n successive p-th roots of
    # the one-unit, plus the constant oracle for c
    steps = 0
    q = pn
    while q > 1:
        q //= sig.p
        steps += 1
    try:
        root_c, _ = cyclo.const_root(c, pn)
    except RootNotInField:
        return KummerClass(pn, r_mod, s_mod, "oracle-failed")
    w = TwistedSeries.one(sig) + d
    for _ in range(steps):
        w = roots.unit_root(w, sig.p)
    witness = w * root_c
    target = TwistedSeries.scalar(sig, c) * (TwistedSeries.one(sig) + d)
    if not (witness**pn).eq_to_prec(target):
        return KummerClass(pn, r_mod, s_mod, "oracle-failed")
    return KummerClass(pn, r_mod, s_mod, "trivial", witness)


# ---------------------------------------------------------------------------
# the report battery


@dataclass(frozen=True)
class CheckResult:
    name: str
    params: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class Report:
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            lines.append(f"== {r.name} ==")
            lines.append(f"params: {r.params}")
            lines.append(f"result: {'PASS' if r.passed else 'FAIL'}")
            lines.append(f"detail: {r.detail}")
            lines.append("")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _obstruction_sig(p: int, r: int) -> RingSig:
    # radix 8 keeps a couple of y1-levels below the truncation level;
    # sampled tails are in the nonnegative orthant, where any radix is safe
    return RingSig(p=p, indices=(p,) * r, twisted=True, M=0, N=24, B=40, radix=8)


def commutator_battery(sig: RingSig, samples: int, seed: int) -> CheckResult:
    rng = random.Random(seed)
    failures = []
    for k in range(samples):
        f = sampling.random_series(rng, sig)
        g = sampling.random_series(rng, sig)
        com = commutator(f, g)
        if not (com.val().is_zero() and in_omega_one_plus_M(com)):
            failures.append(k)
    detail = (
        f"{samples - len(failures)}/{samples} commutators in <w_{sig.m}>(1+M)"
        if not failures
        else f"counterexample sample indices: {failures}"
    )
    return CheckResult(
        "commutator-battery",
        f"p={sig.p} indices={sig.indices} samples={samples} seed={seed}",
        not failures,
        detail,
    )


def omega_obstruction_check(p: int, r: int) -> CheckResult:
    sig = _obstruction_sig(p, r)
    w_p2 = TwistedSeries.scalar(sig, cyclo.omega(p * p))
    w_p = TwistedSeries.scalar(sig, cyclo.omega(p))
    bad_in = in_omega_one_plus_M(w_p2)
    good_in = in_omega_one_plus_M(w_p)
    passed = (not bad_in) and good_in
    detail = (
        f"w_{p * p} in <w_{p}>(1+M): {str(bad_in).lower()}; "
        f"w_{p} in <w_{p}>(1+M): {str(good_in).lower()}"
    )
    return CheckResult("root-of-unity-obstruction", f"p={p} r={r}", passed, detail)


def kummer_generator_battery(p: int, n: int, samples: int, seed: int) -> CheckResult:
    sig = kummer_sig(p, n)
    pn = p**n
    rng = random.Random(seed)
    issues = []
    x_cls = kummer_class(TwistedSeries.monomial(sig, 1, sig.x_vec(1, pn)))
    y_cls = kummer_class(TwistedSeries.monomial(sig, 1, sig.y_vec(1, pn)))
    if x_cls.residues != (1, 0) or x_cls.disposition != "trivial":
        issues.append(f"class(x^{pn}) = {x_cls.residues} ({x_cls.disposition})")
    if y_cls.residues != (0, 1) or y_cls.disposition != "trivial":
        issues.append(f"class(y^{pn}) = {y_cls.residues} ({y_cls.disposition})")
    for k in range(samples):
        f = _random_center_element(rng, sig, pn)
        cls = kummer_class(f)
        if cls.disposition != "trivial":
            issues.append(f"sample {k}: unit factor not witnessed as a {pn}-th power")
    detail = (
        f"{samples} sampled classes generated by (1,0) and (0,1) with verified unit witnesses"
        if not issues
        else "; ".join(issues)
    )
    return CheckResult(
        "kummer-generators",
        f"p={p} n={n} modulus={pn} samples={samples} seed={seed}",
        not issues,
        detail,
    )


def _random_center_element(rng: random.Random, sig: RingSig, pn: int) -> TwistedSeries:
    """Element of P* whose leading scalar the constant oracle can root:
    (q^{p^n}) * w^j times a one-unit supported on the p^n-lattice."""
    lead = sig.exponent((pn * rng.randint(-2, 2), pn * rng.randint(-2, 2)))
    base = Fraction(rng.choice((1, -1, 2, Fraction(1, 2))))
    c = CycloNum.from_rational(base**pn, sig.m)
    c = c * cyclo.pow_(cyclo.omega(sig.m), rng.randrange(sig.m))
    terms = {sig.zero_vec(): cyclo.one(sig.m)}
    for _ in range(rng.randint(1, 3)):
        vec = sig.exponent((pn * rng.randint(0, 2), pn * rng.randint(0, 2)))
        if vec.is_zero() or vec.wdeg >= sig.N:
            continue
        terms[vec] = sampling.random_coeff(rng, sig.m)
    unit = TwistedSeries(sig, terms)
    return TwistedSeries.monomial(sig, c, lead) * unit


def obstruction_report(
    p: int, r: int, *, seed: int = 0, samples: int = 25, kummer_exp: int | None = None
) -> Report:
    """Reenact the two witnesses for the signature with all indices p,
    plus the rank bound in the one-pair center with modulus p^kummer_exp
    (default: min(r, 2), keeping the coefficient field degree small)."""
    sig = _obstruction_sig(p, r)
    n = kummer_exp if kummer_exp is not None else min(r, 2)
    results = (
        commutator_battery(sig, samples, seed),
        omega_obstruction_check(p, r),
        kummer_generator_battery(p, n, samples, seed + 1),
    )
    return Report(results)
