"""Ring signatures, the exponent lattice with lexicographic order, and the
phase bicharacter that rules twisted-monomial multiplication.

Coordinates are ordered x1, y1, ..., xr, yr and the *last* coordinate is
the most significant in comparisons, matching an iterated series
construction whose outermost variable dominates.  Exponents are rationals
with denominator p^denom_log, stored as integer numerators over a shared
denominator and kept normalized (no common factor of p left).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import cyclo
from .errors import (
    DenominatorCapExceeded,
    LatticeViolation,
    SignatureMismatch,
    WindowExceeded,
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class RingSig:
    """Presentation of one twisted (or commutative) iterated Laurent ring.

    p          prime used for fractional-exponent lattices and towers
    indices    n_1..n_r (each >= 2); variable pair i twists by w_{n_i}
    twisted    scalar commutation x_i y_i = w_{n_i} y_i x_i when True;
               a twisted ring keeps integer exponents (M must be 0)
    M          cap on the exponent denominator exponent (denominators p^M)
    N          default truncation level, a weighted-degree bound
    B          support window: every exponent coordinate stays in [-B, B]
    radix      weight radix; coordinate j weighs radix^j.  The default
               2*B*p^M + 1 makes weighted order refine lex order inside
               the window.  Smaller values trade that guarantee for room
               (series spanning several levels of an outer variable); the
               graded algorithms then guard positivity at run time.
    """

    p: int
    indices: tuple[int, ...]
    twisted: bool = True
    M: int = 0
    N: int = 32
    B: int = 64
    radix: int | None = None

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if not self.indices or any(n < 2 for n in self.indices):
            raise ValueError("each index n_i must be >= 2")
        if self.twisted and self.M != 0:
            raise ValueError("twisted rings use integer exponents (M = 0)")
        if self.M < 0 or self.N <= 0 or self.B < 1:
            raise ValueError("need M >= 0, N > 0, B >= 1")
        if self.radix is not None and self.radix < 2:
            raise ValueError("radix must be >= 2")
        object.__setattr__(self, "indices", tuple(self.indices))

    @property
    def r(self) -> int:
        return len(self.indices)

    @property
    def width(self) -> int:
        return 2 * len(self.indices)

    @property
    def m(self) -> int:
        return math.lcm(*self.indices)

    @property
    def wradix(self) -> int:
        return self.radix if self.radix is not None else 2 * self.B * self.p**self.M + 1

    @property
    def weights(self) -> tuple[int, ...]:
        R = self.wradix
        return tuple(R**j for j in range(self.width))

    # -- vector constructors ------------------------------------------------

    def zero_vec(self) -> "ExponentVec":
        return ExponentVec(self, (0,) * self.width)

    def x_vec(self, i: int, k: int = 1) -> "ExponentVec":
        """Exponent of x_i^k; i is 1-based."""
        nums = [0] * self.width
        nums[2 * (i - 1)] = k
        return ExponentVec(self, tuple(nums))

    def y_vec(self, i: int, k: int = 1) -> "ExponentVec":
        nums = [0] * self.width
        nums[2 * (i - 1) + 1] = k
        return ExponentVec(self, tuple(nums))

    def exponent(self, values) -> "ExponentVec":
        """Build a vector from ints/Fractions with denominator dividing p^M."""
        nums = []
        L = 0
        vals = [Fraction(v) for v in values]
        for v in vals:
            d = v.denominator
            k = 0
            while d > 1:
                if d % self.p:
                    raise LatticeViolation(f"denominator {v.denominator} is not a power of {self.p}")
                d //= self.p
                k += 1
            L = max(L, k)
        scale = self.p**L
        nums = tuple(int(v * scale) for v in vals)
        return ExponentVec(self, nums, L)


class ExponentVec:
    """Point of the exponent lattice (1/p^M) Z^{2r}; immutable.

    Stored as numerators over the shared denominator p^denom_log, with the
    representation normalized so no denominator exponent can be dropped.
    """

    __slots__ = ("sig", "numerators", "denom_log", "_hash", "_wdeg")

    def __init__(self, sig: RingSig, numerators, denom_log: int = 0):
        numerators = tuple(numerators)
        if len(numerators) != sig.width:
            raise ValueError(f"expected {sig.width} coordinates, got {len(numerators)}")
        if denom_log < 0:
            raise ValueError("denom_log must be >= 0")
        p = sig.p
        while denom_log > 0 and all(n % p == 0 for n in numerators):
            numerators = tuple(n // p for n in numerators)
            denom_log -= 1
        if sig.twisted and denom_log > 0:
            raise LatticeViolation("twisted rings use integer exponents only")
        if denom_log > sig.M:
            raise DenominatorCapExceeded(f"denominator exponent {denom_log} exceeds cap {sig.M}")
        bound = sig.B * p**denom_log
        for n in numerators:
            if abs(n) > bound:
                raise WindowExceeded(f"coordinate {n}/{p}^{denom_log} outside window |.| <= {sig.B}")
        self.sig = sig
        self.numerators = numerators
        self.denom_log = denom_log
        self._hash = None
        self._wdeg = None

    # -- representation ------------------------------------------------------

    def values(self) -> tuple[Fraction, ...]:
        d = self.sig.p**self.denom_log
        return tuple(Fraction(n, d) for n in self.numerators)

    def is_zero(self) -> bool:
        return not any(self.numerators)

    def is_positive(self) -> bool:
        """Lex-positive: the most significant nonzero coordinate is > 0."""
        for n in reversed(self.numerators):
            if n:
                return n > 0
        return False

    @property
    def wdeg(self):
        """Weighted degree: sum of value_j * radix^j (int when integral)."""
        if self._wdeg is None:
            w = self.sig.weights
            total = sum(n * w[j] for j, n in enumerate(self.numerators) if n)
            if self.denom_log:
                total = Fraction(total, self.sig.p**self.denom_log)
            self._wdeg = total
        return self._wdeg

    # -- comparisons -----------------------------------------------------------

    def _aligned(self, other: "ExponentVec"):
        La, Lb = self.denom_log, other.denom_log
        if La == Lb:
            return self.numerators, other.numerators
        p = self.sig.p
        if La < Lb:
            s = p ** (Lb - La)
            return tuple(n * s for n in self.numerators), other.numerators
        s = p ** (La - Lb)
        return self.numerators, tuple(n * s for n in other.numerators)

    def __eq__(self, other):
        if not isinstance(other, ExponentVec):
            return NotImplemented
        return (
            self.sig == other.sig
            and self.denom_log == other.denom_log
            and self.numerators == other.numerators
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.numerators, self.denom_log))
        return self._hash

    def __lt__(self, other):
        return lex_cmp(self, other) < 0

    def __le__(self, other):
        return lex_cmp(self, other) <= 0

    def __gt__(self, other):
        return lex_cmp(self, other) > 0

    def __ge__(self, other):
        return lex_cmp(self, other) >= 0

    # -- lattice operations ------------------------------------------------------

    def __add__(self, other: "ExponentVec") -> "ExponentVec":
        _check_sig(self, other)
        a, b = self._aligned(other)
        return ExponentVec(
            self.sig,
            tuple(x + y for x, y in zip(a, b)),
            max(self.denom_log, other.denom_log),
        )

    def __sub__(self, other: "ExponentVec") -> "ExponentVec":
        _check_sig(self, other)
        a, b = self._aligned(other)
        return ExponentVec(
            self.sig,
            tuple(x - y for x, y in zip(a, b)),
            max(self.denom_log, other.denom_log),
        )

    def __neg__(self) -> "ExponentVec":
        return ExponentVec(self.sig, tuple(-n for n in self.numerators), self.denom_log)

    def __repr__(self):
        vals = ", ".join(str(v) for v in self.values())
        return f"ExponentVec({vals})"


def _check_sig(a, b):
    if a.sig != b.sig:
        raise SignatureMismatch("exponents from different ring signatures")


def lex_cmp(a: ExponentVec, b: ExponentVec) -> int:
    """Total order; the last coordinate (y_r) is the most significant."""
    _check_sig(a, b)
    na, nb = a._aligned(b)
    for x, y in zip(reversed(na), reversed(nb)):
        if x != y:
            return -1 if x < y else 1
    return 0


def divide(a: ExponentVec, n: int) -> ExponentVec | None:
    """a/n when representable: twisted rings need exact integer
    divisibility; commutative rings may raise denom_log up to the cap."""
    if n < 1:
        raise ValueError("divisor must be positive")
    sig = a.sig
    if sig.twisted:
        if all(x % n == 0 for x in a.numerators):
            return ExponentVec(sig, tuple(x // n for x in a.numerators), 0)
        return None
    p = sig.p
    for L2 in range(a.denom_log, sig.M + 1):
        s = p ** (L2 - a.denom_log)
        if all((x * s) % n == 0 for x in a.numerators):
            return ExponentVec(sig, tuple(x * s // n for x in a.numerators), L2)
    return None


def phase(a: ExponentVec, b: ExponentVec) -> cyclo.CycloNum:
    """Scalar with X^a * X^b = phase(a, b) * X^(a+b) in normal order.

    Moving the x-part of b left past the y-part of a picks up, for each
    pair index i, w_{n_i}^(-(y_i of a) * (x_i of b)); other coordinates
    commute outright.  Commutative signatures have trivial phases.
    """
    _check_sig(a, b)
    sig = a.sig
    m = sig.m
    if not sig.twisted:
        return cyclo.one(m)
    if a.denom_log or b.denom_log:
        raise LatticeViolation("phases are defined for integer exponents only")
    e = 0
    for i, n_i in enumerate(sig.indices):
        yi = a.numerators[2 * i + 1]
        xi = b.numerators[2 * i]
        if yi and xi:
            e -= (m // n_i) * yi * xi
    return cyclo.pow_(cyclo.omega(m), e % m)


def self_phase_product(beta: ExponentVec, n: int) -> cyclo.CycloNum:
    """prod_{k=1}^{n-1} phase(k*beta, beta): the scalar picked up by
    collapsing (X^beta)^n to X^{n*beta}."""
    total = cyclo.one(beta.sig.m)
    if not beta.sig.twisted:
        return total
    acc = beta
    for _ in range(n - 1):
        total = cyclo.mul(total, phase(acc, beta))
        acc = acc + beta
    return total
