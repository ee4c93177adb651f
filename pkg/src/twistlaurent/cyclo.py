"""Exact arithmetic in cyclotomic fields Q(w_m).

Elements are residues modulo the m-th cyclotomic polynomial, stored as
tuples of ``Fraction`` coefficients of length phi(m).  Contexts (the
polynomial plus a power-reduction table) are cached per order; the cache
only ever grows, so sharing across threads is safe.

Binary module-level functions (:func:`add`, :func:`mul`, ...) require both
operands to live at the same order and raise :class:`OrderMismatch`
otherwise; the operator overloads on :class:`CycloNum` lift both sides to
the lcm order first, which is what series arithmetic relies on.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, OrderMismatch, RootNotInField

Rat = Fraction

# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient tuples, ascending powers)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _poly_div_exact(num, den):
    """Exact division of integer polynomials; ``den`` need not be monic
    but the division must leave no remainder."""
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        q, r = divmod(num[i], lead)
        if r:
            raise ArithmeticError("non-exact polynomial division")
        out[i - dd] = q
        for j in range(dd + 1):
            num[i - dd + j] -= q * den[j]
    if any(num[:dd]):
        raise ArithmeticError("non-exact polynomial division")
    return out


def euler_phi(m: int) -> int:
    result = m
    k = m
    p = 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the m-th cyclotomic polynomial, via the
    bottom-up divisor recursion: Phi_m = (x^m - 1) / prod_{d|m, d<m} Phi_d."""
    if m < 1:
        raise ValueError("order must be positive")
    return context(m).cyclo_poly


@dataclass(frozen=True)
class CyclotomicContext:
    order: int
    cyclo_poly: tuple[int, ...]
    # rows[k] = coefficients of x^(phi+k) reduced mod Phi, k = 0..phi-2
    reduction_rows: tuple[tuple[int, ...], ...]

    @property
    def degree(self) -> int:
        return len(self.cyclo_poly) - 1


_CONTEXTS: dict[int, CyclotomicContext] = {}
_CONTEXT_LOCK = threading.Lock()


def context(m: int) -> CyclotomicContext:
    ctx = _CONTEXTS.get(m)
    if ctx is not None:
        return ctx
    if m < 1:
        raise ValueError("order must be positive")
    if m == 1:
        poly = (-1, 1)
    else:
        num = [-1] + [0] * (m - 1) + [1]
        for d in range(1, m):
            if m % d == 0:
                num = _poly_div_exact(num, context(d).cyclo_poly)
        poly = tuple(num)
    phi = len(poly) - 1
    # x^phi = -(poly without leading term); higher powers by shifting
    rows = [tuple(-c for c in poly[:phi])]
    for _ in range(max(phi - 2, 0)):
        prev = rows[-1]
        top = prev[-1]
        nxt = [0] + list(prev[:-1])
        if top:
            base = rows[0]
            for j in range(phi):
                nxt[j] += top * base[j]
        rows.append(tuple(nxt))
    ctx = CyclotomicContext(order=m, cyclo_poly=poly, reduction_rows=tuple(rows))
    with _CONTEXT_LOCK:
        return _CONTEXTS.setdefault(m, ctx)


def _reduce(coeffs, ctx: CyclotomicContext) -> tuple[Rat, ...]:
    """Reduce an arbitrary-degree coefficient list modulo Phi_m."""
    phi = ctx.degree
    work = [Rat(c) for c in coeffs]
    if len(work) <= 2 * phi - 1:
        out = work[:phi] + [Rat(0)] * max(0, phi - len(work))
        for k in range(phi, len(work)):
            c = work[k]
            if c:
                row = ctx.reduction_rows[k - phi]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return tuple(out)
    # long division for the occasional high-degree input (embeddings)
    poly = ctx.cyclo_poly
    for i in range(len(work) - 1, phi - 1, -1):
        c = work[i]
        if c:
            work[i] = Rat(0)
            for j in range(phi):
                work[i - phi + j] -= c * poly[j]
    work = work[:phi] + [Rat(0)] * max(0, phi - len(work))
    return tuple(work[:phi])


@dataclass(frozen=True, eq=False)
class CycloNum:
    """Residue in Q[x]/(Phi_m), i.e. a polynomial in w_m.

    Unhashable on purpose: equality lifts across orders (a rational at
    order 2 equals the same rational at order 4), which no cheap hash
    respects.
    """

    order: int
    coeffs: tuple[Rat, ...]

    __hash__ = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def make(order: int, coeffs) -> "CycloNum":
        return CycloNum(order, _reduce(coeffs, context(order)))

    @staticmethod
    def from_rational(q, order: int = 1) -> "CycloNum":
        return CycloNum.make(order, [Rat(q)])

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def as_rational(self) -> Rat | None:
        """The element as a Fraction when it is rational, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    # -- arithmetic (auto-lifting overloads) -------------------------------

    def _coerced(self, other):
        if isinstance(other, CycloNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.from_rational(other, 1)
        return None

    def __add__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        a, b = lift_pair(self, o)
        return add(a, b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        a, b = lift_pair(self, o)
        return sub(a, b)

    def __rsub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        a, b = lift_pair(o, self)
        return sub(a, b)

    def __mul__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        a, b = lift_pair(self, o)
        return mul(a, b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        a, b = lift_pair(self, o)
        return mul(a, inv(b))

    def __rtruediv__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        a, b = lift_pair(o, self)
        return mul(a, inv(b))

    def __neg__(self):
        return neg(self)

    def __pow__(self, e: int):
        return pow_(self, e)

    def __eq__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        a, b = lift_pair(self, o)
        return a.coeffs == b.coeffs

    def __repr__(self):
        return f"CycloNum({self.order}, {to_text(self)!r})"


# ---------------------------------------------------------------------------
# spec operations (strict about orders)


def omega(m: int) -> CycloNum:
    """The residue of the indeterminate: a primitive m-th root of unity."""
    return CycloNum.make(m, [0, 1])


def zero(m: int = 1) -> CycloNum:
    return CycloNum.from_rational(0, m)


def one(m: int = 1) -> CycloNum:
    return CycloNum.from_rational(1, m)


def _check_orders(a: CycloNum, b: CycloNum):
    if a.order != b.order:
        raise OrderMismatch(f"orders {a.order} and {b.order}; lift via embed first")


def add(a: CycloNum, b: CycloNum) -> CycloNum:
    _check_orders(a, b)
    return CycloNum(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def sub(a: CycloNum, b: CycloNum) -> CycloNum:
    _check_orders(a, b)
    return CycloNum(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))


def neg(a: CycloNum) -> CycloNum:
    return CycloNum(a.order, tuple(-x for x in a.coeffs))


def mul(a: CycloNum, b: CycloNum) -> CycloNum:
    _check_orders(a, b)
    ctx = context(a.order)
    phi = ctx.degree
    conv = [Rat(0)] * (2 * phi - 1)
    for i, ca in enumerate(a.coeffs):
        if ca:
            for j, cb in enumerate(b.coeffs):
                if cb:
                    conv[i + j] += ca * cb
    return CycloNum(a.order, _reduce(conv, ctx))


def inv(a: CycloNum) -> CycloNum:
    """Inverse via extended gcd against Phi_m (coprime to any nonzero
    reduced residue, since Phi_m is irreducible over Q)."""
    if a.is_zero():
        raise DivisionByZero("inverse of zero")
    ctx = context(a.order)
    # extended Euclid over Q[x]
    r0 = list(ctx.cyclo_poly)
    r1 = [Rat(c) for c in a.coeffs]
    while r1 and not r1[-1]:
        r1.pop()
    s0, s1 = [Rat(0)], [Rat(1)]

    def deg(p):
        return len(p) - 1

    r0 = [Rat(c) for c in r0]
    while deg(r1) > 0:
        q = [Rat(0)] * (deg(r0) - deg(r1) + 1)
        rem = list(r0)
        for i in range(deg(r0), deg(r1) - 1, -1):
            c = rem[i] / r1[-1]
            q[i - deg(r1)] = c
            if c:
                for j, cb in enumerate(r1):
                    rem[i - deg(r1) + j] -= c * cb
        while len(rem) > 1 and not rem[-1]:
            rem.pop()
        qs1 = _poly_mul(q, s1)
        new_s = [Rat(0)] * max(len(s0), len(qs1))
        for i, c in enumerate(s0):
            new_s[i] += c
        for i, c in enumerate(qs1):
            new_s[i] -= c
        r0, r1 = r1, rem
        s0, s1 = s1, new_s
    g = r1[0]  # nonzero constant gcd
    invpoly = [c / g for c in s1]
    return CycloNum.make(a.order, invpoly)


def pow_(a: CycloNum, e: int) -> CycloNum:
    if e < 0:
        return pow_(inv(a), -e)
    result = one(a.order)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def embed(a: CycloNum, m2: int) -> CycloNum:
    """Image of ``a`` under w_m -> w_{m2}^(m2/m); requires m | m2."""
    m = a.order
    if m2 % m != 0:
        raise OrderMismatch(f"order {m} does not divide {m2}")
    if m2 == m:
        return a
    k = m2 // m
    out = [Rat(0)] * ((len(a.coeffs) - 1) * k + 1)
    for i, c in enumerate(a.coeffs):
        if c:
            out[i * k] = c
    return CycloNum.make(m2, out)


def lift_pair(a: CycloNum, b: CycloNum) -> tuple[CycloNum, CycloNum]:
    if a.order == b.order:
        return a, b
    m = math.lcm(a.order, b.order)
    return embed(a, m), embed(b, m)


def log_root_of_unity(a: CycloNum) -> int | None:
    """j in [0, m) with a = w_m^j, or None; by direct comparison."""
    m = a.order
    w = omega(m)
    cur = one(m)
    for j in range(m):
        if a.coeffs == cur.coeffs:
            return j
        cur = mul(cur, w)
    return None


def in_cyclic_subgroup(a: CycloNum, m: int) -> int | None:
    """j in [0, m) with a = w_m^j inside a's (lifted) context, or None."""
    common = math.lcm(a.order, m)
    lifted = embed(a, common)
    w = embed(omega(m), common)
    cur = one(common)
    for j in range(m):
        if lifted.coeffs == cur.coeffs:
            return j
        cur = mul(cur, w)
    return None


def _int_nth_root(s: int, n: int) -> int | None:
    """Exact integer n-th root of s >= 0, or None."""
    if s < 0:
        return None
    if s in (0, 1) or n == 1:
        return s
    r = int(round(s ** (1.0 / n)))
    for cand in range(max(r - 2, 0), r + 3):
        if cand**n == s:
            return cand
    # fall back to Newton for values beyond float precision
    x = 1 << ((s.bit_length() + n - 1) // n + 1)
    while True:
        y = ((n - 1) * x + s // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    return x if x**n == s else None


def _monomial_form(a: CycloNum) -> tuple[Rat, int] | None:
    """Write a = q * w_m^j with q a positive rational and j minimal,
    or None if a is not of that shape."""
    m = a.order
    winv = inv(omega(m))
    cur = a
    best_neg = None
    for j in range(m):
        q = cur.as_rational()
        if q is not None and q > 0:
            return q, j
        if q is not None and q < 0 and best_neg is None:
            best_neg = (q, j)
        cur = mul(cur, winv)
    if best_neg is not None:
        return best_neg  # caller handles the sign via order doubling
    return None


def const_root(a: CycloNum, n: int) -> tuple[CycloNum, int]:
    """Deterministic n-th root of a recognizable scalar.

    Succeeds on monomials q * w_m^j whose rational part is an exact n-th
    power; the root is q^(1/n) * w_{nm}^j with the minimal exponent j,
    returned at the smallest cyclotomic order that can hold it.  Anything
    else lies beyond the oracle and raises RootNotInField.
    """
    if n < 1:
        raise ValueError("root index must be positive")
    if a.is_zero():
        raise DivisionByZero("zero has no recognizable root")
    if n == 1:
        return a, a.order
    form = _monomial_form(a)
    if form is None:
        raise RootNotInField(f"{to_text(a)} is not a recognizable monomial in w")
    q, j = form
    if q < 0:
        # -1 is not a power of w_m (m odd here); retry one order up
        return const_root(embed(a, 2 * a.order), n)
    rs = _int_nth_root(q.numerator, n)
    rt = _int_nth_root(q.denominator, n)
    if rs is None or rt is None:
        raise RootNotInField(f"rational part {q} is not an exact {n}-th power")
    m = a.order
    big = n * m
    g = math.gcd(big, j)
    d = big // g
    if m % d == 0:
        target, exp = m, (m // d) * (j // g)
    else:
        target, exp = big, j
    root = mul(CycloNum.from_rational(Rat(rs, rt), target), pow_(omega(target), exp))
    return root, target


# ---------------------------------------------------------------------------
# canonical text form (consumed by the CLI)


def _rat_text(q: Rat) -> str:
    return str(q)


def to_text(a: CycloNum) -> str:
    """Canonical rendering: polynomial in `w`, descending powers, reduced
    rational coefficients, e.g. ``1/2*w^2 - 1/3``."""
    parts = []
    for k in range(len(a.coeffs) - 1, -1, -1):
        c = a.coeffs[k]
        if not c:
            continue
        if k == 0:
            body = _rat_text(abs(c))
        else:
            mono = "w" if k == 1 else f"w^{k}"
            body = mono if abs(c) == 1 else f"{_rat_text(abs(c))}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts) if parts else "0"
