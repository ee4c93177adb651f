"""Seeded random generators for the property batteries.

Everything is driven by an explicit ``random.Random`` so identical
configuration and seed reproduce identical samples, reports and CLI
output byte for byte.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import cyclo
from .cyclo import CycloNum
from .exponents import RingSig
from .series import TwistedSeries

_RATIONAL_POOL = (1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-1, 3), Fraction(3, 2))


def random_coeff(rng: random.Random, m: int, monomial_only: bool = False) -> CycloNum:
    """A small exact coefficient in Q(w_m): q * w^j, or occasionally a
    two-term combination when ``monomial_only`` is off."""
    q = CycloNum.from_rational(rng.choice(_RATIONAL_POOL), m)
    j = rng.randrange(m)
    out = q * cyclo.pow_(cyclo.omega(m), j)
    if not monomial_only and rng.random() < 0.3:
        out = out + CycloNum.from_rational(rng.choice(_RATIONAL_POOL), m)
        if out.is_zero():
            out = cyclo.one(m)
    return out


def random_unit_series(
    rng: random.Random,
    sig: RingSig,
    max_terms: int = 12,
    coord_bounds: tuple[int, ...] | None = None,
    monomial_coeffs: bool = False,
) -> TwistedSeries:
    """Constant term 1 plus up to ``max_terms`` tail terms with nonnegative
    exponents inside ``coord_bounds`` (so the tail is lex- and
    weight-positive for any radix)."""
    if coord_bounds is None:
        coord_bounds = (3, 1) * sig.r
    terms = {sig.zero_vec(): cyclo.one(sig.m)}
    for _ in range(rng.randrange(1, max_terms + 1)):
        nums = [rng.randint(0, b) for b in coord_bounds]
        if not any(nums):
            nums[0] = 1
        vec = sig.exponent(nums)
        if vec.wdeg >= sig.N:
            continue
        terms[vec] = random_coeff(rng, sig.m, monomial_coeffs)
    return TwistedSeries(sig, terms)


def random_series(
    rng: random.Random,
    sig: RingSig,
    max_terms: int = 4,
    lead_bound: int = 2,
    coord_bounds: tuple[int, ...] | None = None,
) -> TwistedSeries:
    """A nonzero series: scalar times monomial (possibly negative
    exponents) times a random one-unit."""
    lead = sig.exponent([rng.randint(-lead_bound, lead_bound) for _ in range(sig.width)])
    c = random_coeff(rng, sig.m, monomial_only=True)
    unit = random_unit_series(rng, sig, max_terms, coord_bounds)
    return TwistedSeries.monomial(sig, c, lead) * unit
