"""Shared ring fixtures and samplers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from twistlaurent import cyclo, sampling
from twistlaurent.exponents import RingSig
from twistlaurent.series import TwistedSeries

# the main twisted ring: two pairs, twists w_2 and w_3 inside Q(w_6)
SIG23 = RingSig(p=2, indices=(2, 3), twisted=True, M=0, N=24, B=40)
# same ring with a small radix so tails in y1 survive the truncation level
SIG23_R8 = RingSig(p=2, indices=(2, 3), twisted=True, M=0, N=24, B=40, radix=8)
# single twisted pair with index 2 (relation x y = -y x)
SIG2 = RingSig(p=2, indices=(2,), twisted=True, M=0, N=16, B=24)
# commutative one-pair ring with coefficients in Q(i)
SIGC = RingSig(p=2, indices=(4,), twisted=False, M=0, N=14, B=28, radix=5)
# commutative fractional tower with two x-variables, denominators up to 4
SIGT = RingSig(p=2, indices=(2, 2), twisted=False, M=2, N=40, B=64, radix=4)


@pytest.fixture
def sig23():
    return SIG23


@pytest.fixture
def sig2():
    return SIG2


@pytest.fixture
def sigc():
    return SIGC


def gens(sig):
    xs = [TwistedSeries.gen_x(sig, i + 1) for i in range(sig.r)]
    ys = [TwistedSeries.gen_y(sig, i + 1) for i in range(sig.r)]
    return xs, ys


def sample_tower_element(rng: random.Random, sig: RingSig = SIGT) -> TwistedSeries:
    """Element of the two-variable half-integer tower with a constant the
    root oracle recognizes: (+/- q^2) w^j x1^(k/2) x2^(l/2) (1 + tail)."""
    lead = sig.exponent(
        [Fraction(rng.randint(-2, 3), 2), 0, Fraction(rng.randint(-2, 3), 2), 0]
    )
    base = rng.choice((1, 2, 3, Fraction(1, 2)))
    c = cyclo.CycloNum.from_rational(base * base * rng.choice((1, -1)), sig.m)
    terms = {sig.zero_vec(): cyclo.one(sig.m)}
    for _ in range(rng.randint(1, 4)):
        vec = sig.exponent(
            [Fraction(rng.randint(0, 3), 2), 0, Fraction(rng.randint(0, 3), 2), 0]
        )
        if vec.is_zero() or vec.wdeg >= sig.N:
            continue
        terms[vec] = sampling.random_coeff(rng, sig.m)
    return TwistedSeries.monomial(sig, c, lead) * TwistedSeries(sig, terms)
