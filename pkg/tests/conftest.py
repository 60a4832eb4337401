"""Shared hypothesis strategies and small oracles."""

from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import settings

from entire_zg.divisors import EPSeq, FiniteDivisor
from entire_zg.scalars import GaussRational, Poly

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")

GRID = [GaussRational(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)]

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gauss = st.builds(GaussRational, small_rationals, small_rationals)
grid_points = st.sampled_from(GRID)


@st.composite
def polys(draw, max_deg=5, nonzero=False):
    cs = draw(st.lists(gauss, min_size=1 if nonzero else 0, max_size=max_deg + 1))
    p = Poly(cs)
    if nonzero and p.is_zero():
        p = Poly.const(1)
    return p


@st.composite
def divisors(draw, max_support=6, max_mult=5):
    pts = draw(st.lists(grid_points, unique=True, max_size=max_support))
    return FiniteDivisor({t: draw(st.integers(1, max_mult)) for t in pts})


@st.composite
def eps_seqs(draw, max_deg=3):
    """Polynomial sequences with nonnegative integer coefficients."""
    cs = draw(st.lists(st.integers(0, 4), min_size=1, max_size=max_deg + 1))
    return EPSeq.poly(Poly(cs))


def naive_eval(p, t):
    """Horner-free evaluation, an oracle independent of ``Poly.__call__``."""
    total = GaussRational(0)
    power = GaussRational(1)
    for c in p.coeffs:
        total = total + c * power
        power = power * t
    return total


def naive_multiplicity(p, t):
    """Count how often the derivative chain vanishes at ``t``."""
    m = 0
    q = p
    while not q.is_zero() and naive_eval(q, t) == 0:
        m += 1
        q = Poly([c * k for k, c in enumerate(q.coeffs)][1:])
    return m
