from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from entire_zg.errors import DomainError
from entire_zg.scalars import (
    GaussRational,
    Poly,
    multiplicity_at,
    poly_divmod,
    poly_gcd,
    poly_lcm,
    poly_xgcd,
    saturation_part,
)
from entire_zg.dsl import parse_poly

from conftest import gauss, naive_eval, naive_multiplicity, polys

z = Poly((0, 1))
I = GaussRational(0, 1)


def P(text):
    return parse_poly(text)


class TestGaussRational:
    def test_canonical_form(self):
        assert GaussRational(Fraction(2, 4), Fraction(-3, 6)) == GaussRational(Fraction(1, 2), Fraction(-1, 2))
        assert str(GaussRational(Fraction(1, 2), 3)) == "1/2+3i"
        assert str(GaussRational(0, -1)) == "-i"

    def test_i_squared(self):
        assert I * I == GaussRational(-1)

    @given(gauss, gauss)
    def test_field_axioms(self, a, b):
        assert a + b == b + a
        assert a * b == b * a
        if not b.is_zero():
            assert (a / b) * b == a

    @given(gauss)
    def test_norm_is_product_with_conjugate(self, a):
        assert a * a.conjugate() == GaussRational(a.norm())


class TestDivmod:
    def test_worked_examples(self):
        assert poly_divmod(P("z^2-1"), P("z-1")) == (P("z+1"), Poly())
        assert poly_divmod(z, z) == (Poly.const(1), Poly())
        assert poly_divmod(P("z^3+2*z"), P("z^2+1")) == (z, z)

    def test_zero_divisor_rejected(self):
        with pytest.raises((DomainError, ZeroDivisionError)):
            poly_divmod(z, Poly())

    @given(polys(), polys(nonzero=True))
    def test_identity_and_degree(self, f, g):
        q, r = poly_divmod(f, g)
        assert q * g + r == f
        assert r.is_zero() or r.degree < g.degree

    @given(polys(), polys(nonzero=True), gauss)
    def test_matches_pointwise_evaluation(self, f, g, t):
        q, r = poly_divmod(f, g)
        assert naive_eval(f, t) == naive_eval(q, t) * naive_eval(g, t) + naive_eval(r, t)


class TestGcd:
    def test_worked_examples(self):
        d, u, v = poly_xgcd(z, P("z-1"))
        assert (d, u, v) == (Poly.const(1), Poly.const(1), Poly.const(-1))
        f = P("2*z-4")
        assert poly_xgcd(f, Poly()) == (P("z-2"), Poly.const(Fraction(1, 2)), Poly())
        f, g = P("(z-1)^2*(z-2)"), P("(z-1)*(z-3)")
        d, u, v = poly_xgcd(f, g)
        assert d == P("z-1")
        assert f * u + g * v == d

    def test_both_zero_rejected(self):
        with pytest.raises(DomainError):
            poly_xgcd(Poly(), Poly())

    @given(polys(), polys())
    def test_bezout_certificate(self, f, g):
        if f.is_zero() and g.is_zero():
            return
        d, u, v = poly_xgcd(f, g)
        assert f * u + g * v == d
        assert d.lead == GaussRational(1)
        assert (f % d).is_zero() and (g % d).is_zero()

    @given(polys(max_deg=3), polys(max_deg=3), polys(max_deg=2, nonzero=True))
    def test_common_factor_divides_gcd(self, f, g, h):
        d = poly_gcd(f * h, g * h)
        assert (d % h).is_zero() or d.is_zero()

    @given(polys(max_deg=4, nonzero=True), polys(max_deg=4, nonzero=True))
    def test_gcd_times_lcm(self, f, g):
        assert poly_gcd(f, g) * poly_lcm(f, g) == (f * g).monic()


class TestMultiplicity:
    def test_examples(self):
        assert multiplicity_at(P("(z-1)^3*(z+2)"), GaussRational(1)) == 3
        assert multiplicity_at(P("z^2+1"), I) == 1
        assert multiplicity_at(P("z^2+1"), GaussRational(0)) == 0

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            multiplicity_at(Poly(), GaussRational(0))

    @given(polys(nonzero=True), gauss, st.integers(0, 4))
    def test_against_derivative_oracle(self, f, t, extra):
        f = f * Poly.linear_root(t) ** extra
        assert multiplicity_at(f, t) == naive_multiplicity(f, t)


class TestSaturation:
    def test_example(self):
        f = P("(z-1)^2*(z-2)*(z+1)")
        assert saturation_part(f, P("(z-1)*(z+1)^5")) == P("(z-1)^2*(z+1)")

    @given(polys(max_deg=3, nonzero=True), polys(max_deg=3, nonzero=True))
    def test_saturation_divides_and_is_coprime_to_rest(self, f, g):
        s = saturation_part(f, g)
        assert (f % s).is_zero()
        rest = f // s
        assert poly_gcd(rest, g).degree == 0


def test_operators_and_printing():
    p = (z - 1) ** 2 * (z + I)
    assert str(p) == "z^3+(-2+i)*z^2+(1-2i)*z+i"
    assert parse_poly(str(p)) == p
    assert p(GaussRational(1)) == GaussRational(0)
    assert divmod(p, z - 1) == poly_divmod(p, z - 1)
