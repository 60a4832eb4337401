"""Exact arithmetic in Q(i) and Q(i)[z].

A Gaussian rational is stored as three integers ``(a, b, d)`` meaning
``(a + b*i) / d`` with ``d > 0`` and ``gcd(a, b, d) = 1``.  Keeping a single
common denominator makes the hot loops (polynomial products and divisions)
run on machine-friendly integer arithmetic instead of pairs of Fractions.

Polynomials keep their coefficients lowest degree first, with no trailing
zero coefficient.  The zero polynomial has the empty coefficient tuple and
degree -1.
"""

from fractions import Fraction
from math import gcd

from .errors import DomainError

__all__ = [
    "GaussRational",
    "Poly",
    "I",
    "Z",
    "poly_divmod",
    "poly_xgcd",
    "poly_gcd",
    "poly_lcm",
    "multiplicity_at",
    "poly_eval",
    "poly_mul",
    "poly_add",
    "poly_pow",
    "exact_div",
    "saturation_part",
    "derivative",
    "squarefree_factors",
]


class GaussRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussRational) and im == 0:
            self._a, self._b, self._d = re._a, re._b, re._d
            return
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._a = re.numerator * (d // re.denominator)
        self._b = im.numerator * (d // im.denominator)
        self._d = d

    @classmethod
    def _raw(cls, a, b, d):
        if d != 1:
            if d < 0:
                a, b, d = -a, -b, -d
            g = gcd(gcd(a, b), d)
            if g != 1:
                a //= g
                b //= g
                d //= g
        obj = object.__new__(cls)
        obj._a = a
        obj._b = b
        obj._d = d
        return obj

    @property
    def re(self):
        return Fraction(self._a, self._d)

    @property
    def im(self):
        return Fraction(self._b, self._d)

    def is_zero(self):
        return self._a == 0 and self._b == 0

    def is_real(self):
        return self._b == 0

    def is_integral(self):
        """True for Gaussian integers."""
        return self._d == 1

    def __bool__(self):
        return not self.is_zero()

    def conjugate(self):
        return GaussRational._raw(self._a, -self._b, self._d)

    def norm(self):
        """Field norm ``re^2 + im^2`` as a Fraction."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self._d == other._d == 1:
            return GaussRational._raw(self._a + other._a, self._b + other._b, 1)
        return GaussRational._raw(
            self._a * other._d + other._a * self._d,
            self._b * other._d + other._b * self._d,
            self._d * other._d,
        )

    __radd__ = __add__

    def __neg__(self):
        return GaussRational._raw(-self._a, -self._b, self._d)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, d = self._a, self._b, self._d
        c, e, f = other._a, other._b, other._d
        return GaussRational._raw(a * c - b * e, a * e + b * c, d * f)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i)")
        n = self._a * self._a + self._b * self._b
        return GaussRational._raw(self._d * self._a, -self._d * self._b, n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def sort_key(self):
        return (self.re, self.im)

    def __repr__(self):
        return f"GaussRational({self})"

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = f"{im}i"
        if re == 0:
            return ims
        if ims.startswith("-"):
            return f"{re}{ims}"
        return f"{re}+{ims}"


def _coerce(x):
    if isinstance(x, GaussRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRational(x)
    return NotImplemented


ZERO = GaussRational(0)
ONE = GaussRational(1)
I = GaussRational(0, 1)


class Poly:
    """A polynomial over Q(i), coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, GaussRational) else GaussRational(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _trusted(cls, cs):
        cs = list(cs)
        while cs and cs[-1].is_zero():
            cs.pop()
        obj = object.__new__(cls)
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def linear_root(cls, t):
        """The monic linear polynomial ``z - t``."""
        return cls((-GaussRational(t), ONE))

    @classmethod
    def from_roots(cls, roots):
        p = cls.const(1)
        for t, m in roots:
            p = p * cls.linear_root(t) ** m
        return p

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def is_unit(self):
        """Nonzero constants are the units of Q(i)[z]."""
        return len(self.coeffs) == 1

    def is_real(self):
        return all(c.is_real() for c in self.coeffs)

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, GaussRational)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly._trusted(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._trusted([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._trusted(())
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly._trusted(out)

    __rmul__ = __mul__

    def scale(self, c):
        c = GaussRational(c)
        return Poly._trusted([x * c for x in self.coeffs])

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise DomainError("polynomial power needs a natural exponent")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def __call__(self, t):
        t = GaussRational(t)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.lead.inverse())

    def taylor(self, t):
        """Coefficients of this polynomial in powers of ``(z - t)``."""
        t = GaussRational(t)
        cs = list(self.coeffs)
        n = len(cs)
        out = []
        for _ in range(n):
            # synthetic division by (z - t); the remainder is the next coefficient
            acc = ZERO
            q = [ZERO] * max(len(cs) - 1, 0)
            for k in range(len(cs) - 1, -1, -1):
                acc = acc * t + cs[k]
                if k > 0:
                    q[k - 1] = acc
            out.append(acc)
            cs = q
        return out

    def to_str(self, var="z"):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                s = str(c)
            elif c == ONE:
                s = mono
            elif c == -ONE:
                s = "-" + mono
            elif c.is_real() or c.re == 0:
                s = f"{c}*{mono}"
            else:
                s = f"({c})*{mono}"
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += s if s.startswith("-") else "+" + s
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self})"


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction, GaussRational)):
        return Poly.const(x)
    return NotImplemented


Z = Poly((0, 1))


def poly_divmod(f, g):
    """Euclidean division: ``f = q*g + r`` with ``deg r < deg g``."""
    if g.is_zero():
        raise DomainError("division by the zero polynomial")
    r = list(f.coeffs)
    dg = g.degree
    if len(r) - 1 < dg:
        return Poly._trusted(()), f
    inv = g.lead.inverse()
    gc = g.coeffs
    q = [ZERO] * (len(r) - dg)
    for k in range(len(r) - 1 - dg, -1, -1):
        c = r[k + dg]
        if c.is_zero():
            continue
        c = c * inv
        q[k] = c
        for j in range(dg):
            if not gc[j].is_zero():
                r[k + j] = r[k + j] - c * gc[j]
        r[k + dg] = ZERO
    return Poly._trusted(q), Poly._trusted(r[:dg])


def exact_div(f, g):
    q, r = poly_divmod(f, g)
    if not r.is_zero():
        raise DomainError(f"{g} does not divide {f}")
    return q


def poly_xgcd(f, g):
    """Return ``(d, u, v)`` with ``f*u + g*v = d`` and ``d`` monic."""
    if f.is_zero() and g.is_zero():
        raise DomainError("gcd of two zero polynomials is undefined")
    r0, r1 = f, g
    u0, u1 = Poly.const(1), Poly._trusted(())
    v0, v1 = Poly._trusted(()), Poly.const(1)
    while not r1.is_zero():
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    c = r0.lead.inverse()
    return r0.scale(c), u0.scale(c), v0.scale(c)


def poly_gcd(f, g):
    """Monic gcd; ``gcd(0, 0) = 0``."""
    if f.is_zero() and g.is_zero():
        return f
    r0, r1 = f, g
    while not r1.is_zero():
        r0, r1 = r1, poly_divmod(r0, r1)[1]
    return r0.monic()


def poly_lcm(f, g):
    """Monic lcm; zero when either argument is zero."""
    if f.is_zero() or g.is_zero():
        return Poly._trusted(())
    return exact_div(f * g, poly_gcd(f, g)).monic()


def multiplicity_at(f, t):
    """Largest ``m`` with ``(z - t)^m`` dividing ``f``."""
    if f.is_zero():
        raise DomainError("multiplicity of the zero polynomial is undefined")
    t = GaussRational(t)
    cs = list(f.coeffs)
    m = 0
    while len(cs) > 1:
        acc = ZERO
        q = [ZERO] * (len(cs) - 1)
        for k in range(len(cs) - 1, 0, -1):
            acc = acc * t + cs[k]
            q[k - 1] = acc
        if not (acc * t + cs[0]).is_zero():
            break
        cs = q
        m += 1
    return m


def saturation_part(f, g):
    """The monic factor of ``f`` carried by the roots of ``g``.

    Computed as ``gcd(f, g^deg f)``: every root of ``g`` appears in ``g^N``
    with multiplicity at least ``N``, so the gcd keeps exactly the part of
    ``f`` lying over ``Z(g)``.
    """
    if f.is_zero():
        raise DomainError("saturation of the zero polynomial")
    if g.is_zero():
        return f.monic()
    if g.is_unit() or f.is_unit():
        return Poly.const(1)
    return poly_gcd(f, g ** f.degree)


def derivative(f):
    return Poly._trusted(c * k for k, c in enumerate(f.coeffs) if k)


def squarefree_factors(f):
    """Yun's decomposition: monic ``[a1, a2, ...]`` with ``f ~ prod a_i^i``.

    Each ``a_i`` is squarefree and collects the roots of multiplicity ``i``.
    """
    if f.is_zero():
        raise DomainError("square-free decomposition of the zero polynomial")
    out = []
    g = poly_gcd(f, derivative(f))
    b = exact_div(f, g)
    c = exact_div(derivative(f), g)
    d = c - derivative(b)
    while b.degree > 0:
        a = poly_gcd(b, d)
        out.append(a)
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = c - derivative(b)
    return out


def poly_eval(f, t):
    return f(t)


def poly_mul(f, g):
    return f * g


def poly_add(f, g):
    return f + g


def poly_pow(f, k):
    return f ** k
