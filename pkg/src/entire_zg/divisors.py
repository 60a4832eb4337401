"""Divisor calculus for the ring of entire functions.

A principal ideal ``fE`` is determined by the zero set of ``f`` together with
its multiplicities, so the library computes with those instead of functions:

* :class:`FiniteDivisor` -- finitely many zeros at Gaussian-rational points.
* :class:`TailDivisor` -- zeros on an abstract countable support
  ``D = {d0, d1, ...}`` whose multiplicities form an :class:`EPSeq`.

An :class:`EPSeq` is an eventually quasi-polynomial sequence of naturals: from
some index on, the value at ``n`` is ``p_r(n)`` where ``r = n mod period`` and
each ``p_r`` is a rational polynomial that is integer valued on its residue
class.  Period 1 covers the ordinary polynomial sequences; larger periods are
needed for midpoints such as ``n + floor(n/2)``.  Two such sequences are
compared residue class by residue class; when all classes agree the verdict
is the same modulo every nonprincipal ultrafilter, otherwise
:class:`~entire_zg.errors.UltrafilterDependent` is raised.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import ceil, floor, gcd

from .errors import DomainError, UltrafilterDependent
from .scalars import GaussRational, Poly, multiplicity_at, poly_gcd, poly_lcm

__all__ = [
    "FiniteDivisor",
    "SplitScalar",
    "EPSeq",
    "TailDivisor",
    "Order",
    "NotSplittable",
    "div_mul",
    "div_gcd",
    "div_lcm",
    "divides",
    "adequate_split",
    "split_coprime",
    "eps_cmp",
    "fin_equiv",
    "dense_between",
    "to_poly",
    "from_poly",
    "N",
]


# ---------------------------------------------------------------------------
# finite tier


class FiniteDivisor:
    """Finite multiset of points of Q(i); the empty divisor is the unit class."""

    __slots__ = ("_items",)

    def __init__(self, support=None):
        items = {}
        for t, m in dict(support or {}).items():
            m = int(m)
            if m < 0:
                raise DomainError(f"negative multiplicity {m} at {t}")
            if m:
                items[GaussRational(t)] = m
        self._items = tuple(sorted(items.items(), key=lambda kv: kv[0].sort_key()))

    @property
    def support(self):
        return dict(self._items)

    def points(self):
        return [t for t, _ in self._items]

    def __getitem__(self, t):
        return self.support.get(GaussRational(t), 0)

    def multiplicity(self, t):
        return self[t]

    def __len__(self):
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    @property
    def degree(self):
        return sum(m for _, m in self._items)

    def is_unit(self):
        return not self._items

    def __eq__(self, other):
        if not isinstance(other, FiniteDivisor):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __mul__(self, other):
        return div_mul(self, other)

    def to_poly(self):
        return Poly.from_roots(self._items)

    def __str__(self):
        return "{" + ", ".join(f"{t}:{m}" for t, m in self._items) + "}"

    def __repr__(self):
        return f"FiniteDivisor({self})"


@dataclass(frozen=True)
class SplitScalar:
    """``unit * prod (z - t)^m`` over the points of ``divisor``."""

    unit: GaussRational
    divisor: FiniteDivisor

    def __post_init__(self):
        if GaussRational(self.unit).is_zero():
            raise DomainError("unit of a split scalar must be nonzero")

    def to_poly(self):
        return self.divisor.to_poly().scale(self.unit)

    def __str__(self):
        return f"{self.unit}*{self.divisor}"


class NotSplittable:
    """Marker returned by :func:`split_coprime` for one-point or empty supports."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotSplittable"

    def __bool__(self):
        return False


def to_poly(s):
    if isinstance(s, (SplitScalar, FiniteDivisor)):
        return s.to_poly()
    raise DomainError(f"cannot convert {type(s).__name__} to a polynomial")


def from_poly(f, roots):
    """Split ``f`` over the supplied roots; every root factor must be accounted for."""
    if f.is_zero():
        raise DomainError("the zero polynomial has no divisor")
    support = {}
    rest = f
    for t in roots:
        t = GaussRational(t)
        if t in support:
            continue
        m = multiplicity_at(f, t)
        if m:
            support[t] = m
            rest = rest // Poly.linear_root(t) ** m
    if rest.degree > 0:
        raise DomainError(f"unsplit factor remains: {rest.monic()}")
    return SplitScalar(rest.lead, FiniteDivisor(support))


# ---------------------------------------------------------------------------
# eventually quasi-polynomial sequences

N = Poly((0, 1))  # the index variable n


def _lcm(a, b):
    return a * b // gcd(a, b)


def _fr(c):
    return c.re


def _root_bound(p):
    """An integer beyond which ``p(n)`` has the sign of its leading coefficient."""
    if p.degree <= 0:
        return 0
    lead = abs(_fr(p.lead))
    return int(ceil(1 + max(abs(_fr(c)) / lead for c in p.coeffs[:-1])))


def _sign(p):
    if p.is_zero():
        return 0
    return 1 if _fr(p.lead) > 0 else -1


def _val(p, n):
    return p(n).re


class Order(Enum):
    LESS = "Less"
    EQUAL = "EqualCofinite"
    GREATER = "Greater"

    def __str__(self):
        return self.value


def _uniform(values, what):
    values = list(values)
    first = values[0]
    if any(v != first for v in values[1:]):
        raise UltrafilterDependent(f"{what} differs between residue classes")
    return first


@dataclass(frozen=True, repr=False)
class EPSeq:
    """Eventually quasi-polynomial sequence of naturals.

    ``classes[r]`` is the tail polynomial used at indices ``n = r mod period``.
    Below :attr:`threshold` the value is ``exceptions[n]`` when present and
    ``max(0, tail(n))`` otherwise.
    """

    classes: tuple
    exceptions: tuple = ()
    _threshold: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        classes = tuple(c if isinstance(c, Poly) else Poly.const(c) for c in self.classes)
        if not classes:
            raise DomainError("an EPSeq needs at least one tail polynomial")
        for r, p in enumerate(classes):
            if not p.is_real():
                raise DomainError("tail polynomials must have rational coefficients")
            if _sign(p) < 0:
                raise DomainError(f"tail {p.to_str('n')} is eventually negative")
            if not _integer_valued_on_class(p, r, len(classes)):
                raise DomainError(
                    f"tail {p.to_str('n')} is not integer valued on n = {r} mod {len(classes)}"
                )
        classes = _reduce_period(classes)
        period = len(classes)
        exc = {}
        for i, v in dict(self.exceptions).items():
            i, v = int(i), int(v)
            if i < 0 or v < 0:
                raise DomainError("exceptions map naturals to naturals")
            exc[i] = v
        start = max(exc) + 1 if exc else 0
        thr = start
        for r, p in enumerate(classes):
            bound = max(_root_bound(p), start)
            # scan back from the root bound to the last negative index of this class
            for n in range(bound, -1, -1):
                if n % period == r and n >= start and _val(p, n) < 0:
                    thr = max(thr, n + 1)
                    break
        canon = tuple(
            sorted((i, v) for i, v in exc.items() if v != max(0, floor(_val(classes[i % period], i))))
        )
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "exceptions", canon)
        object.__setattr__(self, "_threshold", thr)

    # construction ----------------------------------------------------------

    @classmethod
    def poly(cls, p, exceptions=None):
        if not isinstance(p, Poly):
            p = Poly.const(p)
        return cls((p,), tuple((exceptions or {}).items()))

    @classmethod
    def const(cls, c):
        return cls((Poly.const(c),))

    @classmethod
    def quasi(cls, polys, exceptions=None):
        return cls(tuple(polys), tuple((exceptions or {}).items()))

    # inspection ------------------------------------------------------------

    @property
    def period(self):
        return len(self.classes)

    @property
    def threshold(self):
        return self._threshold

    def tail_at(self, n):
        return self.classes[n % self.period]

    def __call__(self, n):
        exc = dict(self.exceptions)
        if n in exc:
            return exc[n]
        return max(0, floor(_val(self.tail_at(n), n)))

    def value(self, n):
        return self(n)

    def values(self, count):
        return [self(n) for n in range(count)]

    def _spread(self, period):
        return [self.classes[r % self.period] for r in range(period)]

    def degree(self):
        """Degree of growth; -1 for an eventually zero sequence."""
        return _uniform((p.degree for p in self.classes), "degree")

    def is_eventually_zero(self):
        return all(p.is_zero() for p in self.classes)

    def is_bounded(self):
        return _uniform((p.degree <= 0 for p in self.classes), "boundedness")

    def constant_value(self):
        """The eventual constant value, or None when the sequence grows."""
        if not self.is_bounded():
            return None
        return _uniform([int(_fr(p.coeff(0))) for p in self.classes], "eventual value")

    def is_zero_everywhere(self):
        return self.is_eventually_zero() and all(self(n) == 0 for n in range(self.threshold + 1))

    # arithmetic ------------------------------------------------------------

    def _combine(self, other, op, pointwise, bound_fn=None):
        period = _lcm(self.period, other.period)
        a, b = self._spread(period), other._spread(period)
        classes = [op(x, y) for x, y in zip(a, b)]
        limit = max(self.threshold, other.threshold)
        if bound_fn is not None:
            for r in range(period):
                limit = max(limit, bound_fn(a[r], b[r]))
        exc = {n: pointwise(self(n), other(n)) for n in range(limit + period)}
        return EPSeq(tuple(classes), tuple(exc.items()))

    def __add__(self, other):
        other = _as_eps(other)
        return self._combine(other, lambda x, y: x + y, lambda u, v: u + v)

    __radd__ = __add__

    def __sub__(self, other):
        """Difference; the result must be eventually nonnegative."""
        other = _as_eps(other)
        for x, y in zip(self._spread(_lcm(self.period, other.period)),
                        other._spread(_lcm(self.period, other.period))):
            if _sign(x - y) < 0:
                raise DomainError("difference of EPSeqs is eventually negative")
        return self._combine(
            other, lambda x, y: x - y, lambda u, v: max(u - v, 0), lambda x, y: _root_bound(x - y)
        )

    def monus(self, other):
        """Truncated difference ``max(self - other, 0)``."""
        other = _as_eps(other)
        return self._combine(
            other,
            lambda x, y: x - y if _sign(x - y) > 0 else Poly(),
            lambda u, v: max(u - v, 0),
            lambda x, y: _root_bound(x - y),
        )

    def maximum(self, other):
        other = _as_eps(other)
        return self._combine(
            other,
            lambda x, y: x if _sign(x - y) >= 0 else y,
            max,
            lambda x, y: _root_bound(x - y),
        )

    def minimum(self, other):
        other = _as_eps(other)
        return self._combine(
            other,
            lambda x, y: y if _sign(x - y) >= 0 else x,
            min,
            lambda x, y: _root_bound(x - y),
        )

    def scale(self, k):
        k = int(k)
        if k < 0:
            raise DomainError("EPSeq scale factor must be natural")
        return EPSeq(
            tuple(p.scale(k) for p in self.classes),
            tuple((i, v * k) for i, v in self.exceptions),
        )

    def floor_scale(self, q):
        """``floor(q * self(n))`` for a nonnegative rational ``q``."""
        q = Fraction(q)
        if q < 0:
            raise DomainError("floor_scale needs a nonnegative factor")
        P = self.period
        scaled = [p.scale(q) for p in self.classes]
        # denominators of each class polynomial in the class parameter m, n = r + P*m
        K = 1
        subs = []
        for r, h in enumerate(scaled):
            g = _compose_affine(h, r, P)
            subs.append(g)
            for c in g.coeffs:
                K = _lcm(K, c.re.denominator)
        new_period = P * K
        classes = []
        for rr in range(new_period):
            r, s = rr % P, rr // P
            g = subs[r]
            frac = g(s).re - floor(g(s).re)
            classes.append(scaled[r] - Poly.const(frac))
        limit = self.threshold
        exc = {n: floor(q * self(n)) for n in range(limit + new_period)}
        return EPSeq(tuple(classes), tuple(exc.items()))

    # rendering -------------------------------------------------------------

    def tail_str(self):
        return " | ".join(p.to_str("n") for p in self.classes)

    def __str__(self):
        body = self.tail_str()
        if self.exceptions:
            body += "; " + ", ".join(f"{i}:{v}" for i, v in self.exceptions)
        return f"tail({body})"

    def __repr__(self):
        return f"EPSeq({self})"


def _as_eps(x):
    if isinstance(x, EPSeq):
        return x
    if isinstance(x, int):
        return EPSeq.const(x)
    if isinstance(x, Poly):
        return EPSeq.poly(x)
    raise TypeError(f"cannot use {type(x).__name__} as an EPSeq")


def _compose_affine(p, r, P):
    """``p(r + P*m)`` as a polynomial in ``m``."""
    lin = Poly((r, P))
    out = Poly()
    for c in reversed(p.coeffs):
        out = out * lin + Poly.const(c)
    return out


def _integer_valued_on_class(p, r, P):
    g = _compose_affine(p, r, P)
    return all(g(m).re.denominator == 1 for m in range(max(g.degree, 0) + 1))


def _reduce_period(classes):
    P = len(classes)
    for d in range(1, P + 1):
        if P % d == 0 and all(classes[r] == classes[r % d] for r in range(P)):
            return classes[:d]
    return classes


def eps_cmp(mu, nu):
    """Eventual comparison of two sequences (independent of the ultrafilter)."""
    mu, nu = _as_eps(mu), _as_eps(nu)
    period = _lcm(mu.period, nu.period)
    signs = [_sign(y - x) for x, y in zip(mu._spread(period), nu._spread(period))]
    s = _uniform(signs, "eventual order")
    return {1: Order.LESS, 0: Order.EQUAL, -1: Order.GREATER}[s]


def fin_equiv(mu, nu):
    """True when the difference of the two sequences is bounded."""
    mu, nu = _as_eps(mu), _as_eps(nu)
    period = _lcm(mu.period, nu.period)
    flags = [(y - x).degree <= 0 for x, y in zip(mu._spread(period), nu._spread(period))]
    return _uniform(flags, "finite equivalence")


def dense_between(mu, nu):
    """A sequence strictly between ``mu < nu`` with unbounded gaps on both sides."""
    mu, nu = _as_eps(mu), _as_eps(nu)
    if eps_cmp(mu, nu) is not Order.LESS:
        raise DomainError("dense_between needs mu < nu")
    if fin_equiv(mu, nu):
        raise DomainError("endpoints are finite equivalent: the interval has finite length")
    gap = nu.monus(mu)
    return mu + gap.floor_scale(Fraction(1, 2))


# ---------------------------------------------------------------------------
# symbolic tier


@dataclass(frozen=True, repr=False)
class TailDivisor:
    """Zeros on the abstract support ``d0, d1, ...`` with EPSeq multiplicities."""

    multiplicity: EPSeq

    def __post_init__(self):
        object.__setattr__(self, "multiplicity", _as_eps(self.multiplicity))

    def has_infinite_support(self):
        return not self.multiplicity.is_eventually_zero()

    def is_unit(self):
        return self.multiplicity.is_zero_everywhere()

    def at(self, k):
        return self.multiplicity(k)

    def support_indices(self, count):
        return [k for k in range(count) if self.multiplicity(k) > 0]

    def materialize(self, k):
        """Concrete point standing for ``d_k``: the Gaussian integer ``k``."""
        return GaussRational(k)

    def __str__(self):
        return str(self.multiplicity)

    def __repr__(self):
        return f"TailDivisor({self})"


def _is_tail(x):
    return isinstance(x, TailDivisor)


def _exact(f, g):
    """Both scalars as polynomials when either one is given as a polynomial."""
    if isinstance(f, Poly) or isinstance(g, Poly):
        if _is_tail(f) or _is_tail(g):
            raise DomainError("cannot mix polynomials with tail divisors")
        return tuple(x if isinstance(x, Poly) else x.to_poly() for x in (f, g))
    return None


def div_mul(f, g):
    """Product of divisors: multiplicities add.

    Like the other lattice operations it also accepts polynomials, which
    stand for their divisor (the zero polynomial for the zero ideal).
    """
    if (ex := _exact(f, g)) is not None:
        return ex[0] * ex[1]
    if _is_tail(f) and _is_tail(g):
        return TailDivisor(f.multiplicity + g.multiplicity)
    _check_finite(f, g)
    out = f.support
    for t, m in g:
        out[t] = out.get(t, 0) + m
    return FiniteDivisor(out)


def div_gcd(f, g):
    if (ex := _exact(f, g)) is not None:
        return poly_gcd(*ex)
    if _is_tail(f) and _is_tail(g):
        return TailDivisor(f.multiplicity.minimum(g.multiplicity))
    _check_finite(f, g)
    gs = g.support
    return FiniteDivisor({t: min(m, gs[t]) for t, m in f if t in gs})


def div_lcm(f, g):
    if (ex := _exact(f, g)) is not None:
        return poly_lcm(*ex)
    if _is_tail(f) and _is_tail(g):
        return TailDivisor(f.multiplicity.maximum(g.multiplicity))
    _check_finite(f, g)
    out = f.support
    for t, m in g:
        out[t] = max(out.get(t, 0), m)
    return FiniteDivisor(out)


def divides(f, g):
    """Does the function with divisor ``f`` divide the one with divisor ``g``?"""
    if (ex := _exact(f, g)) is not None:
        a, b = ex
        return b.is_zero() if a.is_zero() else (b % a).is_zero()
    if _is_tail(f) and _is_tail(g):
        mu, nu = f.multiplicity, g.multiplicity
        period = _lcm(mu.period, nu.period)
        for x, y in zip(mu._spread(period), nu._spread(period)):
            if _sign(y - x) < 0:
                return False
        limit = max(mu.threshold, nu.threshold) + period
        for x, y in zip(mu._spread(period), nu._spread(period)):
            limit = max(limit, _root_bound(y - x) + period)
        return all(mu(n) <= nu(n) for n in range(limit))
    _check_finite(f, g)
    gs = g.support
    return all(gs.get(t, 0) >= m for t, m in f)


def adequate_split(f, g):
    """Factor ``f = h*u`` with ``h`` coprime to ``g`` and ``Z(u)`` inside ``Z(g)``."""
    _check_finite(f, g)
    if f.is_unit():
        raise DomainError("adequate_split needs a nonunit f")
    gs = g.support
    h = FiniteDivisor({t: m for t, m in f if t not in gs})
    u = FiniteDivisor({t: m for t, m in f if t in gs})
    return h, u


def split_coprime(f):
    """Split into two coprime nonunit factors, or return :class:`NotSplittable`."""
    if _is_tail(f):
        return _split_tail(f)
    _check_finite(f)
    items = list(f)
    if len(items) < 2:
        return NotSplittable()
    return FiniteDivisor(dict(items[:1])), FiniteDivisor(dict(items[1:]))


def _split_tail(f):
    mu = f.multiplicity
    if not f.has_infinite_support():
        pts = [k for k in range(mu.threshold + 1) if mu(k) > 0]
        if len(pts) < 2:
            return NotSplittable()
        first = pts[0]
        one = EPSeq.quasi([Poly()], {first: mu(first)})
        rest = EPSeq.quasi([Poly()], {k: mu(k) for k in pts[1:]})
        return TailDivisor(one), TailDivisor(rest)
    # refine to an even period so that the nonzero classes split into two infinite parts
    period = 2 * mu.period
    polys = mu._spread(period)
    nonzero = [r for r, p in enumerate(polys) if not p.is_zero()]
    left_classes = set(nonzero[::2])
    zero = Poly()
    left = [p if r in left_classes else zero for r, p in enumerate(polys)]
    right = [zero if r in left_classes else p for r, p in enumerate(polys)]
    lim = mu.threshold + period
    left_exc = {n: (mu(n) if n % period in left_classes else 0) for n in range(lim)}
    right_exc = {n: (0 if n % period in left_classes else mu(n)) for n in range(lim)}
    return TailDivisor(EPSeq.quasi(left, left_exc)), TailDivisor(EPSeq.quasi(right, right_exc))


def _check_finite(*ds):
    for d in ds:
        if not isinstance(d, FiniteDivisor):
            raise DomainError(
                f"expected divisors of one tier, got {', '.join(type(x).__name__ for x in ds)}"
            )
