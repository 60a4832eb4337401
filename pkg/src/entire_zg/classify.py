"""Cuts, admissible triples and the classification of points.

An indecomposable pp-type over ``E`` is recorded by a triple ``(U, I, J)``:
an ultrafilter ``U`` on a zero set, the annihilator ideal ``I`` and the
non-divisibility ideal ``J``.  Both ideals are described by cuts on the
multiplicity chain of ``U``:

* fixed tier, ``U`` generated by a point ``t``: the cut ``FixedThreshold(k)``
  is ``(z-t)^k E``, the functions vanishing to order at least ``k`` at ``t``;
* free tier, ``U`` nonprincipal on an abstract support: ``PrincipalAbove(g)``
  holds the functions whose multiplicity sequence is eventually ``>= g`` and
  ``DegreeAtLeast(d)`` those whose multiplicity grows with degree ``>= d``;
* ``ZeroIdeal`` in either tier.

Multiplicities of the zero function are represented by ``None`` (infinity).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd, lcm

from .divisors import EPSeq, Order, eps_cmp
from .errors import DomainError, UltrafilterDependent
from .pp import Ann, Divides, FiniteLength, evaluate
from .scalars import GaussRational, Poly

__all__ = [
    "Fixed",
    "FreeTail",
    "EmptyU",
    "FREE",
    "EMPTY",
    "Cut",
    "ZeroIdeal",
    "ZERO_CUT",
    "FixedThreshold",
    "PrincipalAbove",
    "DegreeAtLeast",
    "AdmissibleTriple",
    "ValidationReport",
    "ShiftStep",
    "ShiftVerdict",
    "PointClass",
    "cut_contains",
    "cut_leq",
    "is_weakly_prime",
    "sharp",
    "is_prime_cut",
    "validate_triple",
    "check_triple",
    "localizing_ideal",
    "apply_shift",
    "shift_equivalent",
    "classify",
    "pp_type_of_element",
]


# ---------------------------------------------------------------------------
# ultrafilters


@dataclass(frozen=True, slots=True)
class Fixed:
    """The principal ultrafilter generated by the point ``t``."""

    t: GaussRational

    def __post_init__(self):
        object.__setattr__(self, "t", GaussRational(self.t))

    def __str__(self):
        return f"fixed({self.t})"


class _Singleton:
    __slots__ = ()
    _name = ""

    def __new__(cls):
        inst = cls.__dict__.get("_inst")
        if inst is None:
            inst = super().__new__(cls)
            setattr(cls, "_inst", inst)
        return inst

    def __str__(self):
        return self._name

    def __repr__(self):
        return type(self).__name__ + "()"

    def __reduce__(self):
        return (type(self), ())


class FreeTail(_Singleton):
    """A nonprincipal ultrafilter on the abstract support ``d0, d1, ...``.

    Comparisons are made eventually, i.e. modulo the cofinite filter.
    """

    _name = "free"


class EmptyU(_Singleton):
    """No ultrafilter: only used with two zero cuts."""

    _name = "empty"


FREE = FreeTail()
EMPTY = EmptyU()


# ---------------------------------------------------------------------------
# cuts


class Cut:
    """Base class; ``a <= b`` is inclusion of the corresponding ideals."""

    __slots__ = ()

    def __le__(self, other):
        return cut_leq(self, other)

    def __lt__(self, other):
        return cut_leq(self, other) and self != other

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class ZeroIdeal(Cut, _Singleton):
    _name = "0"

    def __repr__(self):
        return "ZeroIdeal()"


ZERO_CUT = ZeroIdeal()


@dataclass(frozen=True, slots=True, repr=False)
class FixedThreshold(Cut):
    """``(z-t)^k E`` for the point ``t`` of the surrounding triple."""

    k: int

    def __post_init__(self):
        if int(self.k) < 1:
            raise DomainError("FixedThreshold needs k >= 1")
        object.__setattr__(self, "k", int(self.k))

    def __str__(self):
        return str(self.k)


def _strip(seq):
    """Forget exceptions: a cut only sees the eventual behaviour."""
    if not isinstance(seq, EPSeq):
        seq = EPSeq.poly(seq) if isinstance(seq, Poly) else EPSeq.const(seq)
    return EPSeq(seq.classes)


def _eps_text(seq):
    if seq.period == 1:
        return seq.classes[0].to_str("n")
    return f"tail({seq.tail_str()})"


@dataclass(frozen=True, slots=True, repr=False)
class PrincipalAbove(Cut):
    """Functions whose multiplicity is eventually at least ``gamma``."""

    gamma: EPSeq

    def __post_init__(self):
        g = _strip(self.gamma)
        if eps_cmp(g, EPSeq.const(1)) is Order.LESS:
            raise DomainError(f"PrincipalAbove needs a generator eventually >= 1, got {g}")
        object.__setattr__(self, "gamma", g)

    def __str__(self):
        return f"above({_eps_text(self.gamma)})"


@dataclass(frozen=True, slots=True, repr=False)
class DegreeAtLeast(Cut):
    """Functions whose multiplicity grows with degree at least ``d``."""

    d: int

    def __post_init__(self):
        if int(self.d) < 1:
            raise DomainError("DegreeAtLeast needs d >= 1")
        object.__setattr__(self, "d", int(self.d))

    def __str__(self):
        return f"deg({self.d})"


_FREE_CUTS = (PrincipalAbove, DegreeAtLeast)


def _tier(cut):
    if isinstance(cut, FixedThreshold):
        return "fixed"
    if isinstance(cut, _FREE_CUTS):
        return "free"
    if isinstance(cut, ZeroIdeal):
        return None
    raise TypeError(f"not a cut: {cut!r}")


def cut_contains(cut, mult):
    """Does an element of multiplicity ``mult`` lie in the ideal?

    ``mult`` is an int (fixed tier), an :class:`EPSeq` (free tier) or
    ``None`` for the zero function.
    """
    if mult is None:
        return True
    if isinstance(cut, ZeroIdeal):
        return False
    if isinstance(cut, FixedThreshold):
        return mult >= cut.k
    if isinstance(cut, PrincipalAbove):
        return eps_cmp(mult, cut.gamma) is not Order.LESS
    if isinstance(cut, DegreeAtLeast):
        return mult.degree() >= cut.d
    raise TypeError(f"not a cut: {cut!r}")


def cut_leq(a, b):
    """Inclusion of ideals; cuts of different tiers only compare through zero."""
    if isinstance(a, ZeroIdeal):
        return True
    if isinstance(b, ZeroIdeal):
        return False
    if _tier(a) != _tier(b):
        raise DomainError(f"cuts {a} and {b} live on different chains")
    if isinstance(a, FixedThreshold):
        return a.k >= b.k
    if isinstance(a, PrincipalAbove) and isinstance(b, PrincipalAbove):
        return eps_cmp(a.gamma, b.gamma) is not Order.LESS
    if isinstance(a, DegreeAtLeast) and isinstance(b, DegreeAtLeast):
        return a.d >= b.d
    if isinstance(a, DegreeAtLeast):
        # every sequence of degree >= d eventually passes gamma iff deg gamma < d
        return b.gamma.degree() < a.d
    return a.gamma.degree() >= b.d


def _sample_outside(cut):
    """Multiplicities of a few elements outside the ideal."""
    if isinstance(cut, FixedThreshold):
        return list(range(cut.k))
    if isinstance(cut, ZeroIdeal):
        return list(range(4)) + [EPSeq.poly(Poly((0, 1)))]
    n = Poly((0, 1))
    pool = [EPSeq.const(c) for c in range(3)] + [EPSeq.poly(n), EPSeq.poly(n * n), EPSeq.poly(n ** 3)]
    if isinstance(cut, PrincipalAbove):
        g = cut.gamma
        pool += [g.monus(1), g.floor_scale(Fraction(1, 2))]
    out = []
    for m in pool:
        # a sample whose membership depends on the ultrafilter decides nothing
        try:
            if not cut_contains(cut, m):
                out.append(m)
        except UltrafilterDependent:
            pass
    return out


def _mult_max(x, y):
    if isinstance(x, EPSeq) or isinstance(y, EPSeq):
        x = x if isinstance(x, EPSeq) else EPSeq.const(x)
        y = y if isinstance(y, EPSeq) else EPSeq.const(y)
        return x.maximum(y)
    return max(x, y)


def is_weakly_prime(cut):
    """Closure of the complement under lcm, verified on sampled elements.

    lcm takes the pointwise maximum of multiplicities, and every catalog cut
    is an up-set of a totally ordered chain, so the check always passes; it is
    kept as an executable verification.
    """
    outside = _sample_outside(cut)
    return all(not cut_contains(cut, _mult_max(x, y)) for x in outside for y in outside)


def sharp(cut):
    """The prime ideal ``{r : a*r in I for some a outside I}``."""
    if isinstance(cut, ZeroIdeal):
        return cut
    if isinstance(cut, FixedThreshold):
        return FixedThreshold(1)
    if isinstance(cut, PrincipalAbove):
        return PrincipalAbove(EPSeq.const(1))
    if isinstance(cut, DegreeAtLeast):
        return cut
    raise TypeError(f"not a cut: {cut!r}")


def is_prime_cut(cut):
    if isinstance(cut, ZeroIdeal):
        return True
    if isinstance(cut, FixedThreshold):
        return cut.k == 1
    if isinstance(cut, PrincipalAbove):
        return cut.gamma == EPSeq.const(1)
    if isinstance(cut, DegreeAtLeast):
        return True
    raise TypeError(f"not a cut: {cut!r}")


# ---------------------------------------------------------------------------
# triples


@dataclass(frozen=True, slots=True)
class AdmissibleTriple:
    U: object
    I: Cut
    J: Cut

    def __str__(self):
        return f"triple({self.U}, {self.I}, {self.J})"

    @property
    def tier(self):
        if isinstance(self.U, Fixed):
            return "fixed"
        if isinstance(self.U, FreeTail):
            return "free"
        return "empty"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    case: int = 0
    message: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        return f"ok, case {self.case}" if self.ok else f"violation: {self.message}"


_CASE_TEXT = {
    1: "I = J = 0 with the empty ultrafilter",
    2: "I nonzero, J = 0",
    3: "I = 0, J nonzero",
    4: "I and J nonzero on a common ultrafilter",
}


def validate_triple(tr):
    U, I, J = tr.U, tr.I, tr.J
    for name, c in (("I", I), ("J", J)):
        if not isinstance(c, Cut):
            return ValidationReport(False, message=f"{name} is not a cut")
    zi, zj = isinstance(I, ZeroIdeal), isinstance(J, ZeroIdeal)
    if isinstance(U, EmptyU):
        if zi and zj:
            return ValidationReport(True, 1, _CASE_TEXT[1])
        return ValidationReport(False, message="the empty ultrafilter only goes with I = J = 0")
    if zi and zj:
        return ValidationReport(False, message="I = J = 0 requires the empty ultrafilter")
    want = "fixed" if isinstance(U, Fixed) else "free" if isinstance(U, FreeTail) else None
    if want is None:
        return ValidationReport(False, message=f"unknown ultrafilter {U!r}")
    for name, c in (("I", I), ("J", J)):
        tier = _tier(c)
        if tier is not None and tier != want:
            return ValidationReport(
                False, message=f"tier mismatch: {name} = {c} is a {tier} cut but U is {want}"
            )
    for name, c in (("I", I), ("J", J)):
        if not is_weakly_prime(c):
            return ValidationReport(False, message=f"{name} is not weakly prime")
    case = 2 if zj else 3 if zi else 4
    return ValidationReport(True, case, _CASE_TEXT[case])


def check_triple(tr):
    rep = validate_triple(tr)
    if not rep.ok:
        raise DomainError(f"invalid triple {tr}: {rep.message}")
    return rep


def localizing_ideal(tr):
    """The prime ``I# u J#``: the larger of the two sharps."""
    check_triple(tr)
    a, b = sharp(tr.I), sharp(tr.J)
    return b if cut_leq(a, b) else a


# ---------------------------------------------------------------------------
# shifts


@dataclass(frozen=True)
class ShiftStep:
    """Shift triple number ``which`` (1 or 2) by multiplicity ``rho``."""

    which: int
    direction: str
    rho: object

    def __str__(self):
        rho = _eps_text(self.rho) if isinstance(self.rho, EPSeq) else str(self.rho)
        return f"{self.direction} shift of triple {self.which} by rho = {rho}"


@dataclass(frozen=True)
class ShiftVerdict:
    equivalent: bool
    witness: tuple = ()
    reason: str = ""

    def __bool__(self):
        return self.equivalent


def _outside(cut, rho):
    return not cut_contains(cut, rho)


def _deg(rho):
    return rho.degree() if isinstance(rho, EPSeq) else 0


def apply_shift(tr, direction, rho):
    """Direct or inverse shift of a triple by an element of multiplicity ``rho``.

    The direct shift by ``a`` (``a`` outside ``I``) passes from an element
    ``m`` to ``m*a``: ``I' = (I:a)`` and ``J'`` adds ``rho`` to the
    non-divisibility threshold.  The inverse shift undoes a direct one.
    Raises :class:`DomainError` when the shift is not allowed or its result
    leaves the cut catalog.
    """
    check_triple(tr)
    if isinstance(tr.U, EmptyU):
        return tr
    if tr.tier == "fixed":
        rho = int(rho)
        if rho < 0:
            raise DomainError("shift multiplicity must be natural")
    else:
        rho = _strip(rho) if not isinstance(rho, EPSeq) else EPSeq(rho.classes)
    I, J = tr.I, tr.J
    if direction == "direct":
        if not _outside(I, rho):
            raise DomainError(f"direct shift needs rho outside I = {I}")
        I2 = _lower(I, rho)
        J2 = _raise(J, rho)
    elif direction == "inverse":
        if not _outside(J, rho):
            raise DomainError(f"inverse shift needs rho outside J = {J}")
        I2 = _raise(I, rho)
        J2 = _lower(J, rho)
    else:
        raise DomainError(f"unknown shift direction {direction!r}")
    return AdmissibleTriple(tr.U, I2, J2)


def _lower(cut, rho):
    """``{x : x + rho in cut}`` for ``rho`` outside the cut."""
    if isinstance(cut, ZeroIdeal):
        return cut
    if isinstance(cut, FixedThreshold):
        return FixedThreshold(cut.k - rho)
    if isinstance(cut, PrincipalAbove):
        return PrincipalAbove(cut.gamma - rho)
    return cut


def _raise(cut, rho):
    """``{x : max(x - rho, 0) in cut}``."""
    if isinstance(cut, ZeroIdeal):
        return cut
    if isinstance(cut, FixedThreshold):
        return FixedThreshold(cut.k + rho)
    if isinstance(cut, PrincipalAbove):
        return PrincipalAbove(cut.gamma + rho)
    if _deg(rho) < cut.d:
        return cut
    raise DomainError(f"shifting {cut} by a sequence of degree {_deg(rho)} leaves the cut catalog")


def _diff_degree(x, y):
    """Degree of ``x - y`` taken across all residue classes."""
    P = lcm(x.period, y.period)
    return max((x.classes[r % x.period] - y.classes[r % y.period]).degree for r in range(P))


def _align(key1, key2, which_side, other_zero_ok=True):
    """Shift steps moving two generators onto each other.

    ``which_side`` is "I" or "J": the side whose generators are ``key1`` and
    ``key2``.  Shifting on the I side lowers it by a direct shift; shifting on
    the J side lowers it by an inverse shift.
    """
    lower = "direct" if which_side == "I" else "inverse"
    raise_ = "inverse" if which_side == "I" else "direct"
    if isinstance(key1, int):
        if key1 >= key2:
            return (ShiftStep(1, lower, key1 - key2),)
        return (ShiftStep(1, raise_, key2 - key1),)
    try:
        order = eps_cmp(key1, key2)
    except UltrafilterDependent:
        order = None
    if order is Order.EQUAL:
        return (ShiftStep(1, lower, EPSeq.const(0)),)
    if order is Order.GREATER:
        return (ShiftStep(1, lower, key1 - key2),)
    if order is Order.LESS:
        return (ShiftStep(1, raise_, key2 - key1),)
    # mixed residue classes: lower both onto the pointwise minimum
    m = EPSeq(key1.minimum(key2).classes)
    return (ShiftStep(1, lower, key1 - m), ShiftStep(2, lower, key2 - m))


def _run_witness(tr1, tr2, steps):
    a, b = tr1, tr2
    for s in steps:
        if s.which == 1:
            a = apply_shift(a, s.direction, s.rho)
        else:
            b = apply_shift(b, s.direction, s.rho)
    return a == b


def _key(cut):
    if isinstance(cut, FixedThreshold):
        return cut.k
    if isinstance(cut, PrincipalAbove):
        return cut.gamma
    return None


def shift_equivalent(tr1, tr2):
    """Decide whether two triples are identified by direct or inverse shifts.

    The verdict carries a witness: a list of shift steps whose replay maps
    both triples to one common triple.
    """
    check_triple(tr1)
    check_triple(tr2)
    if tr1 == tr2:
        return ShiftVerdict(True, (), "identical triples")
    if tr1.U != tr2.U:
        return ShiftVerdict(False, (), "different ultrafilters")
    if isinstance(tr1.U, EmptyU):
        return ShiftVerdict(True, (), "the zero pair has a single class")
    I1, J1, I2, J2 = tr1.I, tr1.J, tr2.I, tr2.J
    zero = (isinstance(I1, ZeroIdeal), isinstance(J1, ZeroIdeal))
    if zero != (isinstance(I2, ZeroIdeal), isinstance(J2, ZeroIdeal)):
        return ShiftVerdict(False, (), "shifts keep zero cuts zero and nonzero cuts nonzero")
    steps, reason = None, ""
    if tr1.tier == "fixed":
        if zero == (False, False):
            if I1.k + J1.k == I2.k + J2.k:
                steps, reason = _align(I1.k, I2.k, "I"), "k + l agrees"
            else:
                reason = "k + l differs"
        elif zero[0]:
            steps, reason = _align(J1.k, J2.k, "J"), "(0, l) pairs form one class"
        else:
            steps, reason = _align(I1.k, I2.k, "I"), "(k, 0) pairs form one class"
    else:
        steps, reason = _free_equivalence(I1, J1, I2, J2)
    if steps is None:
        return ShiftVerdict(False, (), reason)
    if not _run_witness(tr1, tr2, steps):
        raise AssertionError(f"internal error: witness {steps} does not identify {tr1} and {tr2}")
    return ShiftVerdict(True, tuple(steps), reason)


def _free_equivalence(I1, J1, I2, J2):
    p = (isinstance(I1, PrincipalAbove), isinstance(J1, PrincipalAbove))
    q = (isinstance(I2, PrincipalAbove), isinstance(J2, PrincipalAbove))
    if p == (True, True) and q == (True, True):
        s1, s2 = I1.gamma + J1.gamma, I2.gamma + J2.gamma
        if eps_cmp(s1, s2) is Order.EQUAL:
            return _align(I1.gamma, I2.gamma, "I"), "gamma + delta agrees cofinitely"
        return None, "gamma + delta differs"
    if isinstance(J1, ZeroIdeal) and isinstance(J2, ZeroIdeal) and p[0] and q[0]:
        return _align(I1.gamma, I2.gamma, "I"), "(above(g), 0) pairs form one class"
    if isinstance(I1, ZeroIdeal) and isinstance(I2, ZeroIdeal) and p[1] and q[1]:
        return _align(J1.gamma, J2.gamma, "J"), "(0, above(g)) pairs form one class"
    if p[0] and q[0] and isinstance(J1, DegreeAtLeast) and J1 == J2:
        if _diff_degree(I1.gamma, I2.gamma) < J1.d:
            return _align(I1.gamma, I2.gamma, "I"), f"generators differ by degree < {J1.d}"
        return None, f"generators differ by degree >= {J1.d}"
    if p[1] and q[1] and isinstance(I1, DegreeAtLeast) and I1 == I2:
        if _diff_degree(J1.gamma, J2.gamma) < I1.d:
            return _align(J1.gamma, J2.gamma, "J"), f"generators differ by degree < {I1.d}"
        return None, f"generators differ by degree >= {I1.d}"
    return None, "no shift preserving the catalog identifies these cuts"


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class PointClass:
    """The point of the spectrum named by a triple, with topological flags.

    ``closed`` refers to the whole spectrum, ``closed_in_derivative`` to the
    subspace left after removing isolated points (``None`` for points that
    are not in that subspace).  ``also`` lists other names of the same point.
    """

    kind: str
    params: tuple
    representative: AdmissibleTriple
    isolated: bool
    closed: bool
    survives_cb: bool
    closed_in_derivative: object
    also: tuple = field(default=())

    def __str__(self):
        inner = ", ".join(str(p) for p in self.params)
        return f"{self.kind}({inner})" if self.params else self.kind

    def flags(self):
        return {
            "class": str(self),
            "isolated": self.isolated,
            "closed": self.closed,
            "survives_cb": self.survives_cb,
            "closed_in_derivative": self.closed_in_derivative,
            "also": list(self.also),
            "representative": str(self.representative),
        }


def _high_part_plus_one(gamma, d):
    """``1 + floor`` of the part of ``gamma`` of degree ``>= d``.

    It differs from ``gamma`` by a sequence of degree ``< d``, so it is the
    canonical generator of the class of ``(above(gamma), deg(d))``.
    """
    P = gamma.period
    highs = [Poly(tuple(c if i >= d else 0 for i, c in enumerate(p.coeffs))) for p in gamma.classes]
    den = 1
    for h in highs:
        for c in h.coeffs:
            den = den * c.re.denominator // gcd(den, c.re.denominator)
    period = P * den
    classes = []
    for R in range(period):
        h = highs[R % P]
        v = h(R).re
        classes.append(h - Poly.const(v - floor(v)) + Poly.const(1))
    return EPSeq(tuple(classes))


def classify(tr):
    check_triple(tr)
    I, J = tr.I, tr.J
    if isinstance(tr.U, EmptyU):
        return PointClass("QPoint", (), tr, False, True, True, True, ("Generic(0)",))
    if tr.tier == "fixed":
        t = tr.U.t
        if isinstance(I, FixedThreshold) and isinstance(J, FixedThreshold):
            n = I.k + J.k - 1
            rep = AdmissibleTriple(tr.U, FixedThreshold(n), FixedThreshold(1))
            also = ("Generic(1)",) if n == 1 else ()
            return PointClass("IsolatedFiniteLength", (t, n), rep, True, True, False, None, also)
        rep = AdmissibleTriple(
            tr.U,
            ZERO_CUT if isinstance(I, ZeroIdeal) else FixedThreshold(1),
            ZERO_CUT if isinstance(J, ZeroIdeal) else FixedThreshold(1),
        )
        return PointClass("FixedOther", (t,), rep, False, False, False, None)
    # free tier
    one = EPSeq.const(1)
    if isinstance(I, PrincipalAbove) and isinstance(J, PrincipalAbove):
        s = I.gamma + J.gamma
        if s.is_bounded():
            try:
                c = s.constant_value()
            except UltrafilterDependent:
                c = None
            if c is not None:
                k = c - 1
                rep = AdmissibleTriple(FREE, PrincipalAbove(EPSeq.const(k)), PrincipalAbove(one))
                also = ("Generic(above(1))",) if k == 1 else ()
                return PointClass("FreeFiniteEndolength", (k,), rep, False, True, True, k == 1, also)
        rep = AdmissibleTriple(FREE, PrincipalAbove(one), PrincipalAbove(s - 1))
        return _free_other(rep)
    if isinstance(I, DegreeAtLeast) and I == J:
        return PointClass("Generic", (I,), tr, False, True, True, True)
    if isinstance(I, PrincipalAbove) and isinstance(J, ZeroIdeal):
        return _free_other(AdmissibleTriple(FREE, PrincipalAbove(one), J))
    if isinstance(I, ZeroIdeal) and isinstance(J, PrincipalAbove):
        return _free_other(AdmissibleTriple(FREE, I, PrincipalAbove(one)))
    if isinstance(I, PrincipalAbove) and isinstance(J, DegreeAtLeast):
        return _free_other(AdmissibleTriple(FREE, PrincipalAbove(_high_part_plus_one(I.gamma, J.d)), J))
    if isinstance(I, DegreeAtLeast) and isinstance(J, PrincipalAbove):
        return _free_other(AdmissibleTriple(FREE, I, PrincipalAbove(_high_part_plus_one(J.gamma, I.d))))
    return _free_other(tr)


def _free_other(rep):
    return PointClass("FreeOther", (rep,), rep, False, False, True, False)


def pp_type_of_element(N, j):
    """The triple of the element ``(z-t)^j`` of ``E_t(n)``, read off by evaluation.

    ``I`` is the least power of ``z - t`` annihilating the element and ``J``
    the least power not dividing it.
    """
    if not isinstance(N, FiniteLength):
        raise DomainError("pp_type_of_element needs a finite length point E(t,n)")
    n, t = N.k, N.t
    if not 0 <= j < n:
        raise DomainError(f"(z-t)^{j} is zero in E({t},{n})" if j >= n else "j must be natural")
    s = Poly((-t, 1))
    ann = next(m for m in range(n + 1) if evaluate(Ann(s ** m), N).value <= j)
    nondiv = next(m for m in range(n + 2) if evaluate(Divides(s ** m), N).value > j)
    return AdmissibleTriple(Fixed(t), FixedThreshold(ann), FixedThreshold(nondiv))
