"""Positive-primitive formulas in one free variable ``x``.

Formulas are built from divisibility ``a | x``, annihilation ``x*b = 0``,
conjunction ``&``, sum ``+`` and the general matrix shape
``E y : y*A = x*b``.  They are evaluated in two kinds of points:

* ``E_t(k) = E/(z-t)^k`` whose definable subgroups form the chain
  ``(z-t)^e * E_t(k)`` for ``e = 0..k``, recorded by the exponent ``e``;
* the field ``Q`` of meromorphic functions, where a definable subgroup is
  either everything or zero.

Matrix formulas are reduced to finite sums of ``a|x & x*b=0`` and finite
conjunctions of ``c|x + x*d=0`` through the Smith normal form over
``Q(i)[z]``.  Evaluation of a matrix formula never goes through that
reduction: on ``E_t(k)`` it eliminates over the truncated power series ring
in ``z - t``, and on ``Q`` it compares ranks.  The two routes can therefore
check each other.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product

from .errors import DomainError
from .scalars import GaussRational, Poly, multiplicity_at, poly_gcd, poly_lcm, saturation_part
from .snf import determinant, smith_normal_form

__all__ = [
    "PpFormula",
    "Divides",
    "Ann",
    "Conj",
    "Sum",
    "MatrixForm",
    "FiniteLength",
    "QField",
    "Q",
    "E",
    "QSubgroup",
    "SubgroupDesc",
    "SumNormalForm",
    "ConjNormalForm",
    "evaluate",
    "to_sum_normal",
    "to_conj_normal",
    "lattice_leq",
    "default_family",
    "parse_formula",
    "TRUE",
    "FALSE",
]

ONE = Poly.const(1)
ZERO = Poly()


def _poly(p):
    if isinstance(p, Poly):
        return p
    return Poly.const(p)


def _pdivides(f, g):
    """``f | g`` in ``Q(i)[z]``."""
    if f.is_zero():
        return g.is_zero()
    return (g % f).is_zero()


def _canon(p):
    return p if p.is_zero() else p.monic()


# ---------------------------------------------------------------------------
# formulas


class PpFormula:
    """Common base: ``&`` builds conjunctions and ``+`` builds sums."""

    __slots__ = ()

    def __and__(self, other):
        return Conj(self, other)

    def __add__(self, other):
        return Sum(self, other)

    def __repr__(self):
        return f"{type(self).__name__}({self})"


@dataclass(frozen=True, slots=True, repr=False)
class Divides(PpFormula):
    """``a | x``; ``Divides(0)`` is the formula ``x = 0``."""

    a: Poly

    def __post_init__(self):
        object.__setattr__(self, "a", _poly(self.a))

    def __str__(self):
        return f"div({self.a})"


@dataclass(frozen=True, slots=True, repr=False)
class Ann(PpFormula):
    """``x*b = 0``; ``Ann(0)`` is the formula ``x = x``."""

    b: Poly

    def __post_init__(self):
        object.__setattr__(self, "b", _poly(self.b))

    def __str__(self):
        return f"ann({self.b})"


@dataclass(frozen=True, slots=True, repr=False)
class Conj(PpFormula):
    left: PpFormula
    right: PpFormula

    def __str__(self):
        lhs = _wrap(self.left, (Sum, MatrixForm))
        rhs = _wrap(self.right, (Sum, Conj, MatrixForm))
        return f"{lhs} & {rhs}"


@dataclass(frozen=True, slots=True, repr=False)
class Sum(PpFormula):
    left: PpFormula
    right: PpFormula

    def __str__(self):
        lhs = _wrap(self.left, (MatrixForm,))
        rhs = _wrap(self.right, (Sum, MatrixForm))
        return f"{lhs} + {rhs}"


def _wrap(phi, kinds):
    return f"({phi})" if isinstance(phi, kinds) else str(phi)


@dataclass(frozen=True, slots=True, repr=False)
class MatrixForm(PpFormula):
    """``E y1..yk : [y1..yk] * A = x * b`` with ``A`` of shape ``k x len(b)``."""

    A: tuple
    b: tuple

    def __post_init__(self):
        b = tuple(_poly(e) for e in self.b)
        A = tuple(tuple(_poly(e) for e in row) for row in self.A)
        for r, row in enumerate(A):
            if len(row) != len(b):
                raise DomainError(
                    f"matrix row {r + 1} has {len(row)} entries but x*[...] has {len(b)}"
                )
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def shape(self):
        return len(self.A), len(self.b)

    def __str__(self):
        ys = " ".join(f"y{i + 1}" for i in range(len(self.A)))
        rows = ",".join("[" + ",".join(str(e) for e in row) + "]" for row in self.A)
        head = f"E {ys} :" if ys else "E :"
        return f"{head} [{ys}]*[{rows}] = x*[{','.join(str(e) for e in self.b)}]"


TRUE = Divides(ONE)
FALSE = Divides(ZERO)


def parse_formula(text):
    """Parse a formula written in the DSL (see :mod:`entire_zg.dsl`)."""
    from .dsl import parse_formula as _parse

    return _parse(text)


# ---------------------------------------------------------------------------
# points and subgroups


@dataclass(frozen=True, slots=True)
class FiniteLength:
    """The uniserial module ``E_t(k) = E/(z-t)^k``."""

    t: GaussRational
    k: int

    def __post_init__(self):
        object.__setattr__(self, "t", GaussRational(self.t))
        if int(self.k) < 1:
            raise DomainError("E_t(k) needs k >= 1")
        object.__setattr__(self, "k", int(self.k))

    def __str__(self):
        return f"E({self.t},{self.k})"


class QField:
    """The field of meromorphic functions (a singleton)."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __str__(self):
        return "Q"

    def __repr__(self):
        return "Q"

    def __reduce__(self):
        return (QField, ())


Q = QField()


def E(t, k):
    return FiniteLength(t, k)


class QSubgroup(Enum):
    FULL = "Full"
    ZERO = "Zero"

    def __str__(self):
        return self.value


@dataclass(frozen=True, slots=True)
class SubgroupDesc:
    """A definable subgroup of a point.

    For ``E_t(k)`` the value is the exponent ``e`` of ``(z-t)^e * E_t(k)``;
    for ``Q`` it is a :class:`QSubgroup`.  ``<=`` is inclusion.
    """

    point: object
    value: object

    def __le__(self, other):
        if self.point != other.point:
            raise DomainError("subgroups of different points are not comparable")
        if isinstance(self.point, QField):
            return self.value is QSubgroup.ZERO or other.value is QSubgroup.FULL
        return self.value >= other.value

    def __lt__(self, other):
        return self <= other and self != other

    def __str__(self):
        if isinstance(self.point, QField):
            return str(self.value)
        return f"exponent {self.value}"


# ---------------------------------------------------------------------------
# evaluation


def _m(p, t):
    """Multiplicity at ``t``, with ``None`` standing for the zero polynomial."""
    return None if p.is_zero() else multiplicity_at(p, t)


def _div_exp(a, t, k):
    m = _m(a, t)
    return k if m is None else min(m, k)


def _ann_exp(b, t, k):
    m = _m(b, t)
    return 0 if m is None else max(k - m, 0)


def evaluate(phi, N):
    """The subgroup ``phi(N)`` as a :class:`SubgroupDesc`."""
    if isinstance(phi, (SumNormalForm, ConjNormalForm)):
        phi = phi.to_formula()
    if isinstance(N, QField):
        full = _eval_q(phi)
        return SubgroupDesc(N, QSubgroup.FULL if full else QSubgroup.ZERO)
    if not isinstance(N, FiniteLength):
        raise DomainError(f"cannot evaluate in {N!r}")
    return SubgroupDesc(N, _eval_local(phi, N.t, N.k))


def _eval_local(phi, t, k):
    if isinstance(phi, Divides):
        return _div_exp(phi.a, t, k)
    if isinstance(phi, Ann):
        return _ann_exp(phi.b, t, k)
    if isinstance(phi, Conj):
        return max(_eval_local(phi.left, t, k), _eval_local(phi.right, t, k))
    if isinstance(phi, Sum):
        return min(_eval_local(phi.left, t, k), _eval_local(phi.right, t, k))
    if isinstance(phi, MatrixForm):
        return _matrix_exponent(phi, t, k)
    raise TypeError(f"not a pp-formula: {phi!r}")


def _eval_q(phi):
    if isinstance(phi, Divides):
        return not phi.a.is_zero()
    if isinstance(phi, Ann):
        return phi.b.is_zero()
    if isinstance(phi, Conj):
        return _eval_q(phi.left) and _eval_q(phi.right)
    if isinstance(phi, Sum):
        return _eval_q(phi.left) or _eval_q(phi.right)
    if isinstance(phi, MatrixForm):
        # x*b lies in the row space of A over the fraction field for some x != 0
        # exactly when appending b does not raise the rank.
        return _rank(list(phi.A)) == _rank(list(phi.A) + [list(phi.b)])
    raise TypeError(f"not a pp-formula: {phi!r}")


def _rank(M):
    if not M or not M[0]:
        return 0
    rows, cols = len(M), len(M[0])
    for r in range(min(rows, cols), 0, -1):
        for ri in combinations(range(rows), r):
            for ci in combinations(range(cols), r):
                if not determinant([[M[i][j] for j in ci] for i in ri]).is_zero():
                    return r
    return 0


# truncated power series in s = z - t, as lists of length k


def _series(p, t, k):
    cs = p.taylor(t) if not p.is_zero() else []
    out = list(cs[:k])
    return out + [GaussRational(0)] * (k - len(out))


def _sval(s):
    for i, c in enumerate(s):
        if not c.is_zero():
            return i
    return len(s)


def _smul(x, y):
    k = len(x)
    out = [GaussRational(0)] * k
    for i, a in enumerate(x):
        if a.is_zero():
            continue
        for j in range(k - i):
            out[i + j] = out[i + j] + a * y[j]
    return out


def _squot(x, pivot, v):
    """Some ``q`` with ``q * pivot = x`` modulo ``s^k``; needs ``val(x) >= v``."""
    k = len(x)
    num = x[v:] + [GaussRational(0)] * v
    unit = pivot[v:] + [GaussRational(0)] * v
    inv = [GaussRational(0)] * k
    inv[0] = unit[0].inverse()
    for n in range(1, k):
        acc = GaussRational(0)
        for j in range(1, n + 1):
            acc = acc + unit[j] * inv[n - j]
        inv[n] = -acc * inv[0]
    return _smul(num, inv)


def _ssub(x, y):
    return [a - b for a, b in zip(x, y)]


def _matrix_exponent(phi, t, k):
    """Exponent of ``{x : x*b in N^rows * A}`` inside ``E_t(k)``.

    Elimination over ``Q(i)[[s]]/s^k`` pivoting on an entry of least
    valuation; column operations act on ``b`` as well.
    """
    rows, cols = phi.shape
    M = [[_series(e, t, k) for e in row] for row in phi.A]
    bb = [_series(e, t, k) for e in phi.b]
    pivots = []
    for p in range(min(rows, cols)):
        best = None
        for i in range(p, rows):
            for j in range(p, cols):
                v = _sval(M[i][j])
                if v < k and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        M[p], M[i] = M[i], M[p]
        for row in M:
            row[p], row[j] = row[j], row[p]
        bb[p], bb[j] = bb[j], bb[p]
        piv = M[p][p]
        for i in range(p + 1, rows):
            if _sval(M[i][p]) < k:
                q = _squot(M[i][p], piv, v)
                M[i] = [_ssub(x, _smul(q, y)) for x, y in zip(M[i], M[p])]
        for j in range(p + 1, cols):
            if _sval(M[p][j]) < k:
                q = _squot(M[p][j], piv, v)
                for row in M:
                    row[j] = _ssub(row[j], _smul(q, row[p]))
                bb[j] = _ssub(bb[j], _smul(q, bb[p]))
        pivots.append(v)
    e = 0
    for j in range(cols):
        cap = pivots[j] if j < len(pivots) else k
        e = max(e, cap - _sval(bb[j]))
    return e


# ---------------------------------------------------------------------------
# normal forms


def _sum_pair(a, b):
    """Canonical ``(a, b)`` for ``a|x & x*b=0``; zero formula is ``(0, 1)``."""
    a, b = _canon(a), _canon(b)
    if a.is_zero() or b.is_unit():
        return ZERO, ONE
    if a.is_unit():
        return ONE, b
    if not b.is_zero():
        a = saturation_part(a, b)
    return a, b


def _conj_pair(c, d):
    """Canonical ``(c, d)`` for ``c|x + x*d=0``; trivial formula is ``(1, 0)``."""
    c, d = _canon(c), _canon(d)
    if c.is_unit() or d.is_zero():
        return ONE, ZERO
    if d.is_unit():
        return c, ONE
    if not c.is_zero():
        d = saturation_part(d, c)
    return c, d


def _pair_key(p):
    return (p[0].degree, str(p[0]), p[1].degree, str(p[1]))


def _tidy_sum(pairs):
    pairs = {_sum_pair(a, b) for a, b in pairs}
    pairs.discard((ZERO, ONE))
    if (ONE, ZERO) in pairs:
        return [(ONE, ZERO)]
    # a|x & xb=0 lies inside a'|x & xb'=0 when a' | a and b | b'
    keep = [
        p for p in pairs
        if not any(q != p and _pdivides(q[0], p[0]) and _pdivides(p[1], q[1]) for q in pairs)
    ]
    return sorted(keep, key=_pair_key) or [(ZERO, ONE)]


def _tidy_conj(pairs):
    pairs = {_conj_pair(c, d) for c, d in pairs}
    pairs.discard((ONE, ZERO))
    if (ZERO, ONE) in pairs:
        return [(ZERO, ONE)]
    # drop a conjunct containing another one
    keep = [
        p for p in pairs
        if not any(q != p and _pdivides(p[0], q[0]) and _pdivides(q[1], p[1]) for q in pairs)
    ]
    return sorted(keep, key=_pair_key) or [(ONE, ZERO)]


@dataclass(frozen=True)
class SumNormalForm:
    """``sum_i (a_i | x & x*b_i = 0)``."""

    pairs: tuple
    trace: tuple = field(default=(), compare=False)

    def to_formula(self):
        terms = [Conj(Divides(a), Ann(b)) for a, b in self.pairs]
        out = terms[0]
        for term in terms[1:]:
            out = Sum(out, term)
        return out

    def as_strings(self):
        return [[str(a), str(b)] for a, b in self.pairs]

    def __str__(self):
        return " + ".join(f"div({a}) & ann({b})" for a, b in self.pairs)


@dataclass(frozen=True)
class ConjNormalForm:
    """``conj_j (c_j | x + x*d_j = 0)``."""

    pairs: tuple
    trace: tuple = field(default=(), compare=False)

    def to_formula(self):
        terms = [Sum(Divides(c), Ann(d)) for c, d in self.pairs]
        out = terms[0]
        for term in terms[1:]:
            out = Conj(out, term)
        return out

    def as_strings(self):
        return [[str(c), str(d)] for c, d in self.pairs]

    def __str__(self):
        return " & ".join(f"(div({c}) + ann({d}))" for c, d in self.pairs)


def _matrix_conj_pairs(phi, log):
    """Decouple ``y*A = x*b`` into one cyclic condition per column."""
    rows, cols = phi.shape
    if cols == 0:
        log("no columns: the formula is x = x")
        return [(ONE, ZERO)]
    if rows == 0:
        log("no bound variables: x*b_j = 0 for every column")
        U, D, V = [], [], [[ONE if i == j else ZERO for j in range(cols)] for i in range(cols)]
    else:
        steps = []
        U, D, V = smith_normal_form([list(r) for r in phi.A], steps)
        for s in steps:
            log(f"snf: {s}")
    b2 = [sum((phi.b[i] * V[i][j] for i in range(cols)), ZERO) for j in range(cols)]
    log("b*V = [" + ", ".join(str(e) for e in b2) + "]")
    pairs = []
    for j in range(cols):
        dj = D[j][j] if j < rows else ZERO
        bj = b2[j]
        if dj.is_zero():
            log(f"column {j + 1}: x*({bj}) = 0")
            pairs.append((ZERO, bj))
        elif bj.is_zero():
            log(f"column {j + 1}: {dj} | 0 always holds")
            pairs.append((ONE, ZERO))
        else:
            g = poly_gcd(dj, bj)
            c = dj // g
            log(f"column {j + 1}: {dj} | x*({bj}) iff {c} | x + x*({bj}) = 0")
            pairs.append((c, bj))
    return pairs


def _conj_pairs(phi, log):
    if isinstance(phi, Divides):
        return [(phi.a, ONE)]
    if isinstance(phi, Ann):
        return [(ZERO, phi.b)]
    if isinstance(phi, Conj):
        return _conj_pairs(phi.left, log) + _conj_pairs(phi.right, log)
    if isinstance(phi, Sum):
        left = _tidy_conj(_conj_pairs(phi.left, log))
        right = _tidy_conj(_conj_pairs(phi.right, log))
        log(f"distribute sum over {len(left)}x{len(right)} conjuncts")
        return [(poly_gcd(c1, c2), poly_lcm(d1, d2)) for (c1, d1), (c2, d2) in product(left, right)]
    if isinstance(phi, MatrixForm):
        return _matrix_conj_pairs(phi, log)
    raise TypeError(f"not a pp-formula: {phi!r}")


def _sum_pairs(phi, log):
    if isinstance(phi, Divides):
        return [(phi.a, ZERO)]
    if isinstance(phi, Ann):
        return [(ONE, phi.b)]
    if isinstance(phi, Sum):
        return _sum_pairs(phi.left, log) + _sum_pairs(phi.right, log)
    if isinstance(phi, Conj):
        left = _tidy_sum(_sum_pairs(phi.left, log))
        right = _tidy_sum(_sum_pairs(phi.right, log))
        log(f"distribute conjunction over {len(left)}x{len(right)} summands")
        return [(poly_lcm(a1, a2), poly_gcd(b1, b2)) for (a1, b1), (a2, b2) in product(left, right)]
    if isinstance(phi, MatrixForm):
        conj = _tidy_conj(_matrix_conj_pairs(phi, log))
        return _conj_to_sum(conj, log)
    raise TypeError(f"not a pp-formula: {phi!r}")


def _conj_to_sum(conj, log):
    """Expand ``&_j (c_j|x + x*d_j=0)`` into a sum over choices of summands."""
    log(f"expand {len(conj)} conjuncts into {2 ** len(conj)} summands")
    out = []
    for mask in product((True, False), repeat=len(conj)):
        a, b = ONE, ZERO
        for take_c, (c, d) in zip(mask, conj):
            if take_c:
                a = poly_lcm(a, c)
            else:
                b = poly_gcd(b, d)
        out.append((a, b))
    return out


def to_sum_normal(phi):
    trace = []
    pairs = _tidy_sum(_sum_pairs(phi, trace.append))
    trace.append("sum form: " + " + ".join(f"({a}, {b})" for a, b in pairs))
    return SumNormalForm(tuple(pairs), tuple(trace))


def to_conj_normal(phi):
    trace = []
    pairs = _tidy_conj(_conj_pairs(phi, trace.append))
    trace.append("conj form: " + " & ".join(f"({c}, {d})" for c, d in pairs))
    return ConjNormalForm(tuple(pairs), tuple(trace))


# ---------------------------------------------------------------------------
# families and the implication check

DEFAULT_POINTS = (
    GaussRational(0),
    GaussRational(1),
    GaussRational(-1),
    GaussRational(0, 1),
    GaussRational(2),
)


def default_family(points=DEFAULT_POINTS, max_k=6, include_q=True):
    fam = [FiniteLength(t, k) for t in points for k in range(1, max_k + 1)]
    if include_q:
        fam.append(Q)
    return fam


def lattice_leq(phi, psi, family=None):
    """``phi(N)`` is contained in ``psi(N)`` for every ``N`` in the family."""
    if family is None:
        family = default_family()
    return all(evaluate(phi, N) <= evaluate(psi, N) for N in family)
