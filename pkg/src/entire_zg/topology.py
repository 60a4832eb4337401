"""Queries about the Ziegler topology of ``E``.

A basic open set is given by a pair ``(a, b, c, d)`` and consists of the
points ``N`` with ``phi(N)`` not contained in ``psi(N)`` where
``phi = a|x & x*b=0`` and ``psi = c|x + x*d=0``.  Scalars are either
polynomials (exact tier) or tail divisors (symbolic tier).

Everything in this module comes back to one local fact.  At a point where
the four scalars have multiplicities ``A, B, C, D`` (infinity for zero), the
pair opens some ``E_t(K)`` iff ``A < C`` and ``D < B``, and the smallest such
``K`` is ``A + D + 1`` with the element ``(z-t)^A`` as witness.
"""

from dataclasses import dataclass, field
from math import lcm

from .classify import (
    DegreeAtLeast,
    EmptyU,
    Fixed,
    PrincipalAbove,
    _high_part_plus_one,
    check_triple,
    cut_contains,
)
from .divisors import (
    EPSeq,
    FiniteDivisor,
    NotSplittable,
    Order,
    SplitScalar,
    TailDivisor,
    _root_bound,
    dense_between,
    eps_cmp,
    fin_equiv,
    from_poly,
    split_coprime,
)
from .errors import DomainError, UltrafilterDependent
from .pp import Ann, Divides, FiniteLength, default_family, evaluate, lattice_leq
from .scalars import GaussRational, Poly, multiplicity_at, poly_gcd, squarefree_factors

__all__ = [
    "BasicOpenPair",
    "WitnessReport",
    "EmptyVerdict",
    "ContainsResult",
    "CBResult",
    "SuperdecompositionReport",
    "DenseChainReport",
    "contains_point",
    "contains_triple",
    "isolation_pair",
    "inhabit",
    "cb_derivative_pair",
    "is_superdecomposable_candidate",
    "dense_chain_check",
    "local_opens",
]


def _scalar(x):
    if isinstance(x, (Poly, TailDivisor)):
        return x, ()
    if isinstance(x, SplitScalar):
        return x.to_poly(), x.divisor.points()
    if isinstance(x, FiniteDivisor):
        return x.to_poly(), x.points()
    if isinstance(x, EPSeq):
        return TailDivisor(x), ()
    return Poly.const(x), ()


@dataclass(frozen=True, slots=True, init=False)
class BasicOpenPair:
    """``(a|x & x*b=0) / (c|x + x*d=0)``.

    Finite divisors and split scalars are accepted in the exact tier; their
    roots are remembered in ``roots`` so that :func:`inhabit` can search them.
    """

    a: object
    b: object
    c: object
    d: object
    roots: tuple

    def __init__(self, a, b, c, d, roots=()):
        vals, found = [], list(roots)
        for x in (a, b, c, d):
            v, r = _scalar(x)
            vals.append(v)
            found.extend(r)
        tiers = {isinstance(v, TailDivisor) for v in vals}
        if len(tiers) > 1:
            raise DomainError("all four scalars of a pair must be in the same tier")
        for name, v in zip("abcd", vals):
            object.__setattr__(self, name, v)
        uniq = []
        for t in found:
            t = GaussRational(t)
            if t not in uniq:
                uniq.append(t)
        object.__setattr__(self, "roots", tuple(sorted(uniq, key=GaussRational.sort_key)))

    @property
    def is_tail(self):
        return isinstance(self.a, TailDivisor)

    @property
    def scalars(self):
        return (self.a, self.b, self.c, self.d)

    def phi(self):
        self._need_exact()
        return Divides(self.a) & Ann(self.b)

    def psi(self):
        self._need_exact()
        return Divides(self.c) + Ann(self.d)

    def _need_exact(self):
        if self.is_tail:
            raise DomainError("formulas of a tail-tier pair are not evaluable in exact points")

    def __str__(self):
        return f"pair({self.a}; {self.b}; {self.c}; {self.d})"

    def __repr__(self):
        return f"BasicOpenPair({self})"


def local_opens(A, B, C, D):
    """Least ``K`` such that the local multiplicities open ``E_t(K)``, else None.

    ``None`` multiplicities stand for the zero scalar.
    """
    inf = float("inf")
    A, B, C, D = (inf if m is None else m for m in (A, B, C, D))
    if A < C and D < B:
        return int(A + D + 1)
    return None


# ---------------------------------------------------------------------------
# membership


def contains_point(pair, N):
    """Is ``N`` in the open set of ``pair``?"""
    phi, psi = pair.phi(), pair.psi()
    return not evaluate(phi, N) <= evaluate(psi, N)


@dataclass(frozen=True)
class ContainsResult:
    holds: bool
    direction: str = ""
    rho: object = None
    transcript: tuple = ()

    def __bool__(self):
        return self.holds


def _mult_fixed(x, t):
    if isinstance(x, TailDivisor):
        raise DomainError("tier mismatch: tail-tier scalars against a fixed triple")
    return None if x.is_zero() else multiplicity_at(x, t)


def _mult_free(x):
    if isinstance(x, TailDivisor):
        return x.multiplicity
    return None if x.is_zero() else EPSeq.const(0)


def _ge(x, y):
    if isinstance(x, int):
        return x >= y
    return eps_cmp(x, y) is not Order.LESS


def _plus(x, y):
    return None if x is None else x + y


def _monus(x, y):
    if x is None:
        return None
    return max(x - y, 0) if isinstance(x, int) else x.monus(y)


def _shifted(tr, direction, rho):
    """Membership predicates of ``I'`` and ``J'`` after a shift by ``rho``."""
    I, J = tr.I, tr.J
    if direction == "direct":
        return (lambda x: cut_contains(I, _plus(x, rho)),
                lambda x: cut_contains(J, _monus(x, rho)))
    return (lambda x: x is None or (_ge(x, rho) and cut_contains(I, _monus(x, rho))),
            lambda x: cut_contains(J, _plus(x, rho)))


def _allowed(tr, direction, rho):
    cut = tr.I if direction == "direct" else tr.J
    return not cut_contains(cut, rho)


def _four_conditions(tr, mults, direction, rho):
    A, B, C, D = mults
    inI, inJ = _shifted(tr, direction, rho)
    return inI(B) and not inJ(A) and inJ(C) and not inI(D)


def _free_candidates(tr, mults):
    """Shift sizes worth testing in the free tier.

    The four conditions cut out an interval of the multiplicity chain; its
    lower end is built from differences of generators and multiplicities, or
    from the high-degree part of a multiplicity when a degree cut is
    involved.  Pairwise maxima of these pieces cover the combinations.
    """
    seqs = [m for m in mults if m is not None]
    gens = [c.gamma for c in (tr.I, tr.J) if isinstance(c, PrincipalAbove)]
    degs = sorted({c.d for c in (tr.I, tr.J) if isinstance(c, DegreeAtLeast)})
    one = EPSeq.const(1)
    pieces = [EPSeq.const(0), one]
    for x in seqs:
        pieces += [x, x + one, x.monus(one)]
        for g in gens:
            pieces += [g.monus(x), (x + one).monus(g), g.monus(x + one)]
        for e in degs:
            hp = _high_part_plus_one(x, e).monus(one)
            pieces += [hp, hp + one]
    for g in gens:
        pieces += [g.monus(one)]
    uniq = []
    for p in pieces:
        p = EPSeq(p.classes)
        if p not in uniq:
            uniq.append(p)
    out = list(uniq)
    for i, p in enumerate(uniq):
        for q in uniq[i + 1:]:
            try:
                m = EPSeq(p.maximum(q).classes)
            except UltrafilterDependent:
                continue
            if m not in out:
                out.append(m)
    return out


def contains_triple(pair, tr):
    """Is the point of the triple ``tr`` in the open set of ``pair``?

    By uniseriality the point lies in the open set iff some element has a
    pp-type (a shift ``(I', J')`` of ``(I, J)``) with ``b in I'``,
    ``a not in J'``, ``c in J'`` and ``d not in I'``.
    """
    check_triple(tr)
    log = []
    if isinstance(tr.U, EmptyU):
        if pair.is_tail:
            return ContainsResult(False, transcript=("tail scalars are nonzero: b is not in I = 0",))
        mults = [None if x.is_zero() else 0 for x in pair.scalars]
        ok = _four_conditions(tr, mults, "direct", 0)
        return ContainsResult(ok, "direct" if ok else "", 0 if ok else None,
                              (f"zero cuts: conditions {'hold' if ok else 'fail'}",))
    if isinstance(tr.U, Fixed):
        t = tr.U.t
        mults = [_mult_fixed(x, t) for x in pair.scalars]
        log.append(f"multiplicities at {t}: " + ", ".join("inf" if m is None else str(m) for m in mults))
        bound = 1 + sum(m for m in mults if m is not None)
        bound += sum(c.k for c in (tr.I, tr.J) if hasattr(c, "k"))
        candidates = range(bound + 1)
    else:
        mults = [_mult_free(x) for x in pair.scalars]
        log.append("multiplicities on the support: " + ", ".join("inf" if m is None else str(m) for m in mults))
        candidates = _free_candidates(tr, mults)
    for direction in ("direct", "inverse"):
        for rho in candidates:
            try:
                if not _allowed(tr, direction, rho):
                    continue
                if _four_conditions(tr, mults, direction, rho):
                    log.append(f"{direction} shift by rho = {rho} satisfies b in I', a not in J', c in J', d not in I'")
                    return ContainsResult(True, direction, rho, tuple(log))
            except UltrafilterDependent:
                continue
    log.append(f"no admissible shift among {len(candidates)} candidates in either direction")
    return ContainsResult(False, transcript=tuple(log))


# ---------------------------------------------------------------------------
# isolation and density


def isolation_pair(t, n):
    """The pair isolating ``E_t(n)``: ``(1, (z-t)^n, z-t, (z-t)^(n-1))``."""
    n = int(n)
    if n < 1:
        raise DomainError("isolation_pair needs n >= 1")
    t = GaussRational(t)
    s = Poly((-t, 1))
    return BasicOpenPair(Poly.const(1), s ** n, s, s ** (n - 1), roots=(t,))


@dataclass(frozen=True)
class WitnessReport:
    """A finite-length point and an element of it lying in ``phi`` but not ``psi``.

    The element is ``(z-t)^j`` in ``E_t(k)``.  For tail-tier pairs ``index`` is
    the support index whose materialized point is ``t``.
    """

    point: FiniteLength
    j: int
    transcript: tuple
    index: int = None

    def replay(self, pair):
        """Re-check the witness; returns True when it is valid."""
        if pair.is_tail:
            pair = _localize_tail(pair, self.index)
        phi, psi = pair.phi(), pair.psi()
        e_phi = evaluate(phi, self.point).value
        e_psi = evaluate(psi, self.point).value
        return e_phi <= self.j < e_psi


@dataclass(frozen=True)
class EmptyVerdict:
    """No point opens the pair; ``certificate`` explains why."""

    certificate: tuple

    def __bool__(self):
        return False


def _fresh_point(scalars, taken):
    k = 0
    while True:
        t = GaussRational(k)
        if t not in taken and all(s.is_zero() or multiplicity_at(s, t) == 0 for s in scalars):
            return t
        k += 1


def _check_split(pair, roots):
    for name, s in zip("abcd", pair.scalars):
        if s.is_zero() or s.degree <= 0:
            continue
        try:
            from_poly(s, roots)
        except DomainError as exc:
            raise DomainError(
                f"scalar {name} = {s} is not split over the supplied roots ({exc}); "
                "give the scalars in split form or pass their roots"
            ) from None


def _harvest_roots(scalars, roots):
    """Add the roots visible exactly from the scalars.

    After dividing out the known roots, each scalar is split by Yun's
    square-free decomposition and the parts are refined against each other
    by gcds; every linear piece contributes its root.  No numerical root
    finding is attempted, so irreducible quadratics and the like still need
    explicit roots.
    """
    roots = list(roots)
    while True:
        parts = []
        for s in scalars:
            if s.is_zero() or s.degree <= 0:
                continue
            rest = s
            for t in roots:
                rest = rest // Poly((-t, 1)) ** multiplicity_at(rest, t)
            if rest.degree > 0:
                parts.extend(squarefree_factors(rest))
        pieces = list(parts)
        for i, a in enumerate(parts):
            for b in parts[i + 1:]:
                g = poly_gcd(a, b)
                if g.degree > 0:
                    pieces += [g, a // g, b // g]
        found = {-p.coeff(0) / p.coeff(1) for p in pieces if p.degree == 1}
        found -= set(roots)
        if not found:
            return roots
        roots.extend(sorted(found, key=GaussRational.sort_key))


def inhabit(pair, roots=None, max_k=None):
    """A verified finite-length witness for the pair, or :class:`EmptyVerdict`.

    The search runs over the known roots of the scalars (from split forms,
    from ``roots`` and from linear cofactors) plus one point that is a root
    of none of them.
    """
    if pair.is_tail:
        return _inhabit_tail(pair, max_k)
    roots = list(pair.roots) + [GaussRational(r) for r in (roots or ())]
    roots = _harvest_roots(pair.scalars, roots)
    _check_split(pair, roots)
    fresh = _fresh_point(pair.scalars, roots)
    pts = []
    for t in roots + [fresh]:
        if t not in pts:
            pts.append(t)
    phi, psi = pair.phi(), pair.psi()
    log = []
    for t in pts:
        mults = [None if s.is_zero() else multiplicity_at(s, t) for s in pair.scalars]
        top = 1 + sum(m for m in mults if m is not None)
        if max_k is not None:
            top = min(top, max_k)
        for k in range(1, top + 1):
            N = FiniteLength(t, k)
            e_phi, e_psi = evaluate(phi, N).value, evaluate(psi, N).value
            if e_phi < e_psi:
                j = e_phi
                log.append(f"E({t},{k}): phi exponent {e_phi}, psi exponent {e_psi}; element (z-t)^{j}")
                return WitnessReport(N, j, tuple(log))
        log.append(f"t = {t}: no k <= {top} separates phi from psi")
    family = default_family() + [FiniteLength(t, k) for t in pts for k in range(1, 8)]
    if not lattice_leq(phi, psi, family):
        raise DomainError("search bound too small: a separating point exists outside the search")
    log.append(f"phi <= psi on all {len(family)} points of the evaluation family")
    return EmptyVerdict(tuple(log))


def _localize_tail(pair, index):
    """Exact pair at the materialized point of ``index``."""
    t = pair.a.materialize(index)
    s = Poly((-t, 1))
    return BasicOpenPair(*(s ** x.at(index) for x in pair.scalars), roots=(t,))


def _window(seqs):
    """Indices past which every comparison between the sequences is periodic."""
    P = 1
    for s in seqs:
        P = lcm(P, s.period)
    W = max(s.threshold for s in seqs)
    for x in seqs:
        for y in seqs:
            for r in range(P):
                W = max(W, _root_bound(x.tail_at(r) - y.tail_at(r)))
    return W + 2 * P


def _inhabit_tail(pair, max_k):
    mus = [x.multiplicity for x in pair.scalars]
    W = _window(mus)
    log = [f"scanning support indices 0..{W - 1}; beyond that the pattern repeats"]
    for n in range(W):
        A, B, C, D = (m(n) for m in mus)
        K = local_opens(A, B, C, D)
        if K is None or (max_k is not None and K > max_k):
            continue
        t = pair.a.materialize(n)
        local = _localize_tail(pair, n)
        N = FiniteLength(t, K)
        e_phi = evaluate(local.phi(), N).value
        e_psi = evaluate(local.psi(), N).value
        log.append(
            f"index {n} -> point {t}: multiplicities {A}, {B}, {C}, {D}; "
            f"E({t},{K}) has phi exponent {e_phi} < psi exponent {e_psi}"
        )
        return WitnessReport(N, e_phi, tuple(log), index=n)
    log.append("no index has mu_a < mu_c and mu_d < mu_b")
    return EmptyVerdict(tuple(log))


# ---------------------------------------------------------------------------
# Cantor-Bendixson derivative


@dataclass(frozen=True)
class CBResult:
    """The pair over ``E_S`` (nonzero polynomials inverted).

    ``opens`` says whether the localized open set is nonempty; it never
    contains a fixed finite-length point since those are removed by the
    derivative.
    """

    pair: BasicOpenPair
    opens: bool
    note: str

    def __bool__(self):
        return self.opens


def cb_derivative_pair(pair):
    if pair.is_tail:
        return CBResult(pair, _tail_pair_opens_free(pair), "tail divisors are not polynomials: pair unchanged")
    unit = Poly.const(1)
    loc = BasicOpenPair(*(s if s.is_zero() else unit for s in pair.scalars))
    opens = (not pair.a.is_zero()) and pair.b.is_zero() and pair.c.is_zero() and not pair.d.is_zero()
    note = ("nonzero polynomials become units; the open set is "
            + ("the generic part seen by Q" if opens else "empty over E_S"))
    return CBResult(loc, opens, note)


def _tail_pair_opens_free(pair):
    """Whether some free-tier index pattern opens the pair, i.e. eventually."""
    mus = [x.multiplicity for x in pair.scalars]
    W = _window(mus)
    P = 1
    for m in mus:
        P = lcm(P, m.period)
    return any(local_opens(*(m(n) for m in mus)) is not None for n in range(W - P, W))


# ---------------------------------------------------------------------------
# superdecomposability and the dense chain


@dataclass(frozen=True)
class SuperdecompositionReport:
    candidate: bool
    split: object = None
    obstruction: str = ""

    def __bool__(self):
        return self.candidate


def is_superdecomposable_candidate(s):
    """Can every nonunit divisor of ``s`` be split into coprime nonunits?

    Tail divisors with infinite support always split (the parts are again
    infinite, so the splitting continues).  A finite divisor always has a
    one-point nonunit divisor, which cannot split.
    """
    if isinstance(s, EPSeq):
        s = TailDivisor(s)
    if isinstance(s, TailDivisor) and s.has_infinite_support():
        parts = split_coprime(s)
        return SuperdecompositionReport(True, parts, "")
    if isinstance(s, TailDivisor):
        pts = s.support_indices(s.multiplicity.threshold + 1)
        if not pts:
            return SuperdecompositionReport(False, None, "unit: no nonunit divisor")
        return SuperdecompositionReport(False, split_coprime(s),
                                        f"the one-point divisor at index {pts[0]} cannot split")
    if not isinstance(s, FiniteDivisor):
        raise DomainError(f"expected a divisor, got {type(s).__name__}")
    if s.is_unit():
        return SuperdecompositionReport(False, None, "unit: no nonunit divisor")
    parts = split_coprime(s)
    t = s.points()[0]
    one = FiniteDivisor({t: 1})
    assert split_coprime(one) is NotSplittable()
    return SuperdecompositionReport(
        False, None if not parts else parts, f"the one-point divisor {one} cannot split"
    )


@dataclass(frozen=True)
class DenseChainReport:
    """``mu < xi < nu`` with unbounded gaps, and two incomparable formulas."""

    witness: EPSeq
    lower_gap: EPSeq
    upper_gap: EPSeq
    incomparable: tuple = field(default=())


def dense_chain_check(mu, nu):
    xi = dense_between(mu, nu)
    lower, upper = xi.monus(mu), nu.monus(xi)
    assert eps_cmp(mu, xi) is Order.LESS and eps_cmp(xi, nu) is Order.LESS
    assert not fin_equiv(mu, xi) and not fin_equiv(xi, nu)
    # xi sits strictly inside both chain copies of the derivative lattice, and
    # the divisibility and annihilator formulas it defines are incomparable
    f = TailDivisor(xi)
    return DenseChainReport(xi, lower, upper, (f"div({f})", f"ann({f})"))
