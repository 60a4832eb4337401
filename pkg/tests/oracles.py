"""Brute-force oracles that share no code with the library algorithms.

Points ``E_t(k)`` are modelled as the vector space Q(i)^k of truncated power
series in ``s = z - t``; every pp-formula defines a subspace, found by plain
Gaussian elimination.  ``Q`` is modelled by specializing ``z`` at several
generic values.
"""

from itertools import combinations

from entire_zg.pp import Q, Ann, Conj, Divides, FiniteLength, MatrixForm, Sum
from entire_zg.scalars import GaussRational, Poly, poly_gcd

ZERO, ONE = GaussRational(0), GaussRational(1)


def taylor(p, t, k):
    """First ``k`` coefficients of ``p`` expanded around ``t``, by repeated division."""
    out, q = [], p
    lin = Poly((-t, ONE))
    for _ in range(k):
        if q.is_zero():
            out.append(ZERO)
            continue
        quo, rem = divmod(q, lin)
        out.append(rem.coeff(0) if not rem.is_zero() else ZERO)
        q = quo
    return out


def mul_matrix(p, t, k):
    c = taylor(p, t, k)
    return [[c[r - col] if r >= col else ZERO for col in range(k)] for r in range(k)]


def rref(rows, ncols):
    rows = [list(r) for r in rows]
    pivots, r = [], 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ONE / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return rows[:r], pivots


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def span_basis(vectors, k):
    red, _ = rref(vectors, k)
    return red


def subspace(phi, t, k):
    """Basis of the subgroup ``phi`` defines in ``E_t(k)``, as row vectors."""
    if isinstance(phi, Conj):
        A, B = subspace(phi.left, t, k), subspace(phi.right, t, k)
        # intersection = vectors a*A = b*B ; solve in the coefficients
        rows = [[A[i][c] for i in range(len(A))] + [-B[j][c] for j in range(len(B))] for c in range(k)]
        sols = nullspace(rows, len(A) + len(B)) if A and B else []
        vecs = [[sum((s[i] * A[i][c] for i in range(len(A))), ZERO) for c in range(k)] for s in sols]
        return span_basis(vecs, k)
    if isinstance(phi, Sum):
        return span_basis(subspace(phi.left, t, k) + subspace(phi.right, t, k), k)
    if isinstance(phi, Divides):
        phi = MatrixForm(((phi.a,),), (Poly.const(1),))
    elif isinstance(phi, Ann):
        phi = MatrixForm((), (phi.b,))
    m, n = len(phi.A), len(phi.b)
    nvars = k * (1 + m)
    rows = []
    for j in range(n):
        Mb = mul_matrix(phi.b[j], t, k)
        Ma = [mul_matrix(phi.A[i][j], t, k) for i in range(m)]
        for r in range(k):
            row = [-Mb[r][c] for c in range(k)]
            for i in range(m):
                row += Ma[i][r]
            rows.append(row)
    sols = nullspace(rows, nvars) if rows else [
        [ONE if c == v else ZERO for c in range(nvars)] for v in range(nvars)
    ]
    return span_basis([s[:k] for s in sols], k)


def oracle_exponent(phi, N):
    """Exponent of the subgroup ``phi`` defines in ``N = E_t(k)``."""
    assert isinstance(N, FiniteLength)
    return N.k - len(subspace(phi, N.t, N.k))


GENERIC = [GaussRational(7, 3), GaussRational(-11, 5), GaussRational(13, 2), GaussRational(5, 17)]


def oracle_q_full(phi):
    """Does ``phi`` hold of ``x = 1`` in the fraction field (``True``) or only of ``0``?"""
    if isinstance(phi, Conj):
        return oracle_q_full(phi.left) and oracle_q_full(phi.right)
    if isinstance(phi, Sum):
        return oracle_q_full(phi.left) or oracle_q_full(phi.right)
    if isinstance(phi, Divides):
        return not phi.a.is_zero()
    if isinstance(phi, Ann):
        return phi.b.is_zero()
    m, n = len(phi.A), len(phi.b)

    def generic_rank(M, cols):
        best = 0
        for z0 in GENERIC:
            best = max(best, rank([[p(z0) for p in row] for row in M], cols))
        return best

    if m == 0:
        return all(p.is_zero() for p in phi.b)
    return generic_rank(list(phi.A), n) == generic_rank(list(phi.A) + [list(phi.b)], n)


def shift_oracle_classes(bound, max_m=6):
    """Brute-force shift classes of fixed-tier triples with thresholds <= bound.

    A direct shift by ``a = (z-t)^m`` (``m`` outside ``I``, i.e. ``m < k``)
    replaces the annihilator cut by ``(I : a)`` and the non-divisibility cut
    by ``J a^*``; an inverse shift undoes it.  Computed straight from the
    ideal-theoretic definitions on multiplicities, with ``None`` for the
    zero ideal.
    """

    def colon(k, m):  # (I:a) for I = (z-t)^k, threshold k - m
        return None if k is None else k - m

    def times(l, m):  # {x : x - m in J} for J = (z-t)^l, threshold l + m
        return None if l is None else l + m

    nodes = set()
    for k in [None] + list(range(1, bound + 1)):
        for l in [None] + list(range(1, bound + 1)):
            if k is None and l is None:
                continue
            nodes.add((k, l))
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    # explore edges inside a larger box so chains may pass through big thresholds
    big = 3 * bound + 2
    universe = set()
    for k in [None] + list(range(1, big + 1)):
        for l in [None] + list(range(1, big + 1)):
            if not (k is None and l is None):
                universe.add((k, l))
    for v in universe:
        parent.setdefault(v, v)
    for (k, l) in universe:
        for m in range(0, max_m + 1):
            # direct: a outside I means m < k (every m when I = 0)
            if k is None or m < k:
                w = (colon(k, m), times(l, m))
                if w in universe:
                    a, b = find((k, l)), find(w)
                    parent[a] = b
    return {v: find(v) for v in nodes}, find


def sharp_oracle_fixed(k, span=12):
    """``b in I#`` iff some ``a`` outside ``I`` has ``a*b`` in ``I``; thresholds on multiplicities."""
    members = [mb for mb in range(span) if any(ma + mb >= k for ma in range(k))]
    return min(members)


def cofactor_det(M):
    """Laplace expansion along the first row; independent of the library determinant."""
    if not M:
        return Poly.const(1)
    if len(M) == 1:
        return M[0][0]
    total = Poly()
    for j, a in enumerate(M[0]):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = a * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def minors_oracle(A):
    m, n = len(A), len(A[0]) if A else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = Poly()
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = poly_gcd(g, cofactor_det([[A[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


def oracle_contains(pair, N):
    """Some element lies in phi(N) but not in psi(N): compare subspace spans."""
    if N is Q:
        return oracle_q_full(pair.phi()) and not oracle_q_full(pair.psi())
    A = subspace(pair.phi(), N.t, N.k)
    B = subspace(pair.psi(), N.t, N.k)
    return len(span_basis(A + B, N.k)) > len(B)
