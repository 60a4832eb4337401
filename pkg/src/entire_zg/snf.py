"""Smith normal form over the Euclidean domain Q(i)[z]."""

from itertools import combinations, permutations

from .scalars import Poly, poly_gcd

__all__ = [
    "smith_normal_form",
    "determinant",
    "determinantal_divisors",
    "invariant_factors",
    "identity",
    "matmul",
]


def identity(n):
    one, zero = Poly.const(1), Poly()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [
        [sum((A[i][k] * B[k][j] for k in range(inner)), Poly()) for j in range(cols)]
        for i in range(len(A))
    ]


def _perm_sign(p):
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinant(M):
    """Leibniz expansion; meant for the small matrices used here."""
    n = len(M)
    if n == 0:
        return Poly.const(1)
    total = Poly()
    for p in permutations(range(n)):
        term = Poly.const(_perm_sign(p))
        for i in range(n):
            term = term * M[i][p[i]]
            if term.is_zero():
                break
        total = total + term
    return total


def smith_normal_form(A, trace=None):
    """Return ``(U, D, V)`` with ``U*A*V = D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with monic entries
    ``d1 | d2 | ...`` (zeros last).  When ``trace`` is a list, a line per
    elementary step is appended to it.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [list(r) for r in A]
    U, V = identity(rows), identity(cols)
    log = trace.append if trace is not None else (lambda _s: None)

    def swap_rows(i, j):
        if i != j:
            M[i], M[j] = M[j], M[i]
            U[i], U[j] = U[j], U[i]
            log(f"swap rows {i + 1},{j + 1}")

    def swap_cols(i, j):
        if i != j:
            for R in (M, V):
                for r in R:
                    r[i], r[j] = r[j], r[i]
            log(f"swap cols {i + 1},{j + 1}")

    def add_row(dst, src, q):
        # row_dst += q * row_src
        for R in (M, U):
            R[dst] = [x + q * y for x, y in zip(R[dst], R[src])]
        log(f"row{dst + 1} += ({q})*row{src + 1}")

    def add_col(dst, src, q):
        for R in (M, V):
            for r in R:
                r[dst] = r[dst] + q * r[src]
        log(f"col{dst + 1} += ({q})*col{src + 1}")

    for p in range(min(rows, cols)):
        while True:
            best = None
            for i in range(p, rows):
                for j in range(p, cols):
                    e = M[i][j]
                    if not e.is_zero() and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(p, i)
            swap_cols(p, j)
            piv = M[p][p]
            dirty = False
            for i in range(p + 1, rows):
                if not M[i][p].is_zero():
                    q, r = divmod(M[i][p], piv)
                    add_row(i, p, -q)
                    dirty = dirty or not r.is_zero()
            for j in range(p + 1, cols):
                if not M[p][j].is_zero():
                    q, r = divmod(M[p][j], piv)
                    add_col(j, p, -q)
                    dirty = dirty or not r.is_zero()
            if dirty:
                continue
            bad = next(
                (i for i in range(p + 1, rows) for j in range(p + 1, cols)
                 if not (M[i][j] % piv).is_zero()),
                None,
            )
            if bad is not None:
                add_row(p, bad, Poly.const(1))
                continue
            break
        if not M[p][p].is_zero():
            c = M[p][p].lead.inverse()
            if c != 1:
                M[p] = [x.scale(c) for x in M[p]]
                U[p] = [x.scale(c) for x in U[p]]
                log(f"row{p + 1} *= {c}")
    return U, M, V


def invariant_factors(A):
    _, D, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def determinantal_divisors(A):
    """``gcd`` of all ``r x r`` minors for ``r = 1..min(rows, cols)``.

    An independent route to the invariant factors: ``d_r = D_r / D_{r-1}``.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    out = []
    for r in range(1, min(rows, cols) + 1):
        g = Poly()
        for ri in combinations(range(rows), r):
            for ci in combinations(range(cols), r):
                g = poly_gcd(g, determinant([[A[i][j] for j in ci] for i in ri]))
        out.append(g)
    return out
