from hypothesis import given
import hypothesis.strategies as st

from entire_zg.dsl import parse_matrix
from entire_zg.scalars import Poly
from entire_zg.snf import determinant, determinantal_divisors, invariant_factors, matmul, smith_normal_form

from conftest import polys
from oracles import minors_oracle


@st.composite
def matrices(draw):
    m, n = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    return [[draw(polys(max_deg=2)) for _ in range(n)] for _ in range(m)]


def is_unit_matrix(U):
    d = determinant(U)
    return d.degree == 0


def check_snf(A):
    trace = []
    U, D, V = smith_normal_form(A, trace)
    assert matmul(matmul(U, A), V) == D
    assert is_unit_matrix(U) and is_unit_matrix(V)
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if i != j:
                assert x.is_zero()
    for a, b in zip(diag, diag[1:]):
        assert b.is_zero() or (not a.is_zero() and (b % a).is_zero())
    for d in diag:
        assert d.is_zero() or d.lead == 1
    oracle = minors_oracle(A)
    prod = Poly.const(1)
    for k, d in enumerate(diag):
        prod = prod * d
        assert prod == oracle[k]
    return diag, trace


def test_worked_example():
    diag, trace = check_snf(parse_matrix("[[z,0],[1,z]]"))
    assert [str(d) for d in diag] == ["1", "z^2"]
    assert trace


def test_rectangular_and_zero():
    check_snf(parse_matrix("[[z-1, z^2-1, 0]]"))
    check_snf(parse_matrix("[[0],[0]]"))
    check_snf(parse_matrix("[[z, z+1],[z^2, z^2+z],[1, 2]]"))


@given(matrices())
def test_random_matrices(A):
    check_snf(A)


@given(matrices())
def test_library_minors_agree_with_oracle(A):
    assert determinantal_divisors(A) == minors_oracle(A)
    assert len(invariant_factors(A)) == min(len(A), len(A[0]))
