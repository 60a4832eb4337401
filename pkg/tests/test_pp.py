import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from entire_zg.dsl import parse_formula, parse_poly
from entire_zg.errors import DomainError
from entire_zg.pp import (
    DEFAULT_POINTS,
    Q,
    Ann,
    Conj,
    Divides,
    E,
    MatrixForm,
    QSubgroup,
    Sum,
    default_family,
    evaluate,
    lattice_leq,
    to_conj_normal,
    to_sum_normal,
)
from entire_zg.scalars import GaussRational, Poly

from oracles import oracle_exponent, oracle_q_full

F = parse_formula
POINTS = [GaussRational(t) if not isinstance(t, GaussRational) else t for t in DEFAULT_POINTS]


@st.composite
def local_polys(draw, max_deg=3):
    """Zero, or a constant times linear factors at the evaluation points."""
    if draw(st.integers(0, 6)) == 0:
        return Poly()
    p = Poly.const(draw(st.sampled_from([1, 2, -1, GaussRational(0, 1)])))
    for _ in range(draw(st.integers(0, max_deg))):
        p = p * Poly.linear_root(draw(st.sampled_from(POINTS + [GaussRational(3)])))
    return p


@st.composite
def matrix_forms(draw):
    m, n = draw(st.integers(0, 3)), draw(st.integers(1, 3))
    A = [[draw(local_polys()) for _ in range(n)] for _ in range(m)]
    b = [draw(local_polys()) for _ in range(n)]
    return MatrixForm(A, b)


def formulas(depth=2):
    atoms = st.one_of(
        st.builds(Divides, local_polys()),
        st.builds(Ann, local_polys()),
        matrix_forms(),
    )
    if depth == 0:
        return atoms
    sub = formulas(depth - 1)
    return st.one_of(atoms, st.builds(Conj, sub, sub), st.builds(Sum, sub, sub))


def small_family():
    return [E(t, k) for t in POINTS for k in (1, 2, 4)] + [Q]


def agrees_with_oracle(phi, N):
    v = evaluate(phi, N)
    if N is Q:
        return (v.value is QSubgroup.FULL) == oracle_q_full(phi)
    return v.value == oracle_exponent(phi, N)


class TestEvaluation:
    def test_worked_examples(self):
        assert evaluate(Divides(parse_poly("z^2")), E(0, 3)).value == 2
        assert evaluate(Ann(parse_poly("z^2")), E(0, 3)).value == 1
        assert evaluate(Divides(parse_poly("z-5")), Q).value is QSubgroup.FULL
        assert evaluate(Ann(parse_poly("z-5")), Q).value is QSubgroup.ZERO

    def test_degenerate_scalars(self):
        assert evaluate(F("div(0)"), E(0, 4)).value == 4
        assert evaluate(F("ann(0)"), E(0, 4)).value == 0
        assert evaluate(F("div(0)"), Q).value is QSubgroup.ZERO

    @settings(max_examples=60)
    @given(formulas(1))
    def test_matches_vector_space_oracle(self, phi):
        for N in small_family():
            assert agrees_with_oracle(phi, N), (str(phi), str(N))

    @settings(max_examples=60)
    @given(matrix_forms())
    def test_matrix_form_matches_oracle_up_to_length_six(self, phi):
        for t in POINTS:
            for k in range(1, 7):
                assert evaluate(phi, E(t, k)).value == oracle_exponent(phi, E(t, k))


class TestLattice:
    def test_worked_examples(self):
        fam = [E(0, k) for k in range(1, 6)]
        assert lattice_leq(F("ann(z)"), F("ann(z^2)"), fam)
        assert not lattice_leq(F("div(z)"), F("div(z^2)"), fam)

    def test_operators(self):
        a, b = F("div(z)"), F("ann(z)")
        assert a & b == Conj(a, b)
        assert a + b == Sum(a, b)


class TestNormalForms:
    def test_worked_examples(self):
        assert to_sum_normal(F("div(z-1)")).as_strings() == [["z-1", "0"]]
        assert to_sum_normal(Conj(Divides(1), Ann(0))).as_strings() == [["1", "0"]]
        phi = F("E y1 : [y1]*[[z^2]] = x*[z]")
        want = F("div(z) + ann(z)")
        fam = [E(t, k) for t in (0, 1, GaussRational(0, 1)) for k in range(1, 7)] + [Q]
        for N in fam:
            assert evaluate(phi, N) == evaluate(want, N)
        assert lattice_leq(phi, to_sum_normal(phi).to_formula(), fam)

    def test_trace_documents_the_reduction(self):
        nf = to_sum_normal(F("E y1 y2 : [y1 y2]*[[z,0],[1,z]] = x*[1,z]"))
        assert any(step.startswith("snf:") for step in nf.trace)

    @settings(max_examples=40)
    @given(formulas(2))
    def test_both_forms_are_equivalent(self, phi):
        fam = default_family(max_k=4)
        s, c = to_sum_normal(phi), to_conj_normal(phi)
        for N in fam:
            v = evaluate(phi, N)
            assert evaluate(s, N) == v
            assert evaluate(c, N) == v
            assert evaluate(s.to_formula(), N) == v

    def test_normal_forms_are_canonical(self):
        a = to_sum_normal(F("div(z) & ann(z^3) + div(z^2) & ann(z^3)"))
        b = to_sum_normal(F("div(z) & ann(z^3)"))
        assert a == b


def test_matrix_shape_checked():
    with pytest.raises(DomainError):
        MatrixForm([[Poly.const(1), Poly.const(2)]], [Poly.const(1)])
