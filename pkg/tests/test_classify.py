import pytest
from hypothesis import given
import hypothesis.strategies as st

from entire_zg.classify import (
    EMPTY,
    FREE,
    ZERO_CUT,
    AdmissibleTriple,
    DegreeAtLeast,
    Fixed,
    FixedThreshold,
    PrincipalAbove,
    apply_shift,
    classify,
    cut_contains,
    cut_leq,
    is_prime_cut,
    is_weakly_prime,
    localizing_ideal,
    pp_type_of_element,
    sharp,
    shift_equivalent,
    validate_triple,
)
from entire_zg.divisors import EPSeq, Order, eps_cmp
from entire_zg.dsl import parse_eps, parse_triple
from entire_zg.errors import DomainError
from entire_zg.pp import E

from oracles import sharp_oracle_fixed, shift_oracle_classes

T = parse_triple


def above(text):
    return PrincipalAbove(parse_eps(text))


class TestCuts:
    def test_weakly_prime_examples(self):
        for c in (FixedThreshold(2), above("n"), ZERO_CUT, DegreeAtLeast(3)):
            assert is_weakly_prime(c)

    def test_sharp_examples(self):
        assert sharp(FixedThreshold(3)) == FixedThreshold(1)
        assert sharp(DegreeAtLeast(1)) == DegreeAtLeast(1)
        assert sharp(above("n")) == above("1")

    @pytest.mark.parametrize("k", range(1, 7))
    def test_sharp_matches_oracle(self, k):
        assert sharp(FixedThreshold(k)) == FixedThreshold(sharp_oracle_fixed(k))

    def test_prime_examples(self):
        assert is_prime_cut(FixedThreshold(1))
        assert not is_prime_cut(above("2*n"))
        assert is_prime_cut(DegreeAtLeast(2))
        assert not is_prime_cut(FixedThreshold(2))

    def test_doubling_witness_for_non_prime(self):
        # the product of two elements of multiplicity n lies in the cut, neither factor does
        c = above("2*n")
        assert cut_contains(c, parse_eps("2*n")) and not cut_contains(c, parse_eps("n"))

    def test_containment_order(self):
        assert cut_leq(FixedThreshold(3), FixedThreshold(1))
        assert cut_leq(above("n^2"), above("n"))
        assert cut_leq(above("n^2"), DegreeAtLeast(2))
        assert not cut_leq(DegreeAtLeast(2), above("n^2"))


class TestTriples:
    def test_validation_examples(self):
        assert validate_triple(T("triple(fixed(0), 2, 1)")).case == 4
        assert validate_triple(T("triple(empty, 0, 0)")).case == 1
        rep = validate_triple(AdmissibleTriple(Fixed(0), above("n"), ZERO_CUT))
        assert not rep.ok and "tier" in rep.message

    def test_localizing_examples(self):
        assert localizing_ideal(T("triple(fixed(2), 4, 3)")) == FixedThreshold(1)
        assert localizing_ideal(T("triple(empty, 0, 0)")) == ZERO_CUT
        assert localizing_ideal(T("triple(free, deg(1), 0)")) == DegreeAtLeast(1)

    def test_pp_type_examples(self):
        assert pp_type_of_element(E(0, 3), 0) == T("triple(fixed(0), 3, 1)")
        assert pp_type_of_element(E(0, 3), 2) == T("triple(fixed(0), 1, 3)")
        with pytest.raises(DomainError):
            pp_type_of_element(E(0, 3), 3)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_pp_types_of_one_point_are_shift_equivalent(self, n):
        types = [pp_type_of_element(E(1, n), j) for j in range(n)]
        for t in types:
            assert t.I.k + t.J.k == n + 1
            assert shift_equivalent(types[0], t)


class TestShifts:
    def test_fixed_example(self):
        assert shift_equivalent(T("triple(fixed(0), 2, 3)"), T("triple(fixed(0), 4, 1)"))
        assert not shift_equivalent(T("triple(fixed(0), 2, 3)"), T("triple(fixed(1), 2, 3)"))

    def test_free_example_with_witness(self):
        v = shift_equivalent(T("triple(free, above(n+1), above(n^2))"), T("triple(free, above(1), above(n^2+n))"))
        assert v.equivalent
        assert [s.rho for s in v.witness] == [parse_eps("n")]

    def test_fixed_tier_matches_brute_force_oracle(self):
        classes, _ = shift_oracle_classes(6)
        nodes = sorted(classes, key=lambda v: (v[0] or 0, v[1] or 0))

        def triple(v):
            k, l = v
            return AdmissibleTriple(Fixed(0), ZERO_CUT if k is None else FixedThreshold(k),
                                    ZERO_CUT if l is None else FixedThreshold(l))

        for a in nodes:
            for b in nodes:
                assert bool(shift_equivalent(triple(a), triple(b))) == (classes[a] == classes[b]), (a, b)

    def test_apply_shift_rules(self):
        tr = T("triple(fixed(0), 3, 2)")
        assert apply_shift(tr, "direct", 2) == T("triple(fixed(0), 1, 4)")
        assert apply_shift(tr, "inverse", 1) == T("triple(fixed(0), 4, 1)")
        with pytest.raises(DomainError):
            apply_shift(tr, "direct", 3)

    @given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 3))
    def test_free_principal_shifts_preserve_sum(self, a, b, c):
        g, d = parse_eps(f"{a}*n+1"), parse_eps(f"n^2+{b}")
        tr = AdmissibleTriple(FREE, PrincipalAbove(g), PrincipalAbove(d))
        rho = EPSeq.const(c)
        try:
            out = apply_shift(tr, "inverse", rho)
        except DomainError:
            return
        assert eps_cmp(out.I.gamma + out.J.gamma, g + d) is Order.EQUAL
        assert shift_equivalent(tr, out)

    def test_degree_cuts_are_shift_invariant(self):
        a = T("triple(free, above(n^2+n), deg(2))")
        b = T("triple(free, above(n^2+5), deg(2))")
        c = T("triple(free, above(n^3), deg(2))")
        assert shift_equivalent(a, b)
        assert not shift_equivalent(a, c)


class TestClassify:
    def test_isolated_finite_length(self):
        pc = classify(T("triple(fixed(0), 4, 1)"))
        assert pc.kind == "IsolatedFiniteLength" and pc.params[1] == 4
        assert pc.isolated and pc.closed and not pc.survives_cb

    def test_q_point(self):
        pc = classify(T("triple(empty, 0, 0)"))
        assert pc.kind == "QPoint" and pc.closed and not pc.isolated and pc.survives_cb

    def test_free_finite_endolength(self):
        pc = classify(T("triple(free, above(2), above(1))"))
        assert pc.kind == "FreeFiniteEndolength" and pc.params == (2,)
        assert pc.closed and pc.survives_cb and pc.closed_in_derivative is False
        shifted = classify(T("triple(free, above(1), above(2))"))
        assert shifted.params == (2,)

    def test_generic(self):
        pc = classify(T("triple(free, deg(2), deg(2))"))
        assert pc.kind == "Generic" and pc.closed and pc.survives_cb and not pc.isolated

    def test_other(self):
        pc = classify(T("triple(free, above(n), 0)"))
        assert pc.kind == "FreeOther" and not pc.isolated

    @pytest.mark.parametrize("k", range(1, 6))
    def test_isolated_point_matches_eval_pp_type(self, k):
        tr = pp_type_of_element(E(0, k), 0)
        assert tr == AdmissibleTriple(Fixed(0), FixedThreshold(k), FixedThreshold(1))
        assert classify(tr).params == (tr.U.t, k)

    def test_invalid_triple_rejected(self):
        with pytest.raises(DomainError):
            classify(AdmissibleTriple(EMPTY, FixedThreshold(1), ZERO_CUT))
