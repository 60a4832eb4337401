"""Exact computations with divisors, pp-formulas and the Ziegler spectrum of
the ring of entire functions.

The exact tier works over Gaussian rationals and polynomials in ``z``; the
symbolic tier describes infinite zero sets by eventually quasi-polynomial
multiplicity sequences.  See ``zg help`` for the command line interface.
"""

from .classify import (
    EMPTY,
    FREE,
    ZERO_CUT,
    AdmissibleTriple,
    DegreeAtLeast,
    Fixed,
    FixedThreshold,
    PointClass,
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
from .divisors import (
    EPSeq,
    FiniteDivisor,
    NotSplittable,
    Order,
    SplitScalar,
    TailDivisor,
    adequate_split,
    dense_between,
    div_gcd,
    div_lcm,
    div_mul,
    divides,
    eps_cmp,
    fin_equiv,
    from_poly,
    split_coprime,
    to_poly,
)
from .dsl import parse_formula, parse_pair, parse_poly, parse_triple, parse_value
from .errors import DomainError, ParseError, UltrafilterDependent, ZgError
from .pp import (
    Q,
    Ann,
    Conj,
    Divides,
    FiniteLength,
    MatrixForm,
    Sum,
    evaluate,
    lattice_leq,
    to_conj_normal,
    to_sum_normal,
)
from .scalars import (
    GaussRational,
    Poly,
    multiplicity_at,
    poly_divmod,
    poly_gcd,
    poly_lcm,
    poly_xgcd,
    saturation_part,
)
from .snf import determinantal_divisors, invariant_factors, smith_normal_form
from .topology import (
    BasicOpenPair,
    cb_derivative_pair,
    contains_point,
    contains_triple,
    dense_chain_check,
    inhabit,
    is_superdecomposable_candidate,
    isolation_pair,
)

__all__ = [
    "EMPTY",
    "FREE",
    "ZERO_CUT",
    "AdmissibleTriple",
    "DegreeAtLeast",
    "Fixed",
    "FixedThreshold",
    "PointClass",
    "PrincipalAbove",
    "apply_shift",
    "classify",
    "cut_contains",
    "cut_leq",
    "is_prime_cut",
    "is_weakly_prime",
    "localizing_ideal",
    "pp_type_of_element",
    "sharp",
    "shift_equivalent",
    "validate_triple",
    "EPSeq",
    "FiniteDivisor",
    "NotSplittable",
    "Order",
    "SplitScalar",
    "TailDivisor",
    "adequate_split",
    "dense_between",
    "div_gcd",
    "div_lcm",
    "div_mul",
    "divides",
    "eps_cmp",
    "fin_equiv",
    "from_poly",
    "split_coprime",
    "to_poly",
    "Q",
    "Ann",
    "Conj",
    "Divides",
    "FiniteLength",
    "MatrixForm",
    "Sum",
    "evaluate",
    "lattice_leq",
    "to_conj_normal",
    "to_sum_normal",
    "GaussRational",
    "Poly",
    "multiplicity_at",
    "poly_divmod",
    "poly_gcd",
    "poly_lcm",
    "poly_xgcd",
    "saturation_part",
    "BasicOpenPair",
    "cb_derivative_pair",
    "contains_point",
    "contains_triple",
    "dense_chain_check",
    "inhabit",
    "is_superdecomposable_candidate",
    "isolation_pair",
    "parse_formula",
    "parse_pair",
    "parse_poly",
    "parse_triple",
    "parse_value",
    "DomainError",
    "ParseError",
    "UltrafilterDependent",
    "ZgError",
    "determinantal_divisors",
    "invariant_factors",
    "smith_normal_form",
]

__version__ = "0.1.0"
