"""Breuil modules over k[[T1..Td]] in characteristic p and quasi-healthiness diagnosis."""

from .errors import *  # noqa: F401,F403
from .field import FieldElement, GroundField, frobenius_elem, make_field
from .finite_length import (
    FiniteLengthPair,
    SearchResult,
    critical_ideal,
    frobenius_socle_witness,
    search_finite_length_pairs,
    search_precision,
    validate_fl_pair,
)
from .healthiness import (
    CounterexampleBundle,
    Partition,
    Verdict,
    build_counterexample,
    critical_ideal_test,
    detect_shape,
    diagnose,
    initial_form_pm1_power_test,
    monomial_classify,
    partition_search,
    verify_bundle,
)
from .modules import (
    BreuilModP,
    Certificate,
    MorphismP,
    MuPSolution,
    check_morphism,
    compose,
    divides,
    dualize,
    epi_on_punctured,
    mu_p_module,
    solve_mu_p_morphism,
    validate,
)
from .semilinear import (
    SeriesMatrix,
    SolveResult,
    coker_annihilated_by,
    coker_finite_length,
    is_surjective,
    nilpotent_mod_maximal,
    solve_linear,
    solve_many,
    twist,
)
from .series import (
    HomogeneousForm,
    MembershipResult,
    MonomialIdeal,
    OrderResult,
    RingContext,
    Series,
    extend_series,
    find_normalizing_lambda,
    frobenius_sigma,
    initial_form,
    invert_unit,
    monomial_ideal_membership,
    ord,
    parse_series,
    shear,
    swap_variables,
    weierstrass_polynomial,
    weierstrass_preparation,
)

__version__ = "0.1.0"
