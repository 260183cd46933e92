"""Exact-arithmetic toolkit for Hurwitz stable polynomials with positive
integer coefficients: constructions, certification, exhaustive optimal
searches, growth-constant bounds, and coefficient asymptotics."""

from .polycore import (
    CoeffStats,
    IntPolynomial,
    RatPolynomial,
    coeff_stats,
    coeffs_desc,
    evaluate_at_integer,
    evaluate_at_rational,
    int_poly,
    is_symmetric,
    multiply,
    parse_poly_text,
    poly_from_json,
    poly_to_json,
    poly_to_text,
    power,
    rat_poly,
    reverse,
)
from .stability import (
    OracleReport,
    RootFinderError,
    StabilityReport,
    Verdict,
    find_zeros,
    is_hurwitz_exact,
    spectral_abscissa,
    stability_oracle_check,
)
from .constructors import (
    DoublingChain,
    a_family,
    double,
    doubling_chain,
    kfold_symmetry_order,
    mobius_ell,
    undouble,
)
from .backend import active_backend, set_search_threads
from .optsearch import (
    BudgetExceededError,
    CensusResult,
    RunManifest,
    SearchCancelled,
    SearchResult,
    WitnessRecord,
    append_manifest,
    count_stable_in_box,
    search_c_optimal,
    search_sigma_optimal,
)
from .bounds import (
    BeauzamyResult,
    BetaRow,
    BoundsTable,
    GammaTable,
    VSequence,
    a_family_identity_check,
    beauzamy_check,
    beta_bounds,
    even_degree_pmax_floor,
    gamma_table,
    v_sequence,
)
from .asymptotics import (
    EnvelopeReport,
    FourierBoundReport,
    PowerBoundReport,
    PowerMaxReport,
    SymbolProfile,
    envelope_checks,
    fourier_coefficient_bound,
    fourier_coefficient_quadrature,
    max_coefficient_bound_check,
    max_coefficient_of_power,
    symbol_profile,
)

__version__ = "0.1.0"

__all__ = [
    "BeauzamyResult",
    "BetaRow",
    "BoundsTable",
    "BudgetExceededError",
    "CensusResult",
    "CoeffStats",
    "DoublingChain",
    "EnvelopeReport",
    "FourierBoundReport",
    "GammaTable",
    "IntPolynomial",
    "OracleReport",
    "PowerBoundReport",
    "PowerMaxReport",
    "RatPolynomial",
    "RootFinderError",
    "RunManifest",
    "SearchCancelled",
    "SearchResult",
    "StabilityReport",
    "SymbolProfile",
    "VSequence",
    "Verdict",
    "WitnessRecord",
    "a_family",
    "a_family_identity_check",
    "active_backend",
    "append_manifest",
    "beauzamy_check",
    "beta_bounds",
    "coeff_stats",
    "coeffs_desc",
    "count_stable_in_box",
    "double",
    "doubling_chain",
    "envelope_checks",
    "evaluate_at_integer",
    "evaluate_at_rational",
    "even_degree_pmax_floor",
    "find_zeros",
    "fourier_coefficient_bound",
    "fourier_coefficient_quadrature",
    "gamma_table",
    "int_poly",
    "is_hurwitz_exact",
    "is_symmetric",
    "kfold_symmetry_order",
    "max_coefficient_bound_check",
    "max_coefficient_of_power",
    "mobius_ell",
    "multiply",
    "parse_poly_text",
    "poly_from_json",
    "poly_to_json",
    "poly_to_text",
    "power",
    "rat_poly",
    "reverse",
    "search_c_optimal",
    "search_sigma_optimal",
    "set_search_threads",
    "spectral_abscissa",
    "stability_oracle_check",
    "symbol_profile",
    "undouble",
    "v_sequence",
]
