"""heiszeta: representation zeta functions of the Heisenberg group scheme
over O[x]/(x^n).

Exact symbolic resolution of min-exponent cone sums, scripted p-adic region
derivations for n <= 3, an independent residue-enumeration oracle, and a
catalog of closed forms, the conjectured product, expansion identity,
abscissa of convergence, topological limits and Dirichlet coefficients.
"""

from .catalog import (GlobalZeta, LocalZeta, OutOfRange, abscissa,
                      closed_local, closed_matches_conjecture,
                      conjectured_local, conjectured_product,
                      dirichlet_coeffs, expansion_identity, topological)
from .conesum import (CapTooLarge, ConeSum, ConeTerm, Divergent, LinForm,
                      MinExponent, UnsupportedCone, conesum_from_json,
                      conesum_to_json, derive_variant, enumerate_series,
                      expand_to_box, find_weights, resolve, resolve_terms,
                      series_matches_enumeration, specialize_factored,
                      sum_factored)
from .exact import (CycloProduct, MultiPoly, RatFunc, TSeries,
                    eps_topological, parse_poly, parse_ratfunc, rf_equal,
                    rf_series)
from .heisenberg import (CommutatorMatrix, MinorFamily, PadicIntegral,
                         build_integral, build_matrices, coord_names,
                         minor_family, norm_equivalent, pfaffian,
                         reduced_family)
from .oracle import (BudgetExceeded, EnumConfig, EnumResult, Unstable,
                     conjecture_probe, cross_check, evaluate, series_coeffs,
                     stability_check)
from .regions import (DerivationReport, RegionIntegral, check_partition,
                      leaf_value, load_fixture, run_script)

__version__ = "1.0.0"

__all__ = [
    "BudgetExceeded", "CapTooLarge", "CommutatorMatrix", "ConeSum",
    "ConeTerm", "CycloProduct", "DerivationReport", "Divergent",
    "EnumConfig", "EnumResult", "GlobalZeta", "LinForm", "LocalZeta",
    "MinExponent", "MinorFamily", "MultiPoly", "OutOfRange",
    "PadicIntegral", "RatFunc", "RegionIntegral", "TSeries", "Unstable",
    "UnsupportedCone", "abscissa", "build_integral", "build_matrices",
    "check_partition", "closed_local", "closed_matches_conjecture",
    "conesum_from_json", "conesum_to_json", "conjecture_probe",
    "conjectured_local", "conjectured_product", "coord_names",
    "cross_check", "derive_variant", "dirichlet_coeffs", "enumerate_series",
    "eps_topological", "evaluate", "expand_to_box", "expansion_identity",
    "find_weights", "leaf_value",
    "load_fixture", "minor_family", "norm_equivalent", "parse_poly",
    "parse_ratfunc", "pfaffian", "reduced_family", "resolve",
    "resolve_terms", "rf_equal", "rf_series", "run_script", "series_coeffs",
    "series_matches_enumeration", "specialize_factored",
    "stability_check", "sum_factored", "topological",
]
