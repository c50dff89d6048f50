"""chloc: exact equivariant characteristic-class calculus for chain polynomials.

A pure-Python, exact-arithmetic library for

* truncated graded Chow rings over Q and Laurent series in an equivariant
  parameter (:mod:`chloc.rings`, :mod:`chloc.series`),
* Chern-character-based characteristic classes: Todd, Hirzebruch,
  equivariant Euler, Todd twists, and their comparison identity
  (:mod:`chloc.charclasses`),
* chain-polynomial combinatorics and diagonal symmetry groups
  (:mod:`chloc.chains`),
* localization products with tautological-relation extraction
  (:mod:`chloc.localize`),
* the equivariant small I-function and its Picard-Fuchs verification
  (:mod:`chloc.ifunction`),

plus a deterministic command-line front end (:mod:`chloc.cli`).
"""

from .chains import (
    ChainData,
    SymmetryElement,
    chain_solve,
    grading_element,
    is_calabi_yau,
    is_symmetry,
    sector,
    selection_rule,
    symmetry_group,
    weight_sequence,
)
from .charclasses import (
    IdentityCheck,
    KClass,
    bernoulli,
    equivariant_euler,
    euler_identity_check,
    hirzebruch_class,
    hirzebruch_coefficient,
    line_bundle,
    stirling2,
    sum_of_roots,
    todd,
    todd_twist_ratio,
)
from .classexpr import ParseError, parse_class_expr
from .ifunction import (
    ICoefficient,
    PFItem,
    PFReport,
    b_range,
    big_i_factor,
    i_coefficient,
    nonequivariant_limit,
    picard_fuchs_check,
)
from .localize import (
    LocInput,
    LocResult,
    TautrelReport,
    chain_specialization,
    crosscheck_factors,
    hodge_product,
    localization_product,
    tautological_crosscheck,
)
from .ratfunc import BivarPoly, RatFunc
from .rings import ChowElement, Ring
from .series import NotConvergentError, QSeries, q_exponential

__version__ = "0.1.0"

__all__ = [
    "BivarPoly",
    "ChainData",
    "ChowElement",
    "ICoefficient",
    "IdentityCheck",
    "KClass",
    "LocInput",
    "LocResult",
    "NotConvergentError",
    "ParseError",
    "PFItem",
    "PFReport",
    "QSeries",
    "RatFunc",
    "Ring",
    "SymmetryElement",
    "TautrelReport",
    "b_range",
    "bernoulli",
    "big_i_factor",
    "chain_solve",
    "crosscheck_factors",
    "equivariant_euler",
    "euler_identity_check",
    "chain_specialization",
    "grading_element",
    "hirzebruch_class",
    "hirzebruch_coefficient",
    "hodge_product",
    "i_coefficient",
    "is_calabi_yau",
    "is_symmetry",
    "line_bundle",
    "localization_product",
    "nonequivariant_limit",
    "parse_class_expr",
    "picard_fuchs_check",
    "q_exponential",
    "sector",
    "selection_rule",
    "stirling2",
    "sum_of_roots",
    "symmetry_group",
    "tautological_crosscheck",
    "todd",
    "todd_twist_ratio",
    "weight_sequence",
]
