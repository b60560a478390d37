"""Exact toolkit for generalized perfect arrays, cocyclic Butson Hadamard
matrices, relative difference sets and plateaued functions.
"""

from .arrays import (
    AcTable,
    ExponentArray,
    ac_table,
    autocorrelation,
    expand,
    is_gpbf,
    is_gpha,
    is_perfect,
    level_sets,
    obstruction_condition_holds,
)
from .catalog import BINARY_CUBE, BINARY_SQUARE_4, EXAMPLES, GPBF_NOT_GPHA, TERNARY_SQUARE_3
from .cocycles import (
    Cocycle,
    ExpMatrix,
    butson_order_constraint,
    coboundary,
    cocycle_product,
    cocyclic_matrix,
    is_butson,
    is_cocycle,
    is_symmetric,
    mu_z,
    mu_z_is_coboundary,
    row_sum_feasibility,
    trivial_cocycle,
)
from .cyclotomic import CycInt, cyclotomic_polynomial
from .designs import (
    EquivalenceReport,
    Rds,
    equivalence_harness,
    ext_rds_check,
    gamma_iso,
    rds_from_expansion,
    splitting_rds,
    verify_rds,
)
from .errors import (
    BudgetExceededError,
    GphaError,
    InvalidInputError,
    InvalidParameterError,
    InvariantViolation,
)
from .forge import Certificate, exhaustive_search, family_gpba, kronecker_compose
from .groups import ExtGroup, Group, QuotientGroup, central_extension, expansion_context, quotient
from .spectra import (
    Spectrum,
    classify_plateaued,
    dft_relation_check,
    fourier_kronecker,
    gpbf_by_counts,
    predicted_support,
    walsh_spectrum,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
