"""Multiplication-count cost model comparing Regev-style factoring and discrete
logarithm algorithms (EGR) with the EHS and ES variations of Shor's algorithm."""

from regevcost.errors import ConfigurationError, InvariantViolation, NonInvertibleError
from regevcost.lattice import (
    PERFECT_LIMIT,
    PRESETS,
    ReductionModel,
    gamma_from_delta,
    log2_gamma,
    parse_reduction,
    root_hermite,
)
from regevcost.numtheory import (
    ElementStyle,
    d_max,
    fib_decompose,
    fib_reconstruct,
    first_primes,
    gen_fib,
    k_max,
)
from regevcost.regev import (
    CostBreakdown,
    RegevParameterization,
    c_lower_bound,
    f_cost,
    log_d_of,
    min_c,
    optimize,
    perfect_params,
    per_run_ops,
    post_processing_feasible,
    select_s,
)
from regevcost.report import (
    UNBOUNDED,
    ComparisonRow,
    RegevConfig,
    ShorConfig,
    build_comparison,
    crossover_search,
    format_advantage,
    reproduce_tables,
)
from regevcost.shor import (
    Algorithm,
    ProblemInstance,
    ProblemKind,
    ShorParameterization,
    TradeoffTable,
    exponent_bound,
    overall_ops,
    per_run_ops_ehs,
    per_run_ops_es,
)

__version__ = "0.1.0"

__all__ = [
    "UNBOUNDED",
    "Algorithm",
    "ComparisonRow",
    "RegevConfig",
    "ShorConfig",
    "build_comparison",
    "crossover_search",
    "format_advantage",
    "reproduce_tables",
    "ConfigurationError",
    "CostBreakdown",
    "ElementStyle",
    "InvariantViolation",
    "NonInvertibleError",
    "PERFECT_LIMIT",
    "PRESETS",
    "ProblemInstance",
    "ProblemKind",
    "ReductionModel",
    "RegevParameterization",
    "ShorParameterization",
    "TradeoffTable",
    "c_lower_bound",
    "d_max",
    "exponent_bound",
    "f_cost",
    "fib_decompose",
    "fib_reconstruct",
    "first_primes",
    "gamma_from_delta",
    "gen_fib",
    "k_max",
    "log2_gamma",
    "log_d_of",
    "min_c",
    "optimize",
    "overall_ops",
    "parse_reduction",
    "per_run_ops",
    "per_run_ops_ehs",
    "per_run_ops_es",
    "perfect_params",
    "post_processing_feasible",
    "root_hermite",
    "select_s",
]
