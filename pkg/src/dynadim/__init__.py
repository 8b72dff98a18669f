"""Dimension and entropy estimators for model dynamical systems.

The library computes correlation sums, energy functions, generalized
fractal dimensions, local dimensions, Brin-Katok metric entropy and
generating-set topological entropy for invariant measures of a small zoo
of systems (full shifts, the doubling map, hyperbolic toral
automorphisms, periodic orbits), and checks the classical inequalities
relating them against closed-form oracles.
"""

from .geometry import (
    GeometryError,
    IncompatiblePointsError,
    InsufficientWindowError,
    Point,
    SymbolicPoint,
    SystemSpec,
    TorusPoint,
    ZOO_NAMES,
    bilateral_dist,
    bowen_dist,
    check_hyperbolic_metric,
    dist,
    dn_dist,
    dyadic_depth,
    zoo_system,
)
from .measures import (
    BallQuery,
    MeasureError,
    MeasureModel,
    ball_mass,
    bernoulli_measure,
    coords_array,
    dirac_measure,
    empirical_ball_mass,
    empirical_measure,
    lebesgue_measure,
    markov_measure,
    orbit,
    periodic_measure,
    sample,
)
from .dimension import (
    ComputationError,
    DimensionReport,
    EpsGrid,
    ExactMode,
    LocalDimReport,
    MonteCarloMode,
    ScalingScan,
    correlation_scan,
    correlation_sum,
    dimension_estimate,
    energy_function,
    entropy_integral,
    local_dimension,
    mass_scan,
    pesin_convergence_test,
    scan,
)
from .entropy import (
    CloudMode,
    EntropyReport,
    EntropyScan,
    ExactShiftMode,
    GreedyMode,
    bilateral_bk_scan,
    brin_katok_scan,
    generating_count,
    generating_scan,
    metric_entropy_estimate,
    rate_report,
    topological_entropy_estimate,
)
from .verify import (
    SuiteResult,
    VerifyJob,
    default_suite,
    run_suite,
    verify_anosov_dimension_formula,
    verify_dimension_monotonicity,
    verify_entropy_dimension_sandwich,
    verify_expansive_dimension_bound,
    verify_expansive_entropy_bound,
    verify_homogeneity,
    verify_local_dimension_bounds,
    verify_max_entropy_lower_bound,
)
from .reports import VerdictReport
from ._neighbors import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "BallQuery",
    "CloudMode",
    "ComputationError",
    "DimensionReport",
    "EntropyReport",
    "EntropyScan",
    "EpsGrid",
    "ExactMode",
    "ExactShiftMode",
    "GeometryError",
    "GreedyMode",
    "IncompatiblePointsError",
    "InsufficientWindowError",
    "KERNEL_BACKEND",
    "LocalDimReport",
    "MeasureError",
    "MeasureModel",
    "MonteCarloMode",
    "Point",
    "ScalingScan",
    "SuiteResult",
    "SymbolicPoint",
    "SystemSpec",
    "TorusPoint",
    "VerdictReport",
    "VerifyJob",
    "ZOO_NAMES",
    "__version__",
    "ball_mass",
    "bernoulli_measure",
    "bilateral_bk_scan",
    "bilateral_dist",
    "bowen_dist",
    "brin_katok_scan",
    "check_hyperbolic_metric",
    "coords_array",
    "correlation_scan",
    "correlation_sum",
    "default_suite",
    "dimension_estimate",
    "dirac_measure",
    "dist",
    "dn_dist",
    "dyadic_depth",
    "empirical_ball_mass",
    "empirical_measure",
    "energy_function",
    "entropy_integral",
    "generating_count",
    "generating_scan",
    "lebesgue_measure",
    "local_dimension",
    "markov_measure",
    "mass_scan",
    "metric_entropy_estimate",
    "orbit",
    "periodic_measure",
    "pesin_convergence_test",
    "rate_report",
    "run_suite",
    "sample",
    "scan",
    "topological_entropy_estimate",
    "verify_anosov_dimension_formula",
    "verify_dimension_monotonicity",
    "verify_entropy_dimension_sandwich",
    "verify_expansive_dimension_bound",
    "verify_expansive_entropy_bound",
    "verify_homogeneity",
    "verify_local_dimension_bounds",
    "verify_max_entropy_lower_bound",
    "zoo_system",
]
