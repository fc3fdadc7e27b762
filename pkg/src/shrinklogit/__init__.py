"""Shrinkage estimators for multicollinear binary logistic regression.

The package fits the logistic MLE by IRLS, evaluates a family of
restricted and Liu-type shrinkage estimators on the fitted working
quantities, computes their exact bias, covariance, and (matrix) mean
squared error at known truth, runs executable dominance checks between
them, and reproduces the standard correlated-design Monte Carlo
comparison with deterministic, parallel-safe seeding.
"""

from .datasets import (
    DiagnosticsReport,
    bundled_dataset_path,
    diagnostics,
    load_csv,
    save_csv,
)
from .dominance import (
    DominanceVerdict,
    check_all,
    check_c31,
    check_t33,
    check_t34,
    check_t35,
    check_t36,
    check_t37,
)
from .errors import (
    AllReplicationsFailedError,
    ConstantColumnError,
    CsvParseError,
    DegenerateProjectionError,
    DegenerateTermsError,
    DimensionMismatchError,
    InvalidMatrixError,
    MissingRestrictionError,
    NonBinaryResponseError,
    NotConvergedError,
    NotPSDError,
    ShrinkLogitError,
    SingularInformationError,
    SingularRestrictionGramError,
)
from .estimators import (
    KINDS,
    RESTRICTED_KINDS,
    SHRINKAGE_KINDS,
    Estimate,
    EstimatorSpec,
    estimate,
    ld_matrix,
    liu_matrix,
    residual,
    restricted_mle,
)
from .linalg import (
    DEFAULT_TOLERANCE,
    PsdResult,
    SpectralDecomp,
    Tolerance,
    in_range,
    is_psd,
    lambda_max_ratio,
    moore_penrose,
    sym_eigen,
    symmetrize,
)
from .logit import (
    Dataset,
    FitOptions,
    FittedLogit,
    LinearRestriction,
    irls_fit,
    working_quantities,
)
from .risk import (
    RiskReport,
    RiskScenario,
    SpectralRiskTerms,
    SweepRow,
    a_matrix,
    d_sweep,
    risk,
    spectral_risk_terms,
)
from .scenarios import load_scenario, save_scenario
from .simulation import (
    TABLE_SUITE_D_GRID,
    TABLE_SUITE_KINDS,
    SimulationCell,
    SimulationConfig,
    SimulationResult,
    default_restriction,
    gen_beta,
    gen_design,
    gen_response,
    run_simulation,
    table_suite,
)

__version__ = "0.1.0"

__all__ = [
    "AllReplicationsFailedError",
    "ConstantColumnError",
    "CsvParseError",
    "Dataset",
    "DEFAULT_TOLERANCE",
    "DegenerateProjectionError",
    "DegenerateTermsError",
    "DiagnosticsReport",
    "DimensionMismatchError",
    "DominanceVerdict",
    "Estimate",
    "EstimatorSpec",
    "FitOptions",
    "FittedLogit",
    "InvalidMatrixError",
    "KINDS",
    "LinearRestriction",
    "MissingRestrictionError",
    "NonBinaryResponseError",
    "NotConvergedError",
    "NotPSDError",
    "PsdResult",
    "RESTRICTED_KINDS",
    "RiskReport",
    "RiskScenario",
    "SHRINKAGE_KINDS",
    "ShrinkLogitError",
    "SimulationCell",
    "SimulationConfig",
    "SimulationResult",
    "SingularInformationError",
    "SingularRestrictionGramError",
    "SpectralDecomp",
    "SpectralRiskTerms",
    "SweepRow",
    "TABLE_SUITE_D_GRID",
    "TABLE_SUITE_KINDS",
    "Tolerance",
    "a_matrix",
    "bundled_dataset_path",
    "check_all",
    "check_c31",
    "check_t33",
    "check_t34",
    "check_t35",
    "check_t36",
    "check_t37",
    "d_sweep",
    "default_restriction",
    "diagnostics",
    "estimate",
    "gen_beta",
    "gen_design",
    "gen_response",
    "in_range",
    "irls_fit",
    "is_psd",
    "lambda_max_ratio",
    "ld_matrix",
    "liu_matrix",
    "load_csv",
    "load_scenario",
    "moore_penrose",
    "residual",
    "restricted_mle",
    "risk",
    "run_simulation",
    "save_csv",
    "save_scenario",
    "spectral_risk_terms",
    "sym_eigen",
    "symmetrize",
    "table_suite",
    "working_quantities",
]
