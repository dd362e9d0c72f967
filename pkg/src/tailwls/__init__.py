"""Reduced-bias tail-index estimation by weighted least squares.

Heavy-tailed (Pareto-type) samples admit the exponential regression
representation of their top-order-statistic log-spacings; fitting it by
weighted least squares with linearly decreasing weights gives a tail-index
estimator with the bias of a second-order correction and a closed-form
asymptotic variance of 4 gamma^2 / (3k). This package implements that
estimator alongside the classical Hill estimator and three regression
baselines, plus the sampling distributions, Monte Carlo machinery and
asymptotic diagnostics needed to study them.
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateTailError,
    EmptyEstimatorSetError,
    EmptyInputError,
    EmptyOrTinyError,
    GridEmptyError,
    InvalidRhoError,
    KOutOfRangeError,
    KTooSmallError,
    NegativePenaltyError,
    NonFiniteError,
    NonPositiveError,
    NonPositiveMeanError,
    NonPositiveTrueGammaError,
    TailwlsError,
    UOutOfRangeError,
)
from .spacings import (
    Covariates,
    LogSpacings,
    OrderedTail,
    WeightScheme,
    all_log_spacings,
    covariates,
    log_spacings,
    validate_and_sort,
    weights,
)
from .asymptotics import (
    NormalityReport,
    SMoments,
    amse,
    normality_report,
    s1_limit,
    s2_limit,
    s_moments,
    standardized_statistic,
)
from .estimators import (
    ESTIMATOR_IDS,
    EviPath,
    RegressionFit,
    bchill,
    evi_path,
    hill,
    ls_fit,
    optimal_k,
    ridge_fit,
    select_ridge_penalty,
    wls_fit,
    wls_gamma_grid,
    wls_gamma_path,
)
from .second_order import DEFAULT_RHO_GRID, MOMENT_RHO_RANGE, RhoMethod, resolve_rho
from .distributions import (
    FAMILIES,
    DistributionSpec,
    burr,
    cdf,
    frechet,
    loggamma,
    pareto,
    quantile,
    sample,
)
from .montecarlo import (
    GENERATOR_ID,
    SimulationConfig,
    SimulationSummary,
    rep_seed,
    run_model_simulation,
    run_simulation,
    sample_model_spacings,
    summarize,
)

__all__ = [
    "__version__",
    # errors
    "TailwlsError",
    "DegenerateTailError",
    "EmptyEstimatorSetError",
    "EmptyInputError",
    "EmptyOrTinyError",
    "GridEmptyError",
    "InvalidRhoError",
    "KOutOfRangeError",
    "KTooSmallError",
    "NegativePenaltyError",
    "NonFiniteError",
    "NonPositiveError",
    "NonPositiveMeanError",
    "NonPositiveTrueGammaError",
    "UOutOfRangeError",
    # spacings
    "OrderedTail",
    "LogSpacings",
    "WeightScheme",
    "Covariates",
    "validate_and_sort",
    "log_spacings",
    "all_log_spacings",
    "weights",
    "covariates",
    # estimators
    "ESTIMATOR_IDS",
    "RegressionFit",
    "EviPath",
    "hill",
    "wls_fit",
    "ls_fit",
    "ridge_fit",
    "select_ridge_penalty",
    "bchill",
    "evi_path",
    "optimal_k",
    "wls_gamma_grid",
    "wls_gamma_path",
    # second order
    "RhoMethod",
    "resolve_rho",
    "DEFAULT_RHO_GRID",
    "MOMENT_RHO_RANGE",
    # distributions
    "FAMILIES",
    "DistributionSpec",
    "pareto",
    "burr",
    "frechet",
    "loggamma",
    "quantile",
    "cdf",
    "sample",
    # monte carlo
    "GENERATOR_ID",
    "SimulationConfig",
    "SimulationSummary",
    "rep_seed",
    "sample_model_spacings",
    "run_simulation",
    "run_model_simulation",
    "summarize",
    # asymptotics
    "SMoments",
    "NormalityReport",
    "s_moments",
    "s1_limit",
    "s2_limit",
    "amse",
    "standardized_statistic",
    "normality_report",
]
