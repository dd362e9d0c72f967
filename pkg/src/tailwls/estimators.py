"""Tail-index estimators built on weighted log-spacings.

The exponential regression representation of the spacings,

    Z_j = gamma + b * C_j + error_j,    C_j = (j/(k+1))^(-rho),

turns tail-index estimation into a one-covariate linear fit. Five closed-form
estimators are provided:

    HILL    sample mean of the Z_j (Hill 1975), no bias correction,
    LS      unweighted least squares intercept,
    RR      ridge-regularized least squares intercept,
    WLS     weighted least squares with weights W_j = 1 - j/(k+1),
    BCHILL  multiplicatively bias-corrected Hill using a slope estimate.

All regression fits share one algebraic core: with unit-sum weights w_j,

    b_hat     = sum w_j (C_j - S1) Z_j / (S2 + shrink)
    gamma_hat = sum w_j Z_j - b_hat * S1

where S1 = sum w_j C_j, S2 = sum w_j C_j^2 - S1^2, and ``shrink`` is zero for
plain fits and penalty/k for ridge. With penalty 0 the ridge path is
bit-for-bit the LS path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import asymptotics
from .errors import (
    EmptyInputError,
    InvalidRhoError,
    KOutOfRangeError,
    KTooSmallError,
    NegativePenaltyError,
)
from .spacings import (
    LogSpacings,
    OrderedTail,
    all_log_spacings,
    covariates,
    spacings_prefix,
    weights,
)

#: Canonical estimator identifiers, in reporting order.
ESTIMATOR_IDS = ("HILL", "BCHILL", "LS", "RR", "WLS")

#: Ridge penalty candidates are these factors times k.
RIDGE_PENALTY_FACTORS = (0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0)


@dataclass(frozen=True)
class RegressionFit:
    """Result of one linear fit on k spacings.

    ``fitted_means`` holds gamma_hat + b_hat * C_j and ``residuals`` the
    difference Z_j - fitted. ``penalty`` is set only by ridge fits.
    """

    gamma_hat: float
    b_hat: float
    rho_used: float
    k: int
    fitted_means: np.ndarray
    residuals: np.ndarray
    penalty: float | None = None


@dataclass(frozen=True)
class EviPath:
    """Estimates of one estimator along a range of k values.

    ``rho_values[i]`` is the rho used at ``k_values[i]`` (NaN for HILL, which
    needs none). ``penalties`` is populated for RR paths, else None.
    """

    estimator_id: str
    k_values: np.ndarray
    estimates: np.ndarray
    rho_values: np.ndarray
    rho_method_id: str
    n: int
    penalties: np.ndarray | None = None


def _check_fit_args(z: LogSpacings, rho: float) -> float:
    if z.k < 2:
        raise KTooSmallError(f"regression needs k >= 2, got k={z.k}")
    rho = float(rho)
    if not np.isfinite(rho) or rho >= 0.0:
        raise InvalidRhoError(f"rho={rho} must be finite and < 0")
    return rho


def _core_fit(zvals: np.ndarray, c: np.ndarray, w: np.ndarray, shrink: float):
    """Weighted one-covariate fit; returns (gamma_hat, b_hat, fitted)."""
    s1 = w @ c
    s2 = w @ (c * c) - s1 * s1
    b_hat = (w * (c - s1)) @ zvals / (s2 + shrink)
    gamma_hat = w @ zvals - b_hat * s1
    fitted = gamma_hat + b_hat * c
    return float(gamma_hat), float(b_hat), fitted


def hill(z: LogSpacings) -> float:
    """Hill estimator: the sample mean of the spacings."""
    return float(np.mean(z.z))


def wls_fit(z: LogSpacings, rho: float) -> RegressionFit:
    """Weighted least squares fit with weights W_j = 1 - j/(k+1).

    Args:
        z: spacings with k >= 2.
        rho: finite negative second-order parameter fixing the covariates.

    Returns:
        RegressionFit; ``gamma_hat`` is the reduced-bias tail-index estimate.

    Raises:
        KTooSmallError: k < 2.
        InvalidRhoError: rho not finite negative.
    """
    rho = _check_fit_args(z, rho)
    w = weights(z.k).normalized
    c = covariates(z.k, rho).c
    gamma_hat, b_hat, fitted = _core_fit(z.z, c, w, 0.0)
    return RegressionFit(
        gamma_hat=gamma_hat,
        b_hat=b_hat,
        rho_used=rho,
        k=z.k,
        fitted_means=fitted,
        residuals=z.z - fitted,
    )


def ls_fit(z: LogSpacings, rho: float) -> RegressionFit:
    """Plain least squares fit (uniform weights 1/k). Same contract as wls_fit."""
    rho = _check_fit_args(z, rho)
    w = np.full(z.k, 1.0 / z.k)
    c = covariates(z.k, rho).c
    gamma_hat, b_hat, fitted = _core_fit(z.z, c, w, 0.0)
    return RegressionFit(
        gamma_hat=gamma_hat,
        b_hat=b_hat,
        rho_used=rho,
        k=z.k,
        fitted_means=fitted,
        residuals=z.z - fitted,
    )


def ridge_fit(z: LogSpacings, rho: float, penalty: float) -> RegressionFit:
    """Ridge-regularized least squares fit.

    The slope solves the centered normal equation with ``penalty`` added to
    the centered sum of squares:

        b_hat = sum (C_j - Cbar)(Z_j - Zbar) / (sum (C_j - Cbar)^2 + penalty)

    and gamma_hat = Zbar - b_hat * Cbar. penalty=0 reproduces ls_fit exactly,
    penalty -> infinity sends b_hat to 0 and gamma_hat to the Hill estimate.

    Raises:
        KTooSmallError: k < 2.
        InvalidRhoError: rho not finite negative.
        NegativePenaltyError: penalty < 0.
    """
    rho = _check_fit_args(z, rho)
    penalty = float(penalty)
    if not penalty >= 0.0:
        raise NegativePenaltyError(f"penalty={penalty} must be >= 0")
    w = np.full(z.k, 1.0 / z.k)
    c = covariates(z.k, rho).c
    # dividing the penalty by k matches the centered normal-equation form above
    gamma_hat, b_hat, fitted = _core_fit(z.z, c, w, penalty / z.k)
    return RegressionFit(
        gamma_hat=gamma_hat,
        b_hat=b_hat,
        rho_used=rho,
        k=z.k,
        fitted_means=fitted,
        residuals=z.z - fitted,
        penalty=penalty,
    )


def select_ridge_penalty(z: LogSpacings, rho: float) -> RegressionFit:
    """Ridge fit with the penalty chosen from ``RIDGE_PENALTY_FACTORS * k``.

    Each candidate penalty is scored by the asymptotic mean squared error
    proxy evaluated at its own fitted gamma; since the proxy is
    gamma^2 * amse(1, k, rho), the score is gamma_hat^2 times a shared
    constant. Ties go to the smallest penalty.
    """
    rho = _check_fit_args(z, rho)
    unit = asymptotics.amse(1.0, z.k, rho)
    best: RegressionFit | None = None
    best_score = np.inf
    for factor in RIDGE_PENALTY_FACTORS:
        fit = ridge_fit(z, rho, factor * z.k)
        score = fit.gamma_hat**2 * unit
        if score < best_score:
            best = fit
            best_score = score
    assert best is not None
    return best


def bchill(z: LogSpacings, rho: float, b_hat: float, n: int) -> float:
    """Bias-corrected Hill estimate.

    Multiplies the Hill estimate by 1 - (b_hat / (1 - rho)) * (n/k)^rho,
    where b_hat is a slope estimate at the same k (here typically from
    wls_fit) and n is the full sample size.

    Raises:
        InvalidRhoError: rho not finite negative.
        KOutOfRangeError: n < k + 1.
    """
    rho = float(rho)
    if not np.isfinite(rho) or rho >= 0.0:
        raise InvalidRhoError(f"rho={rho} must be finite and < 0")
    n = int(n)
    if n < z.k + 1:
        raise KOutOfRangeError(f"n={n} must be at least k+1={z.k + 1}")
    correction = 1.0 - (float(b_hat) / (1.0 - rho)) * (n / z.k) ** rho
    return hill(z) * correction


def wls_gamma_grid(z_all: np.ndarray, k_values, rhos) -> np.ndarray:
    """WLS tail-index estimates for every (rho, k) pair, shape (len(rhos), len(k_values)).

    ``z_all`` is the full spacings array from :func:`all_log_spacings`;
    prefixes of it are refit for each k. This is the hot path behind the
    min-variance rho selector, so weights and spacing prefixes are reused
    across the rho candidates.
    """
    out = np.empty((len(rhos), len(k_values)))
    for i, k in enumerate(k_values):
        k = int(k)
        w = weights(k).normalized
        zk = z_all[:k]
        for j, rho in enumerate(rhos):
            c = covariates(k, rho).c
            gamma_hat, _, _ = _core_fit(zk, c, w, 0.0)
            out[j, i] = gamma_hat
    return out


def wls_gamma_path(z_all: np.ndarray, k_values, rho: float) -> np.ndarray:
    """WLS estimates along k for one rho; see :func:`wls_gamma_grid`."""
    return wls_gamma_grid(z_all, k_values, (rho,))[0]


def evi_path(
    tail: OrderedTail,
    estimator_id: str,
    rho_method,
    k_min: int,
    k_max: int,
) -> EviPath:
    """Estimates of one estimator for every k in [k_min, k_max].

    The second-order parameter is resolved once from the sample (all
    resolution methods depend only on the sample, not on the current k) and
    reused along the path. HILL ignores rho entirely.

    Args:
        tail: validated descending sample.
        estimator_id: one of ``ESTIMATOR_IDS``.
        rho_method: a ``RhoMethod`` describing how to resolve rho.
        k_min, k_max: inclusive path range, 2 <= k_min <= k_max <= n - 1.

    Raises:
        ValueError: unknown estimator_id.
        KOutOfRangeError: bad path range.
        Errors from rho resolution propagate unchanged.
    """
    from .second_order import resolve_rho

    if estimator_id not in ESTIMATOR_IDS:
        raise ValueError(
            f"unknown estimator {estimator_id!r}; expected one of {ESTIMATOR_IDS}"
        )
    n = tail.n
    k_min, k_max = int(k_min), int(k_max)
    if not 2 <= k_min <= k_max <= n - 1:
        raise KOutOfRangeError(
            f"need 2 <= k_min <= k_max <= n-1, got k_min={k_min}, "
            f"k_max={k_max}, n={n}"
        )
    k_values = np.arange(k_min, k_max + 1)
    z_all = all_log_spacings(tail)

    if estimator_id == "HILL":
        # cumulative means of the spacings give every Hill estimate at once
        csum = np.cumsum(z_all)
        estimates = csum[k_values - 1] / k_values
        return EviPath(
            estimator_id="HILL",
            k_values=k_values,
            estimates=estimates,
            rho_values=np.full(len(k_values), np.nan),
            rho_method_id=rho_method.method_id,
            n=n,
        )

    rho = resolve_rho(tail, rho_method, k_max)
    estimates = np.empty(len(k_values))
    penalties = np.empty(len(k_values)) if estimator_id == "RR" else None
    for i, k in enumerate(k_values):
        z = spacings_prefix(tail, z_all, int(k))
        if estimator_id == "WLS":
            estimates[i] = wls_fit(z, rho).gamma_hat
        elif estimator_id == "LS":
            estimates[i] = ls_fit(z, rho).gamma_hat
        elif estimator_id == "RR":
            fit = select_ridge_penalty(z, rho)
            estimates[i] = fit.gamma_hat
            penalties[i] = fit.penalty
        else:  # BCHILL
            estimates[i] = bchill(z, rho, wls_fit(z, rho).b_hat, n)
    return EviPath(
        estimator_id=estimator_id,
        k_values=k_values,
        estimates=estimates,
        rho_values=np.full(len(k_values), rho),
        rho_method_id=rho_method.method_id,
        n=n,
        penalties=penalties,
    )


def optimal_k(mse_by_k) -> tuple[int, float]:
    """Smallest k attaining the minimal MSE.

    Args:
        mse_by_k: iterable of (k, mse) pairs, mse >= 0.

    Returns:
        (k0, mse at k0); ties broken toward the smallest k.

    Raises:
        EmptyInputError: no pairs given.
    """
    best_k: int | None = None
    best_mse = np.inf
    for k, mse in mse_by_k:
        k = int(k)
        mse = float(mse)
        if mse < best_mse or (mse == best_mse and (best_k is None or k < best_k)):
            best_k, best_mse = k, mse
    if best_k is None:
        raise EmptyInputError("no (k, mse) pairs supplied")
    return best_k, best_mse
