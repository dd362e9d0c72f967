"""Weight-moment sums, asymptotic MSE, and normality diagnostics for WLS.

The normalized weights w_j and covariates C_j define four sums that control
the large-k behaviour of the WLS estimator:

    S1     = sum w_j C_j              -> 2 / ((1-rho)(2-rho))
    S2     = sum w_j C_j^2 - S1^2     -> rho^2 (5-rho) /
                                          ((1-2 rho)(1-rho)^2 (2-rho)^2)
    S_dot  = sum w_j^2 (S1 - C_j)     -> 0
    S_ddot = sum w_j^2 (S1 - C_j)^2   -> 0

The standardized statistic sqrt(3k) (gamma_hat - gamma) / (2 gamma) is
asymptotically standard normal, i.e. the limiting variance of gamma_hat is
4 gamma^2 / (3k).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvalidRhoError,
    KOutOfRangeError,
    KTooSmallError,
    NonPositiveTrueGammaError,
)
from .spacings import covariates, weights


def s1_limit(rho: float) -> float:
    """Large-k limit of S1."""
    return 2.0 / ((1.0 - rho) * (2.0 - rho))


def s2_limit(rho: float) -> float:
    """Large-k limit of S2."""
    return (
        rho**2
        * (5.0 - rho)
        / ((1.0 - 2.0 * rho) * (1.0 - rho) ** 2 * (2.0 - rho) ** 2)
    )


@dataclass(frozen=True)
class SMoments:
    """The four weight-moment sums at a finite k, plus their limits."""

    k: int
    rho: float
    s1: float
    s2: float
    s_dot: float
    s_ddot: float

    @property
    def s1_limit(self) -> float:
        return s1_limit(self.rho)

    @property
    def s2_limit(self) -> float:
        return s2_limit(self.rho)


@dataclass(frozen=True)
class NormalityReport:
    """Empirical moments of the standardized WLS statistic over many runs."""

    sample_mean: float
    sample_variance: float
    skewness: float
    excess_kurtosis: float
    reps: int
    k: int
    config: dict = field(default_factory=dict)


def s_moments(k: int, rho: float) -> SMoments:
    """Compute S1, S2, S_dot, S_ddot at a finite k.

    Raises:
        KTooSmallError: k < 2 (S2 degenerates to 0 at k=1).
        InvalidRhoError: rho not finite negative.
    """
    k = int(k)
    if k < 2:
        raise KTooSmallError(f"weight moments need k >= 2, got k={k}")
    rho = float(rho)
    if not np.isfinite(rho) or rho >= 0.0:
        raise InvalidRhoError(f"rho={rho} must be finite and < 0")
    w = weights(k).normalized
    c = covariates(k, rho).c
    s1 = float(w @ c)
    s2 = float(w @ (c * c)) - s1 * s1
    d = s1 - c
    wsq = w * w
    s_dot = float(wsq @ d)
    s_ddot = float(wsq @ (d * d))
    return SMoments(k=k, rho=rho, s1=s1, s2=s2, s_dot=s_dot, s_ddot=s_ddot)


def amse(gamma: float, k: int, rho: float, cross_coeff: float = 2.0) -> float:
    """Asymptotic mean squared error approximation for the WLS estimator.

        gamma^2 * (4/(3k) + cross_coeff * S1 S_dot / S2 + S1^2 S_ddot / S2^2)

    ``cross_coeff`` defaults to 2 (the value the term-by-term expansion
    yields); pass 4 for the alternative constant seen in some displays of
    this formula. Errors as :func:`s_moments`.
    """
    m = s_moments(k, rho)
    return float(gamma) ** 2 * (
        4.0 / (3.0 * m.k)
        + cross_coeff * m.s1 * m.s_dot / m.s2
        + m.s1**2 * m.s_ddot / m.s2**2
    )


def standardized_statistic(gamma_hat: float, gamma_true: float, k: int) -> float:
    """sqrt(3k) (gamma_hat - gamma_true) / (2 gamma_true).

    Raises:
        NonPositiveTrueGammaError: gamma_true <= 0.
        KOutOfRangeError: k < 1.
    """
    gamma_true = float(gamma_true)
    if not gamma_true > 0.0:
        raise NonPositiveTrueGammaError(f"gamma_true={gamma_true} must be > 0")
    k = int(k)
    if k < 1:
        raise KOutOfRangeError(f"k={k} must be at least 1")
    return np.sqrt(3.0 * k) * (float(gamma_hat) - gamma_true) / (2.0 * gamma_true)


def normality_report(
    reps: int,
    k: int,
    master_seed: int = 0,
    *,
    gamma: float | None = None,
    b: float = 0.0,
    rho: float = -1.0,
    spec=None,
    n: int | None = None,
    rho_method=None,
) -> NormalityReport:
    """Moments of the standardized WLS statistic under repeated sampling.

    Two generation modes share the signature. With ``spec`` None the spacings
    come straight from the exponential regression model with parameters
    (gamma, b, rho), which must then include gamma > 0. With ``spec`` set to a
    DistributionSpec, full samples of size ``n`` are drawn and the top k
    order statistics are kept; rho is then resolved by ``rho_method``
    (default: the spec's true rho when finite negative, else -1).

    Args:
        reps: number of replications, at least 100.
        k: tail fraction used by every fit.
        master_seed: base seed; replication r uses a derived stream.

    Returns:
        NormalityReport with mean, variance, skewness, excess kurtosis of the
        statistic and an echo of the generation settings.
    """
    from .estimators import wls_fit
    from .montecarlo import rep_seed, sample_model_spacings
    from .second_order import RhoMethod, resolve_rho
    from .spacings import log_spacings, validate_and_sort

    reps = int(reps)
    if reps < 100:
        raise ValueError(f"reps={reps}; need at least 100 for stable moments")
    k = int(k)
    stats = np.empty(reps)
    t0 = time.perf_counter()
    if spec is None:
        if gamma is None or not float(gamma) > 0.0:
            raise NonPositiveTrueGammaError(
                f"model mode needs gamma > 0, got {gamma}"
            )
        gamma = float(gamma)
        for r in range(reps):
            z = sample_model_spacings(gamma, b, rho, k, rep_seed(master_seed, r))
            stats[r] = standardized_statistic(wls_fit(z, rho).gamma_hat, gamma, k)
        config = {
            "mode": "model",
            "gamma": gamma,
            "b": float(b),
            "rho": float(rho),
            "master_seed": int(master_seed),
        }
    else:
        if n is None or int(n) < k + 1:
            raise KOutOfRangeError(f"sampling mode needs n >= k+1, got n={n}")
        n = int(n)
        if rho_method is None:
            fallback = spec.true_rho if np.isfinite(spec.true_rho) else -1.0
            rho_method = RhoMethod.fixed(fallback)
        from .distributions import sample

        for r in range(reps):
            tail = validate_and_sort(sample(spec, n, rep_seed(master_seed, r)))
            rho_r = resolve_rho(tail, rho_method, k)
            fit = wls_fit(log_spacings(tail, k), rho_r)
            stats[r] = standardized_statistic(fit.gamma_hat, spec.true_gamma, k)
        config = {
            "mode": "sampling",
            "family": spec.family,
            "params": dict(spec.params),
            "n": n,
            "rho_method": rho_method.method_id,
            "master_seed": int(master_seed),
        }
    config["wall_clock_s"] = time.perf_counter() - t0

    mean = float(np.mean(stats))
    centered = stats - mean
    m2 = float(np.mean(centered**2))
    m3 = float(np.mean(centered**3))
    m4 = float(np.mean(centered**4))
    return NormalityReport(
        sample_mean=mean,
        sample_variance=m2,
        skewness=m3 / m2**1.5,
        excess_kurtosis=m4 / m2**2 - 3.0,
        reps=reps,
        k=k,
        config=config,
    )
