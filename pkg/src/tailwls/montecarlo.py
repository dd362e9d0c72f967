"""Monte Carlo machinery: seeded generators, replication loops, aggregation.

Replication r of a study draws from a PCG64 stream seeded with

    rep_seed(master_seed, r) = master_seed XOR splitmix64(r)

so runs are reproducible, independent of replication order, and cheap to
shard. Two generators are provided: ``sample_model_spacings`` draws spacings
straight from the exponential regression model

    Z_j = (gamma + b * C_j) * f_j,    f_j i.i.d. unit exponential,

while ``run_simulation`` samples full datasets from a distribution spec and
pushes them through the whole pipeline (sort, spacings, rho resolution,
estimation). Aggregates use the population-style divisor (number of
successful replications), so mse = variance + bias^2 holds exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .distributions import DistributionSpec, sample
from .errors import (
    EmptyEstimatorSetError,
    KOutOfRangeError,
    NonPositiveMeanError,
    NonPositiveTrueGammaError,
    TailwlsError,
)
from .estimators import (
    ESTIMATOR_IDS,
    bchill,
    hill,
    ls_fit,
    select_ridge_penalty,
    wls_fit,
)
from .second_order import RhoMethod, resolve_rho
from .spacings import (
    LogSpacings,
    all_log_spacings,
    covariates,
    spacings_prefix,
    validate_and_sort,
)

_MASK64 = (1 << 64) - 1

#: Identifier of the uniform stream recorded in summary metadata.
GENERATOR_ID = "pcg64/splitmix64-xor"


def _splitmix64(x: int) -> int:
    """SplitMix64 finalizer; bijective scramble of a 64-bit integer."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def rep_seed(master_seed: int, r: int) -> int:
    """Derived seed for replication r; distinct r give well-separated seeds."""
    return (int(master_seed) & _MASK64) ^ _splitmix64(int(r))


def sample_model_spacings(
    gamma: float,
    b: float,
    rho: float,
    k: int,
    seed: int,
    noise: np.ndarray | None = None,
) -> LogSpacings:
    """Draw Z_j = (gamma + b C_j) f_j straight from the regression model.

    The noise f_j is unit exponential, computed as -log(1-U) with U drawn
    from the seeded uniform stream (one uniform per spacing). ``noise``
    substitutes a fixed array for f (used in tests to remove randomness).
    The result carries n = k + 1, the smallest sample size consistent with
    k spacings.

    Raises:
        KOutOfRangeError: k < 1.
        InvalidRhoError: rho not finite negative.
        NonPositiveMeanError: some mean gamma + b C_j <= 0.
    """
    k = int(k)
    if k < 1:
        raise KOutOfRangeError(f"k={k} must be at least 1")
    c = covariates(k, rho).c
    means = float(gamma) + float(b) * c
    if not (means > 0.0).all():
        j_bad = int(np.argmin(means)) + 1
        raise NonPositiveMeanError(
            f"mean gamma + b*C_j = {means.min()} at j={j_bad} is not positive"
        )
    if noise is None:
        rng = np.random.Generator(np.random.PCG64(int(seed) & _MASK64))
        f = -np.log1p(-rng.random(k))
    else:
        f = np.asarray(noise, dtype=np.float64)
        if f.shape != (k,):
            raise ValueError(f"noise must have shape ({k},), got {f.shape}")
    return LogSpacings(z=means * f, k=k, n=k + 1)


@dataclass(frozen=True)
class SimulationConfig:
    """Settings for a sampling-based study over a k range."""

    spec: DistributionSpec
    n: int
    reps: int
    k_min: int
    k_max: int
    estimators: tuple[str, ...] = ESTIMATOR_IDS
    rho_method: RhoMethod = field(default_factory=RhoMethod.min_variance)
    master_seed: int = 0

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError(f"reps={self.reps} must be at least 1")
        if not 2 <= self.k_min <= self.k_max <= self.n - 1:
            raise KOutOfRangeError(
                f"need 2 <= k_min <= k_max <= n-1, got k_min={self.k_min}, "
                f"k_max={self.k_max}, n={self.n}"
            )
        _check_estimators(self.estimators)


def _check_estimators(estimators) -> tuple[str, ...]:
    ids = tuple(estimators)
    if len(ids) == 0:
        raise EmptyEstimatorSetError("no estimators requested")
    for e in ids:
        if e not in ESTIMATOR_IDS:
            raise ValueError(
                f"unknown estimator {e!r}; expected one of {ESTIMATOR_IDS}"
            )
    if len(set(ids)) != len(ids):
        raise ValueError(f"duplicate estimator in {ids}")
    return ids


@dataclass(frozen=True)
class SimulationSummary:
    """Aggregated results, one cell per (estimator, k).

    All 2-D arrays are indexed [estimator, k] following ``estimators`` and
    ``k_values``. ``missing[e, i]`` counts replications whose estimate could
    not be computed; aggregates are over the remaining ones. ``metadata``
    echoes the configuration plus timing; nothing in the data arrays depends
    on wall-clock time.
    """

    estimators: tuple[str, ...]
    k_values: np.ndarray
    true_gamma: float
    mean: np.ndarray
    bias: np.ndarray
    mse: np.ndarray
    variance: np.ndarray
    missing: np.ndarray
    metadata: dict

    def cell(self, estimator: str, k: int) -> dict:
        """All aggregates for one (estimator, k) pair."""
        e = self.estimators.index(estimator)
        ks = np.asarray(self.k_values)
        hits = np.nonzero(ks == int(k))[0]
        if len(hits) == 0:
            raise KeyError(f"k={k} not in summary")
        i = int(hits[0])
        return {
            "estimator": estimator,
            "k": int(k),
            "mean": float(self.mean[e, i]),
            "bias": float(self.bias[e, i]),
            "mse": float(self.mse[e, i]),
            "variance": float(self.variance[e, i]),
            "missing": int(self.missing[e, i]),
        }

    def rows(self):
        """Yield cells in reporting order: estimator-major, k ascending."""
        for e, est in enumerate(self.estimators):
            for i, k in enumerate(self.k_values):
                yield {
                    "estimator": est,
                    "k": int(k),
                    "mean": float(self.mean[e, i]),
                    "bias": float(self.bias[e, i]),
                    "mse": float(self.mse[e, i]),
                    "variance": float(self.variance[e, i]),
                    "missing": int(self.missing[e, i]),
                }


def _needs_rho(estimators) -> bool:
    return any(e != "HILL" for e in estimators)


def _evaluate(estimator_id: str, z: LogSpacings, rho, n: int | None) -> float:
    """One estimate; rho may be None only for HILL."""
    if estimator_id == "HILL":
        return hill(z)
    if estimator_id == "WLS":
        return wls_fit(z, rho).gamma_hat
    if estimator_id == "LS":
        return ls_fit(z, rho).gamma_hat
    if estimator_id == "RR":
        return select_ridge_penalty(z, rho).gamma_hat
    # BCHILL: slope estimated by WLS at the same k
    return bchill(z, rho, wls_fit(z, rho).b_hat, n)


def summarize(values: np.ndarray, true_gamma: float) -> dict:
    """Aggregate a (E, K, reps) array with NaN marking failures.

    Means, variances and MSEs are taken over the non-NaN replications of
    each cell with the population divisor, so mse = variance + bias^2
    exactly. A permutation of the replication axis changes nothing beyond
    float roundoff.
    """
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        mean = np.nanmean(values, axis=2)
        variance = np.nanvar(values, axis=2)
        mse = np.nanmean((values - true_gamma) ** 2, axis=2)
    bias = mean - true_gamma
    missing = np.isnan(values).sum(axis=2)
    return {
        "mean": mean,
        "bias": bias,
        "mse": mse,
        "variance": variance,
        "missing": missing,
    }


def run_simulation(config: SimulationConfig) -> SimulationSummary:
    """Full sampling study: draw, sort, resolve rho, estimate, aggregate.

    Each replication draws one sample of size n from the spec, resolves rho
    once (the resolution methods do not depend on k), and evaluates every
    requested estimator at every k in [k_min, k_max]. Failures are recorded
    per cell as missing: a failed draw or sort marks the whole replication,
    a failed rho resolution marks all rho-dependent estimators, a failed
    single fit marks only its own cell.
    """
    t0 = time.perf_counter()
    est_ids = _check_estimators(config.estimators)
    k_values = np.arange(config.k_min, config.k_max + 1)
    values = np.full((len(est_ids), len(k_values), config.reps), np.nan)
    needs_rho = _needs_rho(est_ids)
    for r in range(config.reps):
        seed = rep_seed(config.master_seed, r)
        try:
            tail = validate_and_sort(sample(config.spec, config.n, seed))
            z_all = all_log_spacings(tail)
        except TailwlsError:
            continue
        rho = None
        rho_failed = False
        if needs_rho:
            try:
                rho = resolve_rho(tail, config.rho_method, config.k_max)
            except TailwlsError:
                rho_failed = True
        for i, k in enumerate(k_values):
            z = spacings_prefix(tail, z_all, int(k))
            for e, est in enumerate(est_ids):
                if est != "HILL" and rho_failed:
                    continue
                try:
                    values[e, i, r] = _evaluate(est, z, rho, config.n)
                except TailwlsError:
                    pass
    agg = summarize(values, config.spec.true_gamma)
    metadata = {
        "mode": "sampling",
        "family": config.spec.family,
        "params": dict(config.spec.params),
        "true_gamma": config.spec.true_gamma,
        "true_rho": config.spec.true_rho,
        "n": config.n,
        "reps": config.reps,
        "k_min": config.k_min,
        "k_max": config.k_max,
        "estimators": ",".join(est_ids),
        "rho_method": config.rho_method.method_id,
        "master_seed": config.master_seed,
        "uniform_generator": GENERATOR_ID,
        "package_version": __version__,
        "wall_clock_s": time.perf_counter() - t0,
    }
    return SimulationSummary(
        estimators=est_ids,
        k_values=k_values,
        true_gamma=config.spec.true_gamma,
        metadata=metadata,
        **agg,
    )


def run_model_simulation(
    gamma: float,
    b: float,
    rho: float,
    k: int,
    reps: int,
    estimators=("WLS",),
    master_seed: int = 0,
    n: int | None = None,
) -> SimulationSummary:
    """Study at a single k with spacings drawn straight from the model.

    The true rho is handed to every estimator, so this isolates estimation
    error from rho-resolution error. BCHILL needs a nominal sample size for
    its (n/k)^rho factor, which the pure generator does not have; pass ``n``
    explicitly when requesting it.

    Raises:
        NonPositiveTrueGammaError: gamma <= 0.
        EmptyEstimatorSetError / ValueError: bad estimator set.
        Errors of :func:`sample_model_spacings` for bad (b, rho, k).
    """
    t0 = time.perf_counter()
    gamma = float(gamma)
    if not gamma > 0.0:
        raise NonPositiveTrueGammaError(f"gamma={gamma} must be > 0")
    est_ids = _check_estimators(estimators)
    if "BCHILL" in est_ids and n is None:
        raise ValueError("BCHILL requires the n= argument for its (n/k)^rho factor")
    reps = int(reps)
    if reps < 1:
        raise ValueError(f"reps={reps} must be at least 1")
    values = np.full((len(est_ids), 1, reps), np.nan)
    for r in range(reps):
        z = sample_model_spacings(gamma, b, rho, k, rep_seed(master_seed, r))
        for e, est in enumerate(est_ids):
            try:
                values[e, 0, r] = _evaluate(est, z, rho, n)
            except TailwlsError:
                pass
    agg = summarize(values, gamma)
    metadata = {
        "mode": "model",
        "gamma": gamma,
        "b": float(b),
        "rho": float(rho),
        "k": int(k),
        "reps": reps,
        "estimators": ",".join(est_ids),
        "master_seed": master_seed,
        "uniform_generator": GENERATOR_ID,
        "package_version": __version__,
        "wall_clock_s": time.perf_counter() - t0,
    }
    return SimulationSummary(
        estimators=est_ids,
        k_values=np.array([int(k)]),
        true_gamma=gamma,
        metadata=metadata,
        **agg,
    )
