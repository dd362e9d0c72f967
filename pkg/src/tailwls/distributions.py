"""Heavy-tailed sampling distributions with known tail parameters.

Four Pareto-type families used throughout the simulation layer. Each spec
records the true tail index ``true_gamma`` and the true second-order
parameter ``true_rho`` implied by its parameters:

    pareto(gamma)        quantile (1-u)^(-gamma)          rho: none (-inf)
    burr(eta, tau, lam)  eta*((1-u)^(-1/lam) - 1)^(1/tau) gamma = 1/(lam*tau),
                                                          rho = -1/lam
    frechet(alpha)       (-log u)^(-1/alpha)              gamma = 1/alpha,
                                                          rho = -1
    loggamma(lam, alpha) exp of Gamma(alpha, rate lam)    gamma = 1/lam,
                                                          rho = 0

The strict Pareto tail has no second-order term at all, recorded as
``true_rho = -inf``. The log-gamma family sits at the boundary rho = 0 where
the regression model is misspecified; it is included for exactly that reason.
Sampling is inverse-transform with one uniform per draw, so a seed fixes the
sample bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import NonPositiveError, UOutOfRangeError

FAMILIES = ("pareto", "burr", "frechet", "loggamma")


@dataclass(frozen=True)
class DistributionSpec:
    """One member of a supported family, with its true tail parameters."""

    family: str
    params: dict
    true_gamma: float
    true_rho: float


def _require_positive(name: str, value: float) -> float:
    value = float(value)
    if not value > 0.0:
        raise NonPositiveError(f"{name}={value} must be > 0")
    return value


def pareto(gamma: float) -> DistributionSpec:
    """Strict Pareto with survival function x^(-1/gamma) on [1, inf)."""
    gamma = _require_positive("gamma", gamma)
    return DistributionSpec(
        family="pareto",
        params={"gamma": gamma},
        true_gamma=gamma,
        true_rho=-np.inf,
    )


def burr(eta: float, tau: float, lam: float) -> DistributionSpec:
    """Burr(eta, tau, lam): 1 - F(x) = (1 + (x/eta)^tau)^(-lam) on (0, inf)."""
    eta = _require_positive("eta", eta)
    tau = _require_positive("tau", tau)
    lam = _require_positive("lam", lam)
    return DistributionSpec(
        family="burr",
        params={"eta": eta, "tau": tau, "lam": lam},
        true_gamma=1.0 / (lam * tau),
        true_rho=-1.0 / lam,
    )


def frechet(alpha: float) -> DistributionSpec:
    """Frechet with F(x) = exp(-x^(-alpha)) on (0, inf)."""
    alpha = _require_positive("alpha", alpha)
    return DistributionSpec(
        family="frechet",
        params={"alpha": alpha},
        true_gamma=1.0 / alpha,
        true_rho=-1.0,
    )


def loggamma(lam: float, alpha: float) -> DistributionSpec:
    """exp(G) with G ~ Gamma(shape alpha, rate lam); support [1, inf)."""
    lam = _require_positive("lam", lam)
    alpha = _require_positive("alpha", alpha)
    return DistributionSpec(
        family="loggamma",
        params={"lam": lam, "alpha": alpha},
        true_gamma=1.0 / lam,
        true_rho=0.0,
    )


def _check_u(u) -> np.ndarray:
    arr = np.asarray(u, dtype=np.float64)
    bad = ~((arr >= 0.0) & (arr < 1.0))
    if bad.any():
        val = arr[bad].ravel()[0] if arr.ndim else float(arr)
        raise UOutOfRangeError(f"quantile argument {val} outside [0, 1)")
    return arr


def quantile(spec: DistributionSpec, u):
    """Quantile function Q(u) = F^{-1}(u); scalar in, scalar out.

    Accepts scalars or arrays with entries in [0, 1). Q(0) is the lower
    endpoint of the support by continuity.

    Raises:
        UOutOfRangeError: some u outside [0, 1).
    """
    arr = _check_u(u)
    p = spec.params
    if spec.family == "pareto":
        x = (1.0 - arr) ** (-p["gamma"])
    elif spec.family == "burr":
        x = p["eta"] * ((1.0 - arr) ** (-1.0 / p["lam"]) - 1.0) ** (1.0 / p["tau"])
    elif spec.family == "frechet":
        with np.errstate(divide="ignore"):
            x = (-np.log(arr)) ** (-1.0 / p["alpha"])
    elif spec.family == "loggamma":
        x = np.exp(special.gammaincinv(p["alpha"], arr) / p["lam"])
    else:
        raise ValueError(f"unknown family {spec.family!r}")
    return float(x) if np.ndim(u) == 0 else x


def cdf(spec: DistributionSpec, x):
    """Distribution function F(x); scalar in, scalar out.

    Defined on the whole real line, with F = 0 left of the support.
    """
    arr = np.asarray(x, dtype=np.float64)
    p = spec.params
    out = np.zeros_like(arr)
    if spec.family == "pareto":
        inside = arr > 1.0
        out[inside] = 1.0 - arr[inside] ** (-1.0 / p["gamma"])
    elif spec.family == "burr":
        inside = arr > 0.0
        out[inside] = 1.0 - (1.0 + (arr[inside] / p["eta"]) ** p["tau"]) ** (-p["lam"])
    elif spec.family == "frechet":
        inside = arr > 0.0
        out[inside] = np.exp(-arr[inside] ** (-p["alpha"]))
    elif spec.family == "loggamma":
        inside = arr > 1.0
        out[inside] = special.gammainc(p["alpha"], p["lam"] * np.log(arr[inside]))
    else:
        raise ValueError(f"unknown family {spec.family!r}")
    return float(out) if np.ndim(x) == 0 else out


def sample(spec: DistributionSpec, n: int, seed: int) -> np.ndarray:
    """Draw n values by inverse transform, one uniform per draw.

    The same (spec, n, seed) always yields the same array; the stream is a
    PCG64 generator seeded with ``seed``.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"n={n} must be at least 1")
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    return quantile(spec, rng.random(n))
