"""Resolution of the second-order parameter rho.

The covariates C_j = (j/(k+1))^(-rho) need a value of rho before any
regression fit can run. Three ways to get one:

    fixed         the caller supplies a constant,
    moment        the moment-ratio estimator of Fraga Alves, Gomes and
                  de Haan (2003) on the top k1 = floor(n^0.995) excesses,
    min_variance  pick, from a small grid of candidates, the rho whose WLS
                  estimate path is flattest (smallest variance over a wide
                  k window); ties go to the most negative candidate.

All three depend on the sample only, never on the k later used for the fit,
so a resolved value can be reused along a whole estimate path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateTailError,
    GridEmptyError,
    InvalidRhoError,
    KOutOfRangeError,
)
from .spacings import OrderedTail, all_log_spacings

#: Candidate grid for min-variance selection.
DEFAULT_RHO_GRID = (-0.25, -0.5, -0.75, -1.0, -1.5, -2.0, -3.0)

#: The moment-type estimate is clamped into this interval.
MOMENT_RHO_RANGE = (-8.0, -0.05)


@dataclass(frozen=True)
class RhoMethod:
    """How to obtain rho: kind 'fixed', 'moment' or 'minvar'.

    Build instances through the classmethods; the extra fields only matter
    for their respective kinds (fixed_value for 'fixed', tau for 'moment',
    grid and k_fraction for 'minvar').
    """

    kind: str
    fixed_value: float | None = None
    tau: float = 0.0
    grid: tuple[float, ...] = DEFAULT_RHO_GRID
    k_fraction: float = 0.9

    def __post_init__(self):
        if self.kind not in ("fixed", "moment", "minvar"):
            raise ValueError(f"unknown rho method kind {self.kind!r}")
        if self.kind == "fixed":
            v = self.fixed_value
            if v is None or not np.isfinite(v) or not v < 0.0:
                raise InvalidRhoError(f"fixed rho {v} must be finite and < 0")
        if self.kind == "minvar":
            if len(self.grid) == 0:
                raise GridEmptyError("rho candidate grid is empty")
            for g in self.grid:
                if not np.isfinite(g) or not g < 0.0:
                    raise InvalidRhoError(f"grid value {g} must be finite and < 0")
            if not 0.0 < self.k_fraction <= 1.0:
                raise ValueError(f"k_fraction={self.k_fraction} outside (0, 1]")

    @classmethod
    def fixed(cls, value: float) -> "RhoMethod":
        return cls(kind="fixed", fixed_value=float(value))

    @classmethod
    def moment(cls, tau: float = 0.0) -> "RhoMethod":
        return cls(kind="moment", tau=float(tau))

    @classmethod
    def min_variance(
        cls,
        grid=DEFAULT_RHO_GRID,
        k_fraction: float = 0.9,
    ) -> "RhoMethod":
        return cls(kind="minvar", grid=tuple(float(g) for g in grid),
                   k_fraction=float(k_fraction))

    @property
    def method_id(self) -> str:
        if self.kind == "fixed":
            return f"fixed:{self.fixed_value:g}"
        if self.kind == "moment":
            return "moment" if self.tau == 0.0 else f"moment:tau={self.tau:g}"
        return "minvar"


def resolve_rho(tail: OrderedTail, method: RhoMethod, k: int) -> float:
    """Resolve rho for a sample.

    ``k`` is the tail fraction the caller intends to fit with; it is range
    checked here but none of the methods actually depend on it.

    Raises:
        KOutOfRangeError: k outside [1, n-1], or the sample is too small for
            the min-variance window.
        DegenerateTailError: moment method on a tail with no variation.
    """
    n = tail.n
    k = int(k)
    if not 1 <= k <= n - 1:
        raise KOutOfRangeError(f"k={k} outside [1, {n - 1}] for n={n}")
    if method.kind == "fixed":
        return float(method.fixed_value)
    if method.kind == "moment":
        return _moment_rho(tail, method.tau)
    return _min_variance_rho(tail, method.grid, method.k_fraction)


def _moment_rho(tail: OrderedTail, tau: float) -> float:
    """Moment-ratio estimate of rho from the top floor(n^0.995) excesses.

    With M^(i) the i-th empirical moment of log(X_{n-j+1,n} / X_{n-k1,n}),
    the statistic

        T = (M1^tau - (M2/2)^(tau/2)) / ((M2/2)^(tau/2) - (M3/6)^(tau/3))

    (with logs replacing powers at tau = 0) converges to (3(T-1)/(T-3))
    -related limits, giving rho_hat = -|3(T-1)/(T-3)|, clamped into
    MOMENT_RHO_RANGE.
    """
    n = tail.n
    k1 = int(math.floor(n**0.995))
    k1 = min(max(k1, 1), n - 1)
    logs = np.log(tail.values[:k1]) - np.log(tail.values[k1])
    if not logs[0] > 0.0:
        raise DegenerateTailError(
            f"top {k1 + 1} order statistics are all equal"
        )
    m1 = float(np.mean(logs))
    m2 = float(np.mean(logs**2))
    m3 = float(np.mean(logs**3))
    if tau == 0.0:
        num = math.log(m1) - 0.5 * math.log(m2 / 2.0)
        den = 0.5 * math.log(m2 / 2.0) - math.log(m3 / 6.0) / 3.0
    else:
        num = m1**tau - (m2 / 2.0) ** (tau / 2.0)
        den = (m2 / 2.0) ** (tau / 2.0) - (m3 / 6.0) ** (tau / 3.0)
    if den == 0.0:
        raise DegenerateTailError("moment ratio is degenerate (zero denominator)")
    t_stat = num / den
    with np.errstate(divide="ignore", invalid="ignore"):
        raw = 3.0 * (t_stat - 1.0) / (t_stat - 3.0)
    if np.isnan(raw):
        raise DegenerateTailError(f"moment ratio T={t_stat} gives no rho")
    lo, hi = MOMENT_RHO_RANGE
    return float(np.clip(-abs(raw), lo, hi))


def _min_variance_rho(tail: OrderedTail, grid, k_fraction: float) -> float:
    """Grid candidate whose WLS path has the smallest variance.

    The path runs over k in [max(2, ceil(n/10)), floor(k_fraction*(n-1))].
    Ties on the variance go to the most negative candidate, so the result
    does not depend on grid order.
    """
    from .estimators import wls_gamma_grid

    n = tail.n
    lo = max(2, math.ceil(n / 10))
    hi = math.floor(k_fraction * (n - 1))
    if hi < lo:
        raise KOutOfRangeError(
            f"n={n} leaves no k window [{lo}, {hi}] for min-variance selection"
        )
    k_values = np.arange(lo, hi + 1)
    z_all = all_log_spacings(tail)
    gammas = wls_gamma_grid(z_all, k_values, grid)
    variances = gammas.var(axis=1)
    best_rho = None
    best_var = np.inf
    for rho, var in zip(grid, variances):
        if var < best_var or (var == best_var and (best_rho is None or rho < best_rho)):
            best_rho, best_var = rho, var
    return float(best_rho)
