"""Order statistics, weighted log-spacings, weights and covariates.

Everything downstream works on the same ingredients: a positive sample sorted
in descending order, the scaled log-ratios of consecutive upper order
statistics

    Z_j = j * log(X_{n-j+1,n} / X_{n-j,n}),    j = 1, ..., k,

the linearly decreasing weights W_j = 1 - j/(k+1) (which sum to k/2 exactly),
and the second-order covariates C_j = (j/(k+1))^(-rho) with rho < 0. This
module builds those four objects and nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyOrTinyError,
    InvalidRhoError,
    KOutOfRangeError,
    NonFiniteError,
    NonPositiveError,
)


def _readonly(a: np.ndarray) -> np.ndarray:
    """Return a C-contiguous float64 copy with the writeable flag cleared."""
    out = np.ascontiguousarray(a, dtype=np.float64)
    if out is a:
        out = out.copy()
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class OrderedTail:
    """A strictly positive sample stored in descending order.

    ``values[0]`` is the sample maximum, ``values[n-1]`` the minimum. The
    array is read-only; build instances through :func:`validate_and_sort`.
    """

    values: np.ndarray

    @property
    def n(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class LogSpacings:
    """Scaled log-spacings Z_1..Z_k of the top k+1 order statistics.

    Attributes
    ----------
    z : np.ndarray
        The k nonnegative spacings, index j-1 holding Z_j.
    k : int
        Number of spacings, 1 <= k <= n - 1.
    n : int
        Size of the originating sample.
    """

    z: np.ndarray
    k: int
    n: int


@dataclass(frozen=True)
class WeightScheme:
    """Linearly decreasing weights W_j = 1 - j/(k+1) and their unit-sum form.

    ``raw`` sums to k/2 in closed form; ``normalized`` is raw divided by that
    exact constant, so it sums to one without accumulating a float total.
    """

    raw: np.ndarray
    normalized: np.ndarray

    @property
    def k(self) -> int:
        return int(self.raw.size)


@dataclass(frozen=True)
class Covariates:
    """Regression covariates C_j = (j/(k+1))^(-rho) for a fixed rho < 0.

    The C_j increase from near zero toward one as j runs from 1 to k, and
    they live in (0, 1) for every admissible rho.
    """

    c: np.ndarray
    rho: float

    @property
    def k(self) -> int:
        return int(self.c.size)


def validate_and_sort(raw_sample) -> OrderedTail:
    """Validate a raw sample and return it sorted in descending order.

    Args:
        raw_sample: array-like of sample values; flattened to 1-D.

    Returns:
        OrderedTail with a read-only descending float64 array.

    Raises:
        EmptyOrTinyError: fewer than two values.
        NonFiniteError: a NaN or infinity is present (first index reported).
        NonPositiveError: a value <= 0 is present (first index reported).
    """
    arr = np.asarray(raw_sample, dtype=np.float64).ravel()
    if arr.size < 2:
        raise EmptyOrTinyError(
            f"need at least two sample values, got {arr.size}"
        )
    bad = ~np.isfinite(arr)
    if bad.any():
        i = int(np.argmax(bad))
        raise NonFiniteError(f"non-finite value {arr[i]} at index {i}")
    nonpos = arr <= 0.0
    if nonpos.any():
        i = int(np.argmax(nonpos))
        raise NonPositiveError(f"non-positive value {arr[i]} at index {i}")
    return OrderedTail(values=_readonly(np.sort(arr)[::-1]))


def log_spacings(tail: OrderedTail, k: int) -> LogSpacings:
    """Compute Z_j = j * log(values[j-1] / values[j]) for j = 1..k.

    With the sample in descending order, values[j-1] is X_{n-j+1,n}, so the
    ratio matches the classical definition. Ties between consecutive order
    statistics give exact zeros.

    Args:
        tail: validated descending sample.
        k: number of spacings, 1 <= k <= tail.n - 1.

    Returns:
        LogSpacings over the top k+1 order statistics.

    Raises:
        KOutOfRangeError: k outside [1, n-1].
    """
    n = tail.n
    k = int(k)
    if not 1 <= k <= n - 1:
        raise KOutOfRangeError(f"k={k} outside [1, {n - 1}] for n={n}")
    logs = np.log(tail.values[: k + 1])
    j = np.arange(1, k + 1, dtype=np.float64)
    z = j * (logs[:-1] - logs[1:])
    return LogSpacings(z=_readonly(z), k=k, n=n)


def all_log_spacings(tail: OrderedTail) -> np.ndarray:
    """All spacings Z_1..Z_{n-1} in one pass.

    The Z_j do not depend on k, so ``log_spacings(tail, k).z`` equals the
    first k entries of this array. Path computations use the prefixes
    instead of recomputing logs per k.
    """
    logs = np.log(tail.values)
    j = np.arange(1, tail.n, dtype=np.float64)
    return _readonly(j * (logs[:-1] - logs[1:]))


def spacings_prefix(tail: OrderedTail, z_all: np.ndarray, k: int) -> LogSpacings:
    """View the first k entries of a precomputed spacings array as LogSpacings."""
    n = tail.n
    if not 1 <= k <= n - 1:
        raise KOutOfRangeError(f"k={k} outside [1, {n - 1}] for n={n}")
    return LogSpacings(z=z_all[:k], k=int(k), n=n)


def weights(k: int) -> WeightScheme:
    """Weight scheme W_j = 1 - j/(k+1), j = 1..k.

    Raises:
        KOutOfRangeError: k < 1.
    """
    k = int(k)
    if k < 1:
        raise KOutOfRangeError(f"k={k} must be at least 1")
    j = np.arange(1, k + 1, dtype=np.float64)
    raw = 1.0 - j / (k + 1.0)
    normalized = raw / (k / 2.0)
    return WeightScheme(raw=_readonly(raw), normalized=_readonly(normalized))


def covariates(k: int, rho: float) -> Covariates:
    """Covariates C_j = (j/(k+1))^(-rho), j = 1..k, for finite rho < 0.

    Raises:
        KOutOfRangeError: k < 1.
        InvalidRhoError: rho is not finite or not strictly negative.
    """
    k = int(k)
    if k < 1:
        raise KOutOfRangeError(f"k={k} must be at least 1")
    rho = float(rho)
    if not np.isfinite(rho) or rho >= 0.0:
        raise InvalidRhoError(f"rho={rho} must be finite and < 0")
    j = np.arange(1, k + 1, dtype=np.float64)
    c = (j / (k + 1.0)) ** (-rho)
    return Covariates(c=_readonly(c), rho=rho)
