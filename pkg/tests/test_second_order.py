import numpy as np
import pytest

from tailwls import (
    DEFAULT_RHO_GRID,
    DegenerateTailError,
    GridEmptyError,
    InvalidRhoError,
    KOutOfRangeError,
    MOMENT_RHO_RANGE,
    RhoMethod,
    burr,
    pareto,
    rep_seed,
    resolve_rho,
    sample,
    validate_and_sort,
)


def _burr_tail(n, seed, tau=None, lam=None):
    tau = np.sqrt(2.0) if tau is None else tau
    lam = np.sqrt(2.0) if lam is None else lam
    return validate_and_sort(sample(burr(1.0, tau, lam), n, seed))


class TestRhoMethod:
    def test_fixed_validation(self):
        m = RhoMethod.fixed(-1.0)
        assert m.method_id == "fixed:-1"
        for bad in (0.0, 0.5, -np.inf, np.nan):
            with pytest.raises(InvalidRhoError):
                RhoMethod.fixed(bad)

    def test_moment_ids(self):
        assert RhoMethod.moment().method_id == "moment"
        assert RhoMethod.moment(tau=0.5).method_id == "moment:tau=0.5"

    def test_minvar_validation(self):
        assert RhoMethod.min_variance().grid == DEFAULT_RHO_GRID
        with pytest.raises(GridEmptyError):
            RhoMethod.min_variance(grid=())
        with pytest.raises(InvalidRhoError):
            RhoMethod.min_variance(grid=(-1.0, 0.5))
        with pytest.raises(ValueError):
            RhoMethod.min_variance(k_fraction=0.0)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            RhoMethod(kind="guess")


def test_resolve_fixed_and_k_range():
    tail = _burr_tail(50, 1)
    assert resolve_rho(tail, RhoMethod.fixed(-1.5), 10) == -1.5
    with pytest.raises(KOutOfRangeError):
        resolve_rho(tail, RhoMethod.fixed(-1.5), 0)
    with pytest.raises(KOutOfRangeError):
        resolve_rho(tail, RhoMethod.fixed(-1.5), 50)


def test_resolution_does_not_depend_on_k():
    tail = _burr_tail(300, 2)
    for method in (RhoMethod.moment(), RhoMethod.min_variance()):
        assert resolve_rho(tail, method, 5) == resolve_rho(tail, method, 250)


def test_moment_median_near_true_rho():
    """Median moment-type estimate over 100 Burr samples lands near -1/lam."""
    true_rho = -1.0 / np.sqrt(2.0)
    vals = [
        resolve_rho(_burr_tail(1000, rep_seed(1234, r)), RhoMethod.moment(), 500)
        for r in range(100)
    ]
    assert abs(np.median(vals) - true_rho) < 0.25


def test_moment_stays_clamped():
    lo, hi = MOMENT_RHO_RANGE
    for r in range(30):
        tail = validate_and_sort(sample(pareto(1.0), 400, rep_seed(55, r)))
        rho = resolve_rho(tail, RhoMethod.moment(), 100)
        assert lo <= rho <= hi


def test_moment_nonzero_tau_runs():
    tail = _burr_tail(800, 3)
    rho = resolve_rho(tail, RhoMethod.moment(tau=0.5), 100)
    assert -8.0 <= rho <= -0.05


def test_moment_degenerate_tail():
    tail = validate_and_sort(np.full(50, 7.0))
    with pytest.raises(DegenerateTailError):
        resolve_rho(tail, RhoMethod.moment(), 10)


def test_minvar_returns_grid_element_deterministically():
    tail = _burr_tail(200, 4)
    a = resolve_rho(tail, RhoMethod.min_variance(), 100)
    b = resolve_rho(tail, RhoMethod.min_variance(), 100)
    assert a == b
    assert a in DEFAULT_RHO_GRID


def test_minvar_grid_order_does_not_matter():
    tail = _burr_tail(150, 5)
    fwd = resolve_rho(tail, RhoMethod.min_variance(grid=DEFAULT_RHO_GRID), 50)
    rev = resolve_rho(
        tail, RhoMethod.min_variance(grid=tuple(reversed(DEFAULT_RHO_GRID))), 50
    )
    assert fwd == rev


def test_minvar_single_candidate():
    tail = _burr_tail(80, 6)
    assert resolve_rho(tail, RhoMethod.min_variance(grid=(-0.9,)), 30) == -0.9


def test_minvar_tiny_sample():
    tail = validate_and_sort([3.0, 2.0, 1.0])
    with pytest.raises(KOutOfRangeError):
        resolve_rho(tail, RhoMethod.min_variance(), 2)
