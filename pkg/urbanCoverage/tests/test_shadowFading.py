import numpy as np
import pytest
from urbanCoverage.grid.grid import GridSpec, build_grid
from urbanCoverage.stats.shadowFading import (FadingSpec, draw_iid, correlated_field, FieldShadows, DropShadows,
                                              NoShadows)
from urbanCoverage.util import ConfigurationError, DomainError


def test_iid_draws():
    draws = draw_iid(7.1, np.random.default_rng(1), size=200000)
    assert draws.std() == pytest.approx(7.1, rel=0.01)
    assert abs(draws.mean()) < 0.05
    assert np.array_equal(draws, draw_iid(7.1, np.random.default_rng(1), size=200000))
    assert np.all(draw_iid(0.0, np.random.default_rng(1), size=10) == 0)


def test_iid_draws_with_per_point_sigma():
    sigma = np.array([0.0, 4.4, 6.5])
    draws = draw_iid(sigma, np.random.default_rng(3))
    assert draws.shape == (3,)
    assert draws[0] == 0.0


def test_field_marginal_statistics():
    field = correlated_field((400, 400), 7.1, 37.0, np.random.default_rng(11))
    assert field.shape == (400, 400)
    assert field.std() == pytest.approx(7.1, rel=1e-6)
    assert abs(field.mean()) < 1e-9


def lagged_correlation(field, lag, axis):
    f = field - field.mean()
    if axis == 1:
        return np.mean(f[:, :-lag] * f[:, lag:]) / np.mean(f * f)
    return np.mean(f[:-lag, :] * f[lag:, :]) / np.mean(f * f)


def test_field_autocorrelation_is_exponential():
    field = correlated_field((800, 800), 1.0, 10.0, np.random.default_rng(2024))
    for axis in (0, 1):
        assert lagged_correlation(field, 10, axis) == pytest.approx(np.exp(-1), abs=0.1)
        assert lagged_correlation(field, 1, axis) > lagged_correlation(field, 10, axis)
        assert abs(lagged_correlation(field, 60, axis)) < 0.1


def test_field_autocorrelation_at_the_los_correlation_distance():
    d_corr = FadingSpec().dcorr_los_m
    correlations = []
    for seed in range(4):
        field = correlated_field((800, 800), 7.1, d_corr, np.random.default_rng(seed))
        correlations.extend(lagged_correlation(field, int(d_corr), axis) for axis in (0, 1))
    assert np.mean(correlations) == pytest.approx(np.exp(-1), abs=0.1)


def test_field_is_deterministic():
    a = correlated_field((100, 120), 6.5, 10.0, np.random.default_rng(9))
    b = correlated_field((100, 120), 6.5, 10.0, np.random.default_rng(9))
    c = correlated_field((100, 120), 6.5, 10.0, np.random.default_rng(10))
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_field_correlation_below_resolution():
    with pytest.raises(DomainError):
        correlated_field((10, 10), 1.0, 0.5, np.random.default_rng(0))


def test_zero_sigma_field():
    assert np.all(correlated_field((10, 10), 0.0, 10.0, np.random.default_rng(0)) == 0)


def test_field_layers_do_not_depend_on_generation_order():
    world = build_grid(GridSpec(width_m=200, height_m=100))
    fading = FadingSpec()
    first = FieldShadows(world, fading, np.random.SeedSequence(4), 2)
    second = FieldShadows(world, fading, np.random.SeedSequence(4), 2)
    late = second.layers(1)
    early = first.layers(1)
    second.layers(0)
    for a, b in zip(early, late):
        assert np.array_equal(a, b)


def test_field_shadows_sample_the_layers_at_points():
    world = build_grid(GridSpec(width_m=200, height_m=100))
    shadows = FieldShadows(world, FadingSpec(), np.random.SeedSequence(4), 1)
    los, nlos, indoor = shadows.layers(0)
    accessor = shadows.for_bs(0)
    values = accessor.street(np.array([True, False]), np.array([3.0, 3.0]), np.array([7.0, 7.0]))
    assert values[0] == los[7, 3] and values[1] == nlos[7, 3]
    assert accessor.indoor(np.array([2.0]), np.array([20.0]), np.array([10.0]))[0] == 2.0 * indoor[10, 20]


def test_drop_shadows_draw_fresh_values():
    accessor = DropShadows(np.random.default_rng(0), FadingSpec()).for_bs(0)
    los = np.ones(1000, dtype=bool)
    a = accessor.street(los, None, None)
    b = accessor.street(los, None, None)
    assert not np.array_equal(a, b)
    assert a.std() == pytest.approx(7.1, rel=0.1)


def test_no_shadows():
    accessor = NoShadows().for_bs(3)
    assert np.all(accessor.street(np.ones(4, dtype=bool), None, None) == 0)


def test_fading_spec_validation():
    with pytest.raises(ConfigurationError):
        FadingSpec(sigma_los_db=-1)
    with pytest.raises(ConfigurationError):
        FadingSpec(dcorr_nlos_m=0)
