import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thermal_jcm.sampling import (
    MomentStats,
    SampleSeries,
    arcsine_density,
    arcsine_l1_distance,
    build_histogram,
    fit_arcsine_amplitude,
    fit_normal,
    power_law_fit,
    sample_moments,
    sample_series,
    sample_skewness,
    variance_scan,
)
from thermal_jcm.series import BlochVector, ModelParams, TruncationPolicy, evolution_matrix_resonant

FIXED_1000 = TruncationPolicy.fixed(1000)


def test_series_is_l4_for_mixed_start():
    s = sample_series(ModelParams(1.0), BlochVector(0, 0, 0), 0.05, 200)
    m = evolution_matrix_resonant(0.05 * np.arange(200), 1.0)
    np.testing.assert_array_equal(s.values, m.l4)
    assert s.values[0] == pytest.approx(0.0, abs=1e-12)
    assert np.all((s.values >= -1) & (s.values <= 0))


def test_series_deterministic():
    a = sample_series(ModelParams(0.3), delta_t=0.05, n_samples=500)
    b = sample_series(ModelParams(0.3), delta_t=0.05, n_samples=500)
    np.testing.assert_array_equal(a.values, b.values)
    np.testing.assert_array_equal(build_histogram(a, 0.01).counts, build_histogram(b, 0.01).counts)


def test_series_preconditions():
    with pytest.raises(ValueError):
        sample_series(ModelParams(1.0), delta_t=0.0)
    with pytest.raises(ValueError):
        sample_series(ModelParams(1.0), n_samples=0)


def test_histogram_constant_series():
    h = build_histogram(SampleSeries(0.1, np.full(17, -0.3), 1.0), 0.01)
    assert list(h.counts) == [17]


def test_histogram_edges_and_boundaries():
    v = np.array([0.0, 0.1, 0.2, 0.25, 0.3])
    h = build_histogram(v, 0.1)
    np.testing.assert_allclose(np.diff(h.bin_left_edges), 0.1)
    assert h.bin_left_edges[0] == 0.0
    # half-open bins, last one closed: 0.3 lands in the final bin with 0.2, 0.25
    assert list(h.counts) == [1, 1, 3]
    with pytest.raises(ValueError):
        build_histogram(v, 0.0)


@settings(max_examples=100, deadline=None)
@given(
    values=st.lists(st.floats(-1, 0), min_size=1, max_size=300),
    dy=st.floats(1e-4, 0.5),
)
def test_histogram_conserves_counts(values, dy):
    h = build_histogram(np.array(values), dy)
    assert h.total == len(values)
    assert h.bin_left_edges[0] == min(values)
    assert h.bin_left_edges[-1] <= max(values) <= h.bin_left_edges[-1] + dy * (1 + 1e-12)


def test_arcsine_density_values():
    assert arcsine_density(-0.5) == 1.0
    assert arcsine_density(-0.25) == pytest.approx(1.1547005383792517, rel=1e-15)
    assert arcsine_density(-1e-12) > 1e5
    assert arcsine_density(-1 + 1e-12) > 1e5
    for bad in (0.0, -1.0, 0.3):
        with pytest.raises(ValueError):
            arcsine_density(bad)


def _ideal_arcsine_hist(k, dy=0.01):
    edges = -1 + dy * np.arange(int(round(1 / dy)))
    return edges, k * arcsine_density(edges + dy / 2)


def test_arcsine_exact_recovery():
    from thermal_jcm.sampling import Histogram

    edges, counts = _ideal_arcsine_hist(7.25)
    h = Histogram(edges, counts, 0.01)
    assert fit_arcsine_amplitude(h).amplitude == pytest.approx(7.25, rel=1e-14)
    assert fit_arcsine_amplitude(h, exclude_endpoints=True).amplitude == pytest.approx(7.25, rel=1e-14)
    with pytest.raises(ValueError):
        fit_arcsine_amplitude(Histogram(edges[:3], counts[:3], 0.01))


def test_analytic_signal_histogram_converges_to_arcsine():
    # independent of the series: the cold-field limit signal itself
    t = np.arange(400_000) * 0.0173
    y = -0.5 * (1 - np.cos(2 * t))
    h = build_histogram(y, 0.01)
    assert arcsine_l1_distance(h) < 0.05


def test_arcsine_amplitude_scales_with_class_interval():
    s = sample_series(ModelParams(10.0, truncation=FIXED_1000), delta_t=0.05, n_samples=10000)
    a1 = fit_arcsine_amplitude(build_histogram(s, 0.005), exclude_endpoints=True).amplitude
    a2 = fit_arcsine_amplitude(build_histogram(s, 0.010), exclude_endpoints=True).amplitude
    assert a2 / a1 == pytest.approx(2.0, rel=0.05)
    # continuum expectation N dy (2/pi) for a uniformly sampled phase
    assert a1 == pytest.approx(10000 * 0.005 * 2 / math.pi, rel=0.01)


def test_moments_constant_and_definition():
    assert sample_moments(np.full(5, 0.25)) == MomentStats(0.25, 0.0)
    v = np.array([-0.1, -0.4, -0.2, -0.9])
    m = sample_moments(v)
    assert m.mu == pytest.approx(-0.4)
    assert m.sigma2 == pytest.approx(sum((x + 0.4) ** 2 for x in v) / 4)


def test_normal_fit_exact_recovery():
    from thermal_jcm.sampling import Histogram

    mu, s2, amp = -0.3, 0.002, 42.0
    edges = np.linspace(-0.5, -0.1, 81)[:-1]
    centers = edges + 0.0025
    counts = amp * np.exp(-((centers - mu) ** 2) / (2 * s2))
    fit = fit_normal(Histogram(edges, counts, 0.005), MomentStats(mu, s2))
    assert fit.amplitude == pytest.approx(amp, rel=1e-13)
    assert fit.residual < 1e-12
    assert fit.density_scale == pytest.approx(amp * math.sqrt(2 * math.pi * s2))
    with pytest.raises(ValueError):
        fit_normal(Histogram(edges, counts, 0.005), MomentStats(mu, 0.0))


def test_normal_model_fits_cold_histogram_badly():
    s = sample_series(ModelParams(10.0, truncation=FIXED_1000), delta_t=0.05, n_samples=10000)
    h = build_histogram(s, 0.005)
    arc = fit_arcsine_amplitude(h)
    normal = fit_normal(h, sample_moments(s))
    assert normal.residual > 2 * arc.residual


def test_hot_histogram_is_right_skewed():
    s = sample_series(ModelParams(0.01, truncation=FIXED_1000), delta_t=0.05, n_samples=10000)
    # reported, not thresholded beyond its sign
    assert sample_skewness(s) > 0


def test_variance_scan_cold_limit_and_validation():
    scan = variance_scan([10.0], ModelParams(1.0, truncation=FIXED_1000))
    # variance of -(1 - cos 2t)/2 over a uniform phase is 1/8
    assert scan[0][1].sigma2 == pytest.approx(1 / 8, rel=0.1)
    with pytest.raises(ValueError):
        variance_scan([], ModelParams(1.0))
    with pytest.raises(ValueError):
        variance_scan([0.0, 1.0], ModelParams(1.0))


def test_variance_scan_threads_match_serial():
    p = ModelParams(1.0, truncation=TruncationPolicy.fixed(200))
    grid = [0.5, 1.0, 2.0]
    a = variance_scan(grid, p, n_samples=500)
    b = variance_scan(grid, p, n_samples=500, workers=3)
    assert a == b


def test_power_law_exact_recovery():
    betas = np.logspace(-2, -1, 7)
    scan = [(b, MomentStats(0.0, 0.03 * b**2.7)) for b in betas]
    fit = power_law_fit(scan, (0.01, 0.1))
    assert fit.c1 == pytest.approx(0.03, rel=1e-10)
    assert fit.c2 == pytest.approx(2.7, rel=1e-12)
    assert fit.residual < 1e-12
    with pytest.raises(ValueError):
        power_law_fit(scan[:2], (0.01, 0.1))
    with pytest.raises(ValueError):
        power_law_fit([(b, MomentStats(0.0, 0.0)) for b in betas], (0.01, 0.1))


def test_power_law_worse_at_large_beta():
    p = ModelParams(1.0, truncation=FIXED_1000)
    small = variance_scan(np.logspace(-2, -1, 5), p)
    large = variance_scan(np.logspace(0, 1, 5), p)
    assert power_law_fit(large, (1, 10)).residual > power_law_fit(small, (0.01, 0.1)).residual
