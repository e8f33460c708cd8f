import math

import numpy as np
import pytest
from scipy import special, stats

from core.analytic import sir_cdf
from core.errors import ArgumentError
from core.stats import (
    KsResult,
    SirReference,
    empirical_cdf,
    kolmogorov_sf,
    ks_test,
    spearman_rho,
)


def uniform_cdf(x):
    return np.clip(x, 0.0, 1.0)


# ── Empirical CDF ─────────────────────────────────────────────────────────────


def test_empirical_cdf_steps():
    ecdf = empirical_cdf([3.0, 1.0, 2.0, 2.0])
    assert ecdf.n == 4
    assert ecdf(0.5) == 0.0
    assert ecdf(1.0) == 0.25
    assert ecdf(2.0) == 0.75
    assert ecdf(10.0) == 1.0
    np.testing.assert_array_equal(ecdf(np.array([1.5, 3.0])), [0.25, 1.0])


@pytest.mark.parametrize("samples", [[], [1.0, math.nan]])
def test_empirical_cdf_rejects_bad_samples(samples):
    with pytest.raises(ArgumentError):
        empirical_cdf(samples)


# ── Kolmogorov distribution ───────────────────────────────────────────────────


def test_kolmogorov_sf_matches_scipy():
    for lam in np.linspace(0.2, 3.0, 57):
        assert kolmogorov_sf(lam) == pytest.approx(special.kolmogorov(lam), abs=1e-10)


def test_kolmogorov_sf_edges():
    assert kolmogorov_sf(0.0) == 1.0
    assert kolmogorov_sf(-1.0) == 1.0
    assert kolmogorov_sf(0.05) == pytest.approx(1.0, abs=1e-12)
    assert kolmogorov_sf(10.0) == pytest.approx(0.0, abs=1e-12)


def test_kolmogorov_sf_is_continuous_across_branches():
    below = kolmogorov_sf(1.18 - 1e-9)
    above = kolmogorov_sf(1.18)
    assert below == pytest.approx(above, abs=1e-9)


def test_kolmogorov_sf_is_monotone():
    values = [kolmogorov_sf(lam) for lam in np.linspace(0.1, 3.0, 200)]
    assert np.all(np.diff(values) <= 1e-15)


# ── One-sample K-S test ───────────────────────────────────────────────────────


def test_ks_statistic_matches_scipy(rng):
    samples = rng.uniform(size=500)
    result = ks_test(empirical_cdf(samples), uniform_cdf)
    expected = stats.kstest(samples, "uniform")
    assert result.statistic == pytest.approx(expected.statistic, rel=1e-12)
    assert result.n == 500


def test_ks_point_mass_is_rejected():
    result = ks_test(empirical_cdf(np.full(50, 5.0)), lambda x: np.zeros_like(x))
    assert result.statistic == 1.0
    assert result.p_value == pytest.approx(0.0, abs=1e-12)
    assert not result.passes(0.10)


def test_ks_passes_uses_the_level():
    result = KsResult(statistic=0.01, p_value=0.2, n=100)
    assert result.passes(0.10)
    assert not result.passes(0.25)


def test_ks_false_rejection_rate_under_the_null(rng):
    rejected = 0
    for _ in range(1000):
        result = ks_test(empirical_cdf(rng.uniform(size=1000)), uniform_cdf)
        rejected += not result.passes(0.10)
    assert rejected / 1000 == pytest.approx(0.10, abs=0.03)


def test_ks_is_invariant_under_monotone_maps(rng):
    samples = rng.uniform(size=300)
    plain = ks_test(empirical_cdf(samples), uniform_cdf)
    mapped = ks_test(empirical_cdf(np.exp(samples)), lambda x: uniform_cdf(np.log(x)))
    assert mapped.statistic == pytest.approx(plain.statistic, abs=1e-12)


# ── Rank correlation ──────────────────────────────────────────────────────────


def test_spearman_rho_matches_scipy(rng):
    x = rng.normal(size=40)
    y = x + rng.normal(size=40)
    assert spearman_rho(x, y) == pytest.approx(stats.spearmanr(x, y).statistic, rel=1e-12)


def test_spearman_rho_extremes():
    assert spearman_rho([1, 2, 3, 4], [10, 20, 30, 40]) == pytest.approx(1.0)
    assert spearman_rho([1, 2, 3, 4], [4, 3, 2, 1]) == pytest.approx(-1.0)


def test_spearman_rho_rejects_mismatched_input():
    with pytest.raises(ArgumentError):
        spearman_rho([1.0, 2.0], [1.0])
    with pytest.raises(ArgumentError):
        spearman_rho([1.0], [1.0])


# ── SIR reference law ─────────────────────────────────────────────────────────


def test_sir_reference_power_law_above_one():
    ref = SirReference(3.52)
    t = np.array([1.0, 2.0, 10.0, 1e4])
    np.testing.assert_allclose(ref(t), 1.0 - t ** (-2.0 / 3.52) / ref._c_prime, rtol=1e-14)


def test_sir_reference_matches_inversion_below_one():
    ref = SirReference(3.52)
    t = 10.0 ** (np.array([-40.0, -25.0, -10.0, -3.0, -1.0]) / 10.0)
    np.testing.assert_allclose(ref(t), sir_cdf(3.52, t), atol=1e-4)


def test_sir_reference_is_a_cdf():
    ref = SirReference(3.52)
    t = 10.0 ** (np.linspace(-80.0, 40.0, 241) / 10.0)
    values = ref(t)
    assert np.all((values >= 0) & (values <= 1))
    assert np.all(np.diff(values) >= -1e-6)
    assert ref(np.array([0.0]))[0] == 0.0


def test_sir_reference_below_the_table_is_evaluated_directly():
    ref = SirReference(3.52)
    t = 10.0 ** (np.array([-90.0, -75.0]) / 10.0)
    values = ref(t)
    np.testing.assert_array_equal(values, np.clip(sir_cdf(3.52, t), 0.0, ref._table[0]))
    assert np.all(values <= ref(np.array([1e-6]))[0])
    assert np.all(values < 1e-6)
