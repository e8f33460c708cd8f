import math

import numpy as np
import pytest

from core.errors import ArgumentError
from core.models import (
    DB_PER_NEPER,
    EquivalentPoisson,
    PropagationModel,
    ShadowingKind,
    ShadowingSpec,
    cell_radius_to_intensity,
    effective_k,
    equivalent_poisson,
    intensity_to_cell_radius,
    k_sigma,
    lognormal_moment,
)


# ── Shadowing moments ─────────────────────────────────────────────────────────


@pytest.mark.parametrize("beta", [2.5, 3.52, 4.0, 6.0])
def test_lognormal_moment_without_shadowing(beta):
    assert lognormal_moment(0.0, beta) == 1.0


def test_lognormal_moment_cost_hata():
    assert lognormal_moment(12.0, 3.52) == pytest.approx(0.39195, abs=1e-4)


def test_lognormal_moment_tends_to_one_near_beta_two():
    assert lognormal_moment(12.0, 2.0 + 1e-9) == pytest.approx(1.0, abs=1e-8)


def test_lognormal_moment_rejects_beta_two():
    with pytest.raises(ArgumentError):
        lognormal_moment(12.0, 2.0)


def test_rayleigh_moment():
    assert ShadowingSpec.rayleigh().moment(4.0) == pytest.approx(math.gamma(1.5), rel=1e-12)


def test_shadowing_spec_validation():
    with pytest.raises(ArgumentError):
        ShadowingSpec.log_normal(-1.0)
    with pytest.raises(ArgumentError):
        ShadowingSpec(ShadowingKind.RAW_MOMENT)
    with pytest.raises(ValueError):
        ShadowingSpec("gaussian")


def test_shadowing_spec_accepts_string_kind():
    spec = ShadowingSpec("log-normal", sigma_db=6.0)
    assert spec.kind is ShadowingKind.LOG_NORMAL
    assert spec.sigma == pytest.approx(6.0 / DB_PER_NEPER)


# ── Equivalent Poisson process ────────────────────────────────────────────────


def test_equivalent_poisson_unit_case():
    prop = PropagationModel(k=1.0, beta=4.0)
    assert equivalent_poisson(1.0, prop, ShadowingSpec.unit()).a == pytest.approx(math.pi)


def test_equivalent_poisson_cost_hata(cost_hata, lam, shadow12):
    assert lam == pytest.approx(4.70872, rel=1e-5)
    assert equivalent_poisson(lam, cost_hata, shadow12).a == pytest.approx(3.210e-7, rel=1e-3)


def test_equivalent_poisson_is_linear_in_intensity(cost_hata, shadow12):
    a1 = equivalent_poisson(1.3, cost_hata, shadow12).a
    a2 = equivalent_poisson(2.6, cost_hata, shadow12).a
    assert a2 == pytest.approx(2.0 * a1, rel=1e-15)


def test_equal_moments_give_identical_process(cost_hata, lam):
    moment = lognormal_moment(12.0, cost_hata.beta)
    a = equivalent_poisson(lam, cost_hata, ShadowingSpec.log_normal(12.0))
    b = equivalent_poisson(lam, cost_hata, ShadowingSpec.raw_moment(moment))
    assert a == b


def test_equivalent_poisson_rejects_bad_intensity(cost_hata, shadow12):
    with pytest.raises(ArgumentError):
        equivalent_poisson(0.0, cost_hata, shadow12)


def test_mean_count():
    ep = EquivalentPoisson(a=2.0, beta=4.0)
    assert ep.mean_count(9.0) == pytest.approx(6.0)


# ── Effective constants ───────────────────────────────────────────────────────


def test_effective_k_unit(cost_hata):
    assert effective_k(cost_hata, ShadowingSpec.unit()) == cost_hata.k


def test_effective_k_raw_moment(cost_hata):
    assert effective_k(cost_hata, ShadowingSpec.raw_moment(4.0)) == pytest.approx(cost_hata.k / 2.0)


def test_effective_k_cost_hata(cost_hata, shadow12):
    assert effective_k(cost_hata, shadow12) == pytest.approx(6788.6, rel=1e-3)


def test_effective_k_reproduces_process(cost_hata, lam, shadow12):
    shadowed = equivalent_poisson(lam, cost_hata, shadow12).a
    k_tilde = effective_k(cost_hata, shadow12)
    plain = PropagationModel(k=k_tilde, beta=cost_hata.beta)
    assert equivalent_poisson(lam, plain, ShadowingSpec.unit()).a == pytest.approx(shadowed, rel=1e-12)


def test_k_sigma_without_shadowing():
    assert k_sigma(4250.0, 3.52, 0.0) == 4250.0


def test_k_sigma_value():
    assert k_sigma(1.0, 4.0, 2.0) == pytest.approx(math.exp(-0.25), rel=1e-14)


@pytest.mark.parametrize("beta", [2.5, 3.52, 4.0, 6.0])
def test_k_sigma_compensates_moment(beta):
    for sigma_db in np.arange(0.0, 31.0, 3.0):
        sigma = sigma_db / DB_PER_NEPER
        compensated = k_sigma(4250.0, beta, sigma) ** 2 / lognormal_moment(sigma_db, beta)
        assert compensated == pytest.approx(4250.0**2, rel=1e-12)


def test_k_sigma_rejects_negative_sigma():
    with pytest.raises(ArgumentError):
        k_sigma(1.0, 4.0, -0.1)


# ── Propagation model ─────────────────────────────────────────────────────────


@pytest.mark.parametrize(
    "kwargs",
    [
        {"k": 1.0, "beta": 2.0},
        {"k": 0.0, "beta": 4.0},
        {"k": 1.0, "beta": 4.0, "noise": -1.0},
        {"k": 1.0, "beta": 4.0, "tx_power": 0.0},
        {"k": 1.0, "beta": 4.0, "d": -1.0},
    ],
)
def test_propagation_model_validation(kwargs):
    with pytest.raises(ArgumentError):
        PropagationModel(**kwargs)


def test_propagation_model_helpers(cost_hata):
    assert cost_hata.noise_over_power == pytest.approx(7.08e-16, rel=1e-2)
    assert cost_hata.distance_loss(1.0 / cost_hata.k) == pytest.approx(1.0)
    assert cost_hata.consumed_power(10.0) == pytest.approx(21.45 * 10.0 + 354.44)
    assert cost_hata.with_power(10.0).tx_power == 10.0


def test_cell_radius_round_trip():
    assert cell_radius_to_intensity(0.26) == pytest.approx(1.0 / (math.pi * 0.26**2))
    assert intensity_to_cell_radius(cell_radius_to_intensity(0.26)) == pytest.approx(0.26)
