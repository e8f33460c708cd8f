"""Shared fixtures: the urban COST-Hata setting and seeded generators."""

import numpy as np
import pytest

from core.analytic import SinrLaw
from core.config import dbm_to_watts
from core.models import PropagationModel, ShadowingSpec, cell_radius_to_intensity

CELL_RADIUS_KM = 0.26
BETA = 3.52


@pytest.fixture
def cost_hata() -> PropagationModel:
    return PropagationModel(
        k=4250.0,
        beta=BETA,
        noise=dbm_to_watts(-93.0),
        tx_power=dbm_to_watts(58.5),
        bandwidth_hz=1e7,
        c=21.45,
        d=354.44,
    )


@pytest.fixture
def lam() -> float:
    return cell_radius_to_intensity(CELL_RADIUS_KM)


@pytest.fixture
def shadow12() -> ShadowingSpec:
    return ShadowingSpec.log_normal(12.0)


@pytest.fixture
def cost_hata_law(cost_hata, lam, shadow12) -> SinrLaw:
    return SinrLaw.build(lam, cost_hata, shadow12)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)
