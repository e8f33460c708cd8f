"""Sampling of iid shadowing/fading gains."""

import numpy as np

from ..errors import ArgumentError
from ..models import ShadowingKind, ShadowingSpec


def draw_shadowing(spec: ShadowingSpec, shape, rng: np.random.Generator) -> np.ndarray:
    """Draw S with E[S] = 1 (log-normal and Rayleigh) or S = 1 (unit)."""
    match spec.kind:
        case ShadowingKind.UNIT:
            return np.ones(shape)
        case ShadowingKind.LOG_NORMAL:
            sigma = spec.sigma
            return np.exp(-(sigma**2) / 2.0 + sigma * rng.standard_normal(shape))
        case ShadowingKind.RAYLEIGH:
            return rng.standard_exponential(shape)
        case ShadowingKind.RAW_MOMENT:
            raise ArgumentError("raw-moment shadowing fixes only E[S^(2/beta)] and cannot be sampled")
