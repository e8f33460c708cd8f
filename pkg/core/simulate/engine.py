"""Monte Carlo observables of the typical user on a torus pattern."""

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import ArgumentError
from ..models import PropagationModel, ShadowingSpec, k_sigma
from ..numerics import std_normal_cdf
from .base import PointPattern, TruncationWindow, wrap_displacement
from .shadowing import draw_shadowing

logger = logging.getLogger(__name__)

CHUNK = 1024


@dataclass(frozen=True)
class TypicalUserSample:
    """One realization seen by the user: path loss, interference factor, SIR, SINR."""

    L: float
    f: float
    sir: float
    sinr: float

    @property
    def interference(self) -> float:
        """Total received interference I = (f + 1) / L."""
        return (self.f + 1.0) / self.L


@dataclass(frozen=True, eq=False)
class TypicalUserBatch:
    L: np.ndarray
    f: np.ndarray
    sir: np.ndarray
    sinr: np.ndarray

    def __len__(self) -> int:
        return len(self.L)

    def sample(self, i: int) -> TypicalUserSample:
        return TypicalUserSample(
            float(self.L[i]), float(self.f[i]), float(self.sir[i]), float(self.sinr[i])
        )

    def sinr_at(self, noise_over_power: float) -> np.ndarray:
        """SINR the same (L, f) draws would see at another noise-to-power ratio."""
        with np.errstate(divide="ignore"):
            return 1.0 / (noise_over_power * self.L + self.f)


def _user_distances(pattern: PointPattern, count: int, rng: np.random.Generator) -> np.ndarray:
    extent = np.asarray(pattern.extent)
    users = rng.uniform(size=(count, 2)) * extent
    dist = np.hypot(*np.moveaxis(wrap_displacement(pattern.points[None] - users[:, None], extent), -1, 0))
    # A user on top of a station is a null event; redraw such users.
    clash = np.any(dist == 0, axis=1)
    while np.any(clash):
        users = rng.uniform(size=(np.count_nonzero(clash), 2)) * extent
        dist[clash] = np.hypot(
            *np.moveaxis(wrap_displacement(pattern.points[None] - users[:, None], extent), -1, 0)
        )
        clash = np.any(dist == 0, axis=1)
    return dist


def sample_typical_users(
    pattern: PointPattern,
    prop: PropagationModel,
    shadow: ShadowingSpec,
    rng: np.random.Generator,
    count: int,
    station_gains: np.ndarray | None = None,
) -> TypicalUserBatch:
    """Draw ``count`` independent users, uniform on the torus.

    Without ``station_gains`` every user sees fresh iid shadowing; with it,
    all users share that one per-station field (one network realization)
    and ``shadow`` is not sampled.
    """
    if len(pattern) == 0:
        raise ArgumentError("pattern has no stations")
    if count < 1:
        raise ArgumentError(f"count must be positive, got {count}")
    gains = _check_gains(pattern, station_gains)

    path_loss = np.empty(count)
    factor = np.empty(count)
    for start in range(0, count, CHUNK):
        m = min(CHUNK, count - start)
        dist = _user_distances(pattern, m, rng)
        path_loss[start:start + m], factor[start:start + m] = _observe(dist, prop, shadow, rng, gains)

    logger.debug("sampled %d users on a %d-station %s pattern", count, len(pattern), pattern.kind)
    return _batch(path_loss, factor, prop)


def _check_gains(pattern: PointPattern, station_gains) -> np.ndarray | None:
    if station_gains is None:
        return None
    gains = np.asarray(station_gains, dtype=float)
    if gains.shape != (len(pattern),):
        raise ArgumentError(f"need one gain per station ({len(pattern)}), got shape {gains.shape}")
    if not np.all(gains > 0):
        raise ArgumentError("station gains must be positive")
    return gains


def _observe(dist: np.ndarray, prop, shadow, rng, gains=None) -> tuple[np.ndarray, np.ndarray]:
    """Path loss and interference factor for each row of station distances."""
    if gains is None:
        gains = draw_shadowing(shadow, dist.shape, rng)
    losses = prop.distance_loss(dist) / gains
    best = losses.min(axis=1)
    return best, np.maximum((best[:, None] / losses).sum(axis=1) - 1.0, 0.0)


def _batch(path_loss: np.ndarray, factor: np.ndarray, prop: PropagationModel) -> TypicalUserBatch:
    with np.errstate(divide="ignore"):
        sir = 1.0 / factor
        sinr = 1.0 / (prop.noise_over_power * path_loss + factor)
    return TypicalUserBatch(L=path_loss, f=factor, sir=sir, sinr=sinr)


def sample_typical_user(
    pattern: PointPattern,
    prop: PropagationModel,
    shadow: ShadowingSpec,
    rng: np.random.Generator,
    position=None,
    station_gains: np.ndarray | None = None,
) -> TypicalUserSample:
    """One user, uniform on the torus unless ``position`` pins it."""
    if position is None:
        return sample_typical_users(pattern, prop, shadow, rng, 1, station_gains).sample(0)
    if len(pattern) == 0:
        raise ArgumentError("pattern has no stations")
    gains = _check_gains(pattern, station_gains)
    dist = pattern.distances_from(position)[None]
    if np.any(dist == 0):
        raise ArgumentError("user position coincides with a station")
    return _batch(*_observe(dist, prop, shadow, rng, gains), prop).sample(0)


def simulated_energy_efficiency(
    batch: TypicalUserBatch, prop: PropagationModel, power: float
) -> float:
    """Sample mean of W log2(1 + SINR(P)) / (c P + d), bits/s/W."""
    if not power > 0:
        raise ArgumentError(f"transmit power must be positive, got {power}")
    rate = np.log2(1.0 + batch.sinr_at(prop.noise / power))
    return prop.bandwidth_hz * float(rate.mean()) / prop.consumed_power(power)


def _window_distances(pattern, window, origin) -> np.ndarray:
    window = window or TruncationWindow()
    origin = pattern.default_origin if origin is None else origin
    dist = pattern.distances_from(origin)
    return dist[window.contains(dist)]


def sample_sigma_scaled_losses(
    pattern: PointPattern,
    k: float,
    beta: float,
    sigma: float,
    window: TruncationWindow | None,
    rng: np.random.Generator,
    origin=None,
) -> np.ndarray:
    """log(K(sigma)^beta |X|^beta / S) for the stations inside the window."""
    if sigma < 0:
        raise ArgumentError(f"sigma must be non-negative, got {sigma}")
    dist = _window_distances(pattern, window, origin)
    log_shadow = -(sigma**2) / 2.0 + sigma * rng.standard_normal(dist.shape)
    return beta * np.log(k_sigma(k, beta, sigma) * dist) - log_shadow


def expected_log_count(
    pattern: PointPattern,
    k: float,
    beta: float,
    sigma: float,
    s,
    window: TruncationWindow | None = None,
    origin=None,
):
    """Exact mean number of sigma-scaled log-losses <= s.

    Sum over stations of G((s - beta log(K|X|) - sigma^2/beta) / sigma),
    with the unscaled K; equivalent to the K(sigma)-scaled losses drawn by
    sample_sigma_scaled_losses.
    """
    if not sigma > 0:
        raise ArgumentError(f"sigma must be positive, got {sigma}")
    dist = _window_distances(pattern, window, origin)
    scalar = np.ndim(s) == 0
    s = np.asarray(s, dtype=float)
    arg = (s[..., None] - beta * np.log(k * dist) - sigma**2 / beta) / sigma
    total = std_normal_cdf(arg).sum(axis=-1)
    return float(total) if scalar else total


def poisson_log_count(a: float, beta: float, s):
    """Mean number of Poisson log-losses <= s: a exp(2 s / beta)."""
    value = a * np.exp(2.0 * np.asarray(s, dtype=float) / beta)
    return float(value) if np.ndim(value) == 0 else value
