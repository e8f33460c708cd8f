"""Empirical CDFs and the one-sample Kolmogorov-Smirnov test."""

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .analytic import c_prime, sir_cdf
from .errors import ArgumentError
from .numerics import InversionConfig

KS_SERIES_TOL = 1e-12
# Below this sqrt(n) D the alternating series converges too slowly and the
# theta-function form of the same distribution is used instead.
KS_SMALL_LAMBDA = 1.18


@dataclass(frozen=True, eq=False)
class EmpiricalCdf:
    sorted_samples: np.ndarray

    @property
    def n(self) -> int:
        return len(self.sorted_samples)

    def __call__(self, x):
        """F^(x) = #{x_i <= x} / n."""
        counts = np.searchsorted(self.sorted_samples, x, side="right")
        if np.ndim(counts) == 0:
            return int(counts) / self.n
        return counts / self.n


@dataclass(frozen=True)
class KsResult:
    statistic: float
    p_value: float
    n: int

    def passes(self, alpha: float) -> bool:
        """True when the test does not reject at level ``alpha``."""
        return self.p_value >= alpha


def empirical_cdf(samples) -> EmpiricalCdf:
    data = np.sort(np.asarray(samples, dtype=float).ravel())
    if data.size == 0:
        raise ArgumentError("empirical CDF needs at least one sample")
    if np.any(np.isnan(data)):
        raise ArgumentError("samples contain NaN")
    return EmpiricalCdf(data)


def kolmogorov_sf(lam: float) -> float:
    """P(K > lam) for the Kolmogorov limit distribution."""
    if lam <= 0:
        return 1.0
    if lam < KS_SMALL_LAMBDA:
        total = 0.0
        k = 1
        while True:
            term = math.exp(-((2 * k - 1) ** 2) * math.pi**2 / (8.0 * lam**2))
            total += term
            if term < KS_SERIES_TOL * max(total, 1e-300) or term == 0.0:
                break
            k += 1
        p = 1.0 - math.sqrt(2.0 * math.pi) / lam * total
    else:
        p = 0.0
        k = 1
        while True:
            term = math.exp(-2.0 * k**2 * lam**2)
            p += term if k % 2 else -term
            if term < KS_SERIES_TOL:
                break
            k += 1
        p *= 2.0
    return min(max(p, 0.0), 1.0)


def ks_test(ecdf: EmpiricalCdf, cdf: Callable) -> KsResult:
    """One-sample K-S test of the sample behind ``ecdf`` against ``cdf``."""
    x = ecdf.sorted_samples
    n = ecdf.n
    model = np.clip(np.asarray(cdf(x), dtype=float), 0.0, 1.0)
    ranks = np.arange(1, n + 1)
    d_plus = np.max(ranks / n - model)
    d_minus = np.max(model - (ranks - 1) / n)
    statistic = float(max(d_plus, d_minus, 0.0))
    return KsResult(statistic=statistic, p_value=kolmogorov_sf(math.sqrt(n) * statistic), n=n)


def spearman_rho(x, y) -> float:
    """Rank correlation (no tie correction)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise ArgumentError("need two equally long sequences of at least two values")
    rx = np.argsort(np.argsort(x)).astype(float)
    ry = np.argsort(np.argsort(y)).astype(float)
    rx -= rx.mean()
    ry -= ry.mean()
    return float((rx @ ry) / math.sqrt((rx @ rx) * (ry @ ry)))


class SirReference:
    """P(SIR <= t) of the infinite Poisson model, tabulated for repeated use.

    Exact power law for t >= 1; below 1 the inverted transform is
    tabulated on a dB grid and interpolated, and below the grid it is
    evaluated directly.
    """

    def __init__(
        self,
        beta: float,
        cfg: InversionConfig | None = None,
        db_min: float = -60.0,
        points: int = 1201,
    ):
        self.beta = beta
        self.inversion = cfg
        self._grid_db = np.linspace(db_min, 0.0, points)
        self._table = sir_cdf(beta, 10.0 ** (self._grid_db / 10.0), cfg)
        self._c_prime = c_prime(beta)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        high = t >= 1.0
        out[high] = 1.0 - t[high] ** (-2.0 / self.beta) / self._c_prime
        low = (t > 0) & ~high
        t_db = np.full(t.shape, -np.inf)
        t_db[low] = 10.0 * np.log10(t[low])
        tabulated = low & (t_db >= self._grid_db[0])
        out[tabulated] = np.interp(t_db[tabulated], self._grid_db, self._table)
        tiny = low & ~tabulated
        if np.any(tiny):
            direct = sir_cdf(self.beta, t[tiny], self.inversion)
            out[tiny] = np.clip(direct, 0.0, self._table[0])
        return out
