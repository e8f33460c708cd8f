"""Typical-user distributions of the infinite Poisson model.

Path loss L is Frechet; the interference factor f = L * sum(1/L_i) - 1 has
Laplace transform 1/phi_beta(z); SINR = 1/(N L / P + f) is obtained by
inverting the conditional transform of f given L and integrating over L.

Integrals over the path loss use the substitution u = exp(-a s**(2/beta)),
under which the law of L becomes the uniform measure on (0, 1).
Efficiencies are computed in nats and converted to bits only where they are
reported.
"""

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ArgumentError, DomainError
from .models import EquivalentPoisson, PropagationModel, ShadowingSpec, equivalent_poisson
from .numerics import (
    InversionConfig,
    QuadratureConfig,
    gamma_fn,
    gamma_star,
    integrate_unit_interval,
    invert_laplace_ccdf,
    maximize_scalar,
)

logger = logging.getLogger(__name__)

# Integrand cut-off of the explicit SINR law, relative to its peak.
EXPLICIT_CUTOFF = 1e-12
# Spectral-efficiency integrals stop where the SINR tail drops below this.
TAIL_CUTOFF = 1e-8


@dataclass(frozen=True)
class PathLossLaw:
    """Frechet law P(L < t) = 1 - exp(-a t**(2/beta)) of the path-loss factor."""

    a: float
    beta: float

    @classmethod
    def from_poisson(cls, ep: EquivalentPoisson) -> "PathLossLaw":
        return cls(a=ep.a, beta=ep.beta)


@dataclass(frozen=True)
class SinrLaw:
    """Everything needed to evaluate the SINR law of the typical user."""

    a: float
    beta: float
    noise_over_power: float = 0.0
    inversion: InversionConfig = field(default_factory=InversionConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        if self.noise_over_power < 0:
            raise ArgumentError(f"noise_over_power must be >= 0, got {self.noise_over_power}")
        if not self.beta > 2:
            raise ArgumentError(f"path-loss exponent must exceed 2, got {self.beta}")

    @classmethod
    def build(
        cls,
        lam: float,
        prop: PropagationModel,
        shadow: ShadowingSpec,
        inversion: InversionConfig | None = None,
        quadrature: QuadratureConfig | None = None,
    ) -> "SinrLaw":
        ep = equivalent_poisson(lam, prop, shadow)
        return cls(
            a=ep.a,
            beta=ep.beta,
            noise_over_power=prop.noise_over_power,
            inversion=inversion or InversionConfig(),
            quadrature=quadrature or QuadratureConfig(),
        )

    @property
    def pathloss(self) -> PathLossLaw:
        return PathLossLaw(self.a, self.beta)

    def with_noise_over_power(self, value: float) -> "SinrLaw":
        return replace(self, noise_over_power=value)


@dataclass(frozen=True)
class PowerOptimum:
    power_w: float
    efficiency: float  # bits/s/W
    at_boundary: bool = False


def _out(value, scalar: bool):
    return float(value) if scalar else value


# -- path loss ---------------------------------------------------------------


def pathloss_cdf(law: PathLossLaw, t):
    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ArgumentError("path loss is non-negative")
    return _out(-np.expm1(-law.a * t ** (2.0 / law.beta)), scalar)


def pathloss_pdf(law: PathLossLaw, t):
    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)
    q = 2.0 / law.beta
    with np.errstate(divide="ignore"):
        dens = law.a * q * t ** (q - 1.0) * np.exp(-law.a * t**q)
    return _out(np.where(t > 0, dens, 0.0), scalar)


def pathloss_quantile(law: PathLossLaw, p: float) -> float:
    if not 0 <= p < 1:
        raise ArgumentError(f"quantile level must be in [0, 1), got {p}")
    return (-math.log1p(-p) / law.a) ** (law.beta / 2.0)


# -- interference factor -----------------------------------------------------


def phi_beta(beta: float, z):
    """phi_beta(z) = exp(-z) + z**(2/beta) gamma(1 - 2/beta, z).

    Evaluated as Gamma(1 - 2/beta) gamma*(-2/beta, z), which is stable at
    small z; also accepts complex arrays (needed by the inversions).
    """
    if not beta > 2:
        raise ArgumentError(f"path-loss exponent must exceed 2, got {beta}")
    return gamma_fn(1.0 - 2.0 / beta) * gamma_star(-2.0 / beta, z)


def laplace_f_given_L(law: SinrLaw, z, s):
    """E[exp(-z f) | L = s] = exp(-a (phi_beta(z) - 1) s**(2/beta))."""
    if np.any(np.asarray(s) <= 0):
        raise ArgumentError("conditioning path loss must be positive")
    value = np.exp(-law.a * (phi_beta(law.beta, z) - 1.0) * np.asarray(s) ** (2.0 / law.beta))
    return _out(value, np.ndim(value) == 0)


def laplace_f(beta: float, z):
    """E[exp(-z f)] = 1 / phi_beta(z); does not depend on the intensity."""
    value = 1.0 / np.asarray(phi_beta(beta, z))
    return _out(value, np.ndim(value) == 0)


def joint_laplace(law: SinrLaw, z, u: float):
    """E[1{L >= u} exp(-z f)] = exp(-a u**(2/beta) phi_beta(z)) / phi_beta(z)."""
    if u < 0:
        raise ArgumentError("path-loss level must be non-negative")
    phi = np.asarray(phi_beta(law.beta, z))
    value = np.exp(-law.a * u ** (2.0 / law.beta) * phi) / phi
    return _out(value, np.ndim(value) == 0)


def c_prime(beta: float) -> float:
    """C'(beta) = 2 pi / (beta sin(2 pi / beta))."""
    if not beta > 2:
        raise ArgumentError(f"path-loss exponent must exceed 2, got {beta}")
    return 2.0 * math.pi / (beta * math.sin(2.0 * math.pi / beta))


def sir_ccdf_explicit(beta: float, t):
    """P(SIR >= t) = t**(-2/beta) / C'(beta), valid for t >= 1 only."""
    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)
    if np.any(t < 1):
        raise DomainError("explicit SIR law holds only for t >= 1")
    return _out(t ** (-2.0 / beta) / c_prime(beta), scalar)


def _f_ccdf_transform(beta: float):
    def transform(z):
        return (1.0 - 1.0 / phi_beta(beta, z)) / z

    return transform


def interference_cdf(beta: float, y, cfg: InversionConfig | None = None):
    """P(f <= y), from the unconditional transform 1/phi_beta."""
    scalar = np.ndim(y) == 0
    y = np.asarray(y, dtype=float)
    out = np.zeros_like(y)
    pos = y > 0
    if np.any(pos):
        out[pos] = 1.0 - invert_laplace_ccdf(_f_ccdf_transform(beta), y[pos], cfg)
    return _out(out, scalar)


def sir_cdf(beta: float, t, cfg: InversionConfig | None = None):
    """P(SIR < t) = P(f > 1/t) for any t > 0."""
    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ArgumentError("SIR threshold must be positive")
    return _out(invert_laplace_ccdf(_f_ccdf_transform(beta), 1.0 / t, cfg), scalar)


# -- SINR ----------------------------------------------------------------------


def y_cdf(law: SinrLaw, x):
    """P(N L + f < x) with N = noise_over_power.

    F_s(x - N s) = P(f < x - N s | L = s) comes from inverting the
    transform (1 - u**(phi(z) - 1)) / z of its complement, where
    u = exp(-a s**(2/beta)); the outer integral runs over u. Path losses
    with N s >= x contribute nothing, so the u-range starts at
    u* = exp(-a (x/N)**(2/beta)).
    """
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ArgumentError("y_cdf needs x > 0")

    noise = law.noise_over_power
    q = 2.0 / law.beta
    if noise > 0:
        width = -np.expm1(-law.a * (x / noise) ** q)
    else:
        width = np.ones_like(x)

    def conditional_cdf(v):
        # u = 1 - width * v sweeps (u*, 1)
        log_u = np.log1p(-width[..., None] * v)
        s = (-log_u / law.a) ** (law.beta / 2.0)
        y = x[..., None] - noise * s
        alive = y > 0
        y = np.where(alive, y, 1.0)

        def transform(z):
            return -np.expm1((phi_beta(law.beta, z) - 1.0) * log_u[..., None]) / z

        ccdf = invert_laplace_ccdf(transform, y, law.inversion)
        return np.where(alive, 1.0 - ccdf, 0.0)

    value = width * integrate_unit_interval(conditional_cdf, law.quadrature)
    return _out(np.clip(value, 0.0, 1.0), scalar)


def sinr_ccdf(law: SinrLaw, t):
    """P(SINR >= t) for every t > 0."""
    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ArgumentError("SINR threshold must be positive")
    return _out(y_cdf(law, 1.0 / t), scalar)


def sinr_ccdf_explicit(law: SinrLaw, t):
    """P(SINR >= t) for t >= 1 from the closed-form radial integral."""
    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)
    if np.any(t < 1):
        raise DomainError("explicit SINR law holds only for t >= 1")

    q = 2.0 / law.beta
    g = gamma_fn(1.0 - q)
    prefactor = t ** (-q) / (gamma_fn(1.0 + q) * g)
    c = law.noise_over_power * law.a ** (-law.beta / 2.0) * g ** (-law.beta / 2.0)
    if c == 0:
        return _out(prefactor, scalar)

    u_min = math.exp(-((-math.log(EXPLICIT_CUTOFF) / c) ** q))
    span = 1.0 - u_min

    def integrand(v):
        u = u_min + span * v
        return np.exp(-c * (-np.log(u)) ** (law.beta / 2.0))

    integral = span * integrate_unit_interval(integrand, law.quadrature)
    return _out(prefactor * integral, scalar)


# -- efficiencies --------------------------------------------------------------


def _tail_limit(beta: float) -> float:
    """log(1 + t) beyond which P(SINR >= t) <= P(SIR >= t) < TAIL_CUTOFF."""
    t_max = (TAIL_CUTOFF * c_prime(beta)) ** (-beta / 2.0)
    return math.log1p(max(t_max, 1.0))


def mean_spectral_efficiency(law: SinrLaw) -> float:
    """E[log(1 + SINR)] in nats/s/Hz."""
    upper = _tail_limit(law.beta)

    def ccdf_of_rate(v):
        t = np.expm1(upper * v)
        return sinr_ccdf(law, t)

    value = upper * integrate_unit_interval(ccdf_of_rate, law.quadrature)
    logger.debug("spectral efficiency %.6g nats (N/P=%.3g)", value, law.noise_over_power)
    return max(value, 0.0)


def mean_energy_efficiency(law: SinrLaw, prop: PropagationModel, power: float) -> float:
    """W E[log2(1 + SINR(P))] / (c P + d) in bits/s/W."""
    if not power > 0:
        raise ArgumentError(f"transmit power must be positive, got {power}")
    se = mean_spectral_efficiency(law.with_noise_over_power(prop.noise / power))
    return prop.bandwidth_hz * se / (math.log(2.0) * prop.consumed_power(power))


def optimal_power(
    prop: PropagationModel,
    shadow: ShadowingSpec,
    lam: float,
    p_lo: float,
    p_hi: float,
    tol_db: float = 0.1,
    inversion: InversionConfig | None = None,
    quadrature: QuadratureConfig | None = None,
) -> PowerOptimum:
    """Maximise the mean energy efficiency over log P in [p_lo, p_hi].

    Assumes the efficiency is unimodal on the bracket; an optimum within
    two tolerances of either end is flagged ``at_boundary``.
    """
    if not 0 < p_lo < p_hi:
        raise ArgumentError(f"need 0 < p_lo < p_hi, got [{p_lo}, {p_hi}]")
    law = SinrLaw.build(lam, prop, shadow, inversion, quadrature)
    tol = tol_db * math.log(10.0) / 10.0
    lo, hi = math.log(p_lo), math.log(p_hi)

    x, best = maximize_scalar(lambda x: mean_energy_efficiency(law, prop, math.exp(x)), lo, hi, tol)
    at_boundary = x - lo <= 2 * tol or hi - x <= 2 * tol
    if at_boundary:
        logger.warning("energy-efficiency optimum %.4g W sits on the bracket edge", math.exp(x))
    return PowerOptimum(power_w=math.exp(x), efficiency=best, at_boundary=at_boundary)
