"""Data models for Poissonize: propagation parameters and their Poisson equivalent."""

import math
from dataclasses import dataclass, replace
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

from .errors import ArgumentError
from .numerics import gamma_fn

DB_PER_NEPER = 10.0 / math.log(10.0)


class ShadowingKind(StrEnum):
    LOG_NORMAL = "log-normal"
    UNIT = "unit"
    RAW_MOMENT = "raw-moment"
    RAYLEIGH = "rayleigh"


@dataclass(frozen=True)
class PropagationModel:
    """Distance loss (K|x|)**beta plus the power budget of a station.

    Units: K in 1/km, noise and tx_power in W, bandwidth in Hz; the
    consumed power of a station is ``c * tx_power + d``.
    """

    k: float
    beta: float
    noise: float = 0.0
    tx_power: float = 1.0
    bandwidth_hz: float = 1.0
    c: float = 1.0
    d: float = 0.0

    def __post_init__(self):
        if not self.beta > 2:
            raise ArgumentError(f"path-loss exponent must exceed 2, got {self.beta}")
        if not self.k > 0:
            raise ArgumentError(f"K must be positive, got {self.k}")
        if self.noise < 0 or self.d < 0:
            raise ArgumentError("noise and d must be non-negative")
        if not (self.tx_power > 0 and self.bandwidth_hz > 0 and self.c > 0):
            raise ArgumentError("tx_power, bandwidth_hz and c must be positive")

    @property
    def noise_over_power(self) -> float:
        return self.noise / self.tx_power

    def distance_loss(self, distance):
        """l(x) = (K|x|)**beta; works on scalars and arrays."""
        return (self.k * distance) ** self.beta

    def consumed_power(self, tx_power: float | None = None) -> float:
        p = self.tx_power if tx_power is None else tx_power
        return self.c * p + self.d

    def with_power(self, tx_power: float) -> "PropagationModel":
        return replace(self, tx_power=tx_power)


@dataclass(frozen=True)
class ShadowingSpec:
    """Law of the iid shadowing/fading S between a station and the user."""

    kind: ShadowingKind = ShadowingKind.UNIT
    sigma_db: float = 0.0
    moment_2_over_beta: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ShadowingKind(self.kind))
        if self.kind is ShadowingKind.LOG_NORMAL and self.sigma_db < 0:
            raise ArgumentError(f"sigma_db must be non-negative, got {self.sigma_db}")
        if self.kind is ShadowingKind.RAW_MOMENT:
            if self.moment_2_over_beta is None or not self.moment_2_over_beta > 0:
                raise ArgumentError("raw-moment shadowing needs a positive moment_2_over_beta")

    @classmethod
    def log_normal(cls, sigma_db: float) -> "ShadowingSpec":
        return cls(ShadowingKind.LOG_NORMAL, sigma_db=sigma_db)

    @classmethod
    def unit(cls) -> "ShadowingSpec":
        return cls(ShadowingKind.UNIT)

    @classmethod
    def rayleigh(cls) -> "ShadowingSpec":
        return cls(ShadowingKind.RAYLEIGH)

    @classmethod
    def raw_moment(cls, moment: float) -> "ShadowingSpec":
        return cls(ShadowingKind.RAW_MOMENT, moment_2_over_beta=moment)

    @property
    def sigma(self) -> float:
        """Natural-log standard deviation of a log-normal S."""
        return self.sigma_db / DB_PER_NEPER

    def moment(self, beta: float) -> float:
        """E[S**(2/beta)]."""
        match self.kind:
            case ShadowingKind.LOG_NORMAL:
                return lognormal_moment(self.sigma_db, beta)
            case ShadowingKind.UNIT:
                return 1.0
            case ShadowingKind.RAYLEIGH:
                return gamma_fn(1.0 + 2.0 / beta)
            case ShadowingKind.RAW_MOMENT:
                return self.moment_2_over_beta


@dataclass(frozen=True)
class EquivalentPoisson:
    """Intensity Lambda([0, t)) = a * t**(2/beta) of the propagation-loss process."""

    a: float
    beta: float

    def __post_init__(self):
        if not self.a > 0:
            raise ArgumentError(f"intensity constant must be positive, got {self.a}")

    def mean_count(self, t):
        """Expected number of propagation losses below ``t``."""
        return self.a * t ** (2.0 / self.beta)


def lognormal_moment(sigma_db: float, beta: float) -> float:
    """E[S**(2/beta)] = exp(sigma**2 (2-beta)/beta**2) for mean-one log-normal S."""
    if not beta > 2:
        raise ArgumentError(f"path-loss exponent must exceed 2, got {beta}")
    sigma = sigma_db / DB_PER_NEPER
    return math.exp(sigma**2 * (2.0 - beta) / beta**2)


def equivalent_poisson(
    lam: float, prop: PropagationModel, shadow: ShadowingSpec
) -> EquivalentPoisson:
    """a = lambda * pi * E[S**(2/beta)] / K**2."""
    if not lam > 0:
        raise ArgumentError(f"station intensity must be positive, got {lam}")
    moment = shadow.moment(prop.beta)
    return EquivalentPoisson(a=lam * math.pi * moment / prop.k**2, beta=prop.beta)


def effective_k(prop: PropagationModel, shadow: ShadowingSpec) -> float:
    """K~ = K / sqrt(E[S**(2/beta)]): the unshadowed model with the same loss process."""
    return prop.k / math.sqrt(shadow.moment(prop.beta))


def k_sigma(k: float, beta: float, sigma: float) -> float:
    """K(sigma) = K exp(-sigma**2 (beta-2) / (2 beta**2)).

    Compensates the log-normal moment so the loss process keeps a = lambda pi / K**2.
    """
    if not beta > 2:
        raise ArgumentError(f"path-loss exponent must exceed 2, got {beta}")
    if sigma < 0:
        raise ArgumentError(f"sigma must be non-negative, got {sigma}")
    return k * math.exp(-(sigma**2) * (beta - 2.0) / (2.0 * beta**2))


def cell_radius_to_intensity(radius_km: float) -> float:
    """Station intensity whose cell area equals a disk of the given radius."""
    if not radius_km > 0:
        raise ArgumentError(f"cell radius must be positive, got {radius_km}")
    return 1.0 / (math.pi * radius_km**2)


def intensity_to_cell_radius(lam: float) -> float:
    if not lam > 0:
        raise ArgumentError(f"station intensity must be positive, got {lam}")
    return 1.0 / math.sqrt(math.pi * lam)
