"""Run configuration: the COST-Hata parameter block and its overrides."""

from dataclasses import asdict, dataclass, field, fields

import numpy as np

from ..errors import ArgumentError, ConfigError
from ..models import (
    PropagationModel,
    ShadowingKind,
    ShadowingSpec,
    cell_radius_to_intensity,
    intensity_to_cell_radius,
)
from ..numerics import InversionConfig, QuadratureConfig
from ..simulate import Layout, PatternKind, make_layout
from .units import dbm_to_watts

DEFAULT_CELL_RADIUS_KM = 0.26


def _default_p_grid() -> list[float]:
    return [float(p) for p in np.arange(-20.0, 80.0 + 1e-9, 2.5)]


@dataclass
class RunConfig:
    """Every parameter a command can use. Defaults reproduce the urban COST-Hata setting."""

    k_per_km: float = 4250.0
    beta: float = 3.52
    sigma_db: float = 12.0
    shadowing: str = ShadowingKind.LOG_NORMAL.value
    moment_2_over_beta: float | None = None
    lambda_per_km2: float | None = None
    cell_radius_km: float | None = None
    n_side: int = 30
    noise_dbm: float = -93.0
    power_dbm: float = 58.5
    bandwidth_hz: float = 1e7
    c: float = 21.45
    d_watts: float = 354.44
    seed: int = 1
    realizations: int = 10
    samples: int = 10000
    pattern: str = PatternKind.HEXAGONAL.value
    displacement_km: float = 0.0
    workers: int = 4
    sigma_db_list: list[float] = field(default_factory=lambda: [0.0, 3.0, 6.0, 9.0, 12.0, 15.0, 20.0])
    p_grid_dbm: list[float] = field(default_factory=_default_p_grid)
    grid_db_min: float = -20.0
    grid_db_max: float = 40.0
    grid_points: int = 121
    inversion_a: float = 18.4
    inversion_n: int = 38
    inversion_m: int = 11
    quadrature_nodes: int = 64

    def __post_init__(self):
        if self.lambda_per_km2 is not None and self.cell_radius_km is not None:
            raise ConfigError("lambda_per_km2 and cell_radius_km are mutually exclusive")
        try:
            ShadowingKind(self.shadowing)
            PatternKind(self.pattern)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        if self.seed < 0 or self.seed >= 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        for name in ("realizations", "samples", "workers", "grid_points", "n_side"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if not self.grid_db_min < self.grid_db_max:
            raise ConfigError("grid_db_min must be below grid_db_max")

    # -- derived quantities ----------------------------------------------------

    @property
    def radius_km(self) -> float:
        if self.lambda_per_km2 is not None:
            return intensity_to_cell_radius(self.lambda_per_km2)
        return self.cell_radius_km if self.cell_radius_km is not None else DEFAULT_CELL_RADIUS_KM

    def intensity(self) -> float:
        """Station intensity per km^2."""
        if self.lambda_per_km2 is not None:
            return self.lambda_per_km2
        return cell_radius_to_intensity(self.radius_km)

    def propagation(self, power_dbm: float | None = None) -> PropagationModel:
        return PropagationModel(
            k=self.k_per_km,
            beta=self.beta,
            noise=dbm_to_watts(self.noise_dbm),
            tx_power=dbm_to_watts(self.power_dbm if power_dbm is None else power_dbm),
            bandwidth_hz=self.bandwidth_hz,
            c=self.c,
            d=self.d_watts,
        )

    def shadowing_spec(self, sigma_db: float | None = None) -> ShadowingSpec:
        kind = ShadowingKind(self.shadowing)
        if sigma_db is not None:
            kind = ShadowingKind.LOG_NORMAL
        match kind:
            case ShadowingKind.LOG_NORMAL:
                return ShadowingSpec.log_normal(self.sigma_db if sigma_db is None else sigma_db)
            case ShadowingKind.UNIT:
                return ShadowingSpec.unit()
            case ShadowingKind.RAYLEIGH:
                return ShadowingSpec.rayleigh()
            case ShadowingKind.RAW_MOMENT:
                return ShadowingSpec.raw_moment(self.moment_2_over_beta)

    def layout(self, kind: PatternKind | str | None = None) -> Layout:
        try:
            return make_layout(
                kind or self.pattern, self.radius_km, self.n_side, self.displacement_km
            )
        except ArgumentError as e:
            raise ConfigError(str(e)) from None

    def inversion(self) -> InversionConfig:
        return InversionConfig(self.inversion_a, self.inversion_n, self.inversion_m)

    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(node_count=self.quadrature_nodes)

    def sinr_grid_db(self) -> np.ndarray:
        return np.linspace(self.grid_db_min, self.grid_db_max, self.grid_points)

    # -- (de)serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        """Convert to a plain dictionary for YAML serialization."""
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict, path: str | None = None, lines: dict | None = None) -> "RunConfig":
        """Build from a dictionary of raw values; unknown keys are rejected.

        ``lines`` maps keys to the line they were read from, for diagnostics.
        """
        lines = lines or {}
        known = {f.name: f for f in fields(cls)}
        values = {}
        for key, raw in data.items():
            if key not in known:
                raise ConfigError(f"unknown key {key!r}", path, lines.get(key))
            try:
                values[key] = _coerce(key, raw)
            except (TypeError, ValueError) as e:
                raise ConfigError(f"bad value for {key}: {e}", path, lines.get(key)) from None
        try:
            return cls(**values)
        except ConfigError as e:
            if path is None:
                raise
            raise ConfigError(str(e), path) from None


_INT_KEYS = {
    "n_side", "seed", "realizations", "samples", "workers",
    "grid_points", "inversion_n", "inversion_m", "quadrature_nodes",
}
_STR_KEYS = {"shadowing", "pattern"}
_LIST_KEYS = {"sigma_db_list", "p_grid_dbm"}
_OPTIONAL_KEYS = {"moment_2_over_beta", "lambda_per_km2", "cell_radius_km"}


def _as_float(value) -> float:
    if isinstance(value, bool):
        raise TypeError("expected a number, got a boolean")
    return float(value)


def _as_int(value) -> int:
    if isinstance(value, bool):
        raise TypeError("expected an integer, got a boolean")
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError(f"expected an integer, got {value}")
        return int(value)
    return int(value)


def _coerce(key: str, value):
    """Coerce a YAML-typed value (``1e7`` arrives as a string) to the field's type."""
    if value is None and key in _OPTIONAL_KEYS:
        return None
    if key in _STR_KEYS:
        return str(value)
    if key in _INT_KEYS:
        return _as_int(value)
    if key in _LIST_KEYS:
        if isinstance(value, str):
            value = value.strip().strip("[]").replace(",", " ").split()
        if not isinstance(value, (list, tuple)):
            value = [value]
        return [_as_float(v) for v in value]
    return _as_float(value)


def parse_float_list(text: str) -> list[float]:
    """Parse ``"0,6,12"`` or ``"0 6 12"`` into floats; used by command-line overrides."""
    try:
        values = _coerce("sigma_db_list", text)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad list {text!r}: {e}") from None
    if not values:
        raise ConfigError("list must not be empty")
    return values
