"""Point patterns on a rectangular torus and the wraparound metric."""

import math
from dataclasses import dataclass
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

import numpy as np

from ..errors import ArgumentError

# Default observation point, as a fraction of the torus extent; an
# irrational offset keeps it away from lattice sites.
DEFAULT_ORIGIN_FRACTION = (3.0 - math.sqrt(5.0)) / 2.0


class PatternKind(StrEnum):
    HEXAGONAL = "hex"
    POISSON = "poisson"
    PERTURBED_HEXAGONAL = "perturbed-hex"


@dataclass(frozen=True, eq=False)
class PointPattern:
    """Finite base-station pattern on [0, width) x [0, height), in km."""

    points: np.ndarray  # shape (n, 2)
    extent: tuple[float, float]
    kind: PatternKind

    def __post_init__(self):
        width, height = self.extent
        if not (width > 0 and height > 0):
            raise ArgumentError(f"torus extent must be positive, got {self.extent}")
        points = np.asarray(self.points, dtype=float).reshape(-1, 2)
        if np.any(points < 0) or np.any(points[:, 0] >= width) or np.any(points[:, 1] >= height):
            raise ArgumentError("pattern points must lie inside the torus")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "kind", PatternKind(self.kind))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def area(self) -> float:
        return self.extent[0] * self.extent[1]

    @property
    def intensity(self) -> float:
        """Stations per km^2."""
        return len(self) / self.area

    @property
    def default_origin(self) -> np.ndarray:
        return np.asarray(self.extent) * DEFAULT_ORIGIN_FRACTION

    def distances_from(self, origin) -> np.ndarray:
        """Torus distance from ``origin`` to every station."""
        return torus_distance(self.points, np.asarray(origin, dtype=float), self.extent)


@dataclass(frozen=True)
class TruncationWindow:
    """Stations with a_sigma < |X| < b_sigma are kept."""

    a_sigma: float = 0.0
    b_sigma: float = math.inf

    def __post_init__(self):
        if not 0 <= self.a_sigma < self.b_sigma:
            raise ArgumentError(f"need 0 <= a < b, got ({self.a_sigma}, {self.b_sigma})")

    def contains(self, distances: np.ndarray) -> np.ndarray:
        return (distances > self.a_sigma) & (distances < self.b_sigma)


def wrap_displacement(delta: np.ndarray, extent) -> np.ndarray:
    """Shortest representative of each displacement on the torus."""
    extent = np.asarray(extent, dtype=float)
    return delta - extent * np.round(delta / extent)


def torus_distance(p, q, extent):
    """Euclidean distance under coordinate-wise wraparound; broadcasts over leading axes."""
    delta = wrap_displacement(np.asarray(p, dtype=float) - np.asarray(q, dtype=float), extent)
    dist = np.hypot(delta[..., 0], delta[..., 1])
    if np.ndim(dist) == 0:
        return float(dist)
    return dist


def empirical_homogeneity(pattern: PointPattern, radius: float, origin=None) -> float:
    """Stations within torus distance ``radius`` of ``origin`` divided by pi r^2."""
    if not 0 < radius <= min(pattern.extent) / 2:
        raise ArgumentError("radius must be positive and at most half the torus extent")
    origin = pattern.default_origin if origin is None else origin
    count = np.count_nonzero(pattern.distances_from(origin) <= radius)
    return count / (math.pi * radius**2)


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for one work unit, addressed by integer key."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))
