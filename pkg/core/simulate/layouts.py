"""Base-station layouts: hexagonal lattice, Poisson, perturbed lattice."""

import math
from abc import ABC, abstractmethod

import numpy as np

from ..errors import ArgumentError
from .base import PatternKind, PointPattern

# Lattice spacing of a triangular lattice whose hexagonal cells have area pi R^2.
HEX_SPACING_PER_RADIUS = math.sqrt(2.0 * math.pi / math.sqrt(3.0))


def hex_spacing(radius_km: float) -> float:
    return HEX_SPACING_PER_RADIUS * radius_km


def hex_extent(radius_km: float, n_side: int) -> tuple[float, float]:
    """Torus commensurate with an n_side x n_side triangular lattice."""
    spacing = hex_spacing(radius_km)
    return n_side * spacing, n_side * spacing * math.sqrt(3.0) / 2.0


def hex_pattern(radius_km: float, n_side: int) -> PointPattern:
    """n_side rows of n_side sites; odd rows are shifted by half a spacing."""
    if n_side < 2 or n_side % 2:
        raise ArgumentError(f"n_side must be an even integer >= 2, got {n_side}")
    if not radius_km > 0:
        raise ArgumentError(f"cell radius must be positive, got {radius_km}")
    spacing = hex_spacing(radius_km)
    cols, rows = np.meshgrid(np.arange(n_side), np.arange(n_side))
    x = (cols + 0.5 * (rows % 2)) * spacing
    y = rows * spacing * math.sqrt(3.0) / 2.0
    points = np.column_stack([x.ravel(), y.ravel()])
    return PointPattern(points, hex_extent(radius_km, n_side), PatternKind.HEXAGONAL)


def poisson_pattern(lam: float, extent, rng: np.random.Generator) -> PointPattern:
    """Homogeneous Poisson pattern of intensity ``lam`` on the torus."""
    if not lam > 0:
        raise ArgumentError(f"station intensity must be positive, got {lam}")
    width, height = extent
    count = rng.poisson(lam * width * height)
    points = rng.uniform(size=(count, 2)) * np.array([width, height])
    return PointPattern(points, (width, height), PatternKind.POISSON)


def perturbed_hex_pattern(
    radius_km: float, n_side: int, displacement_std: float, rng: np.random.Generator
) -> PointPattern:
    """Hexagonal sites moved by iid Gaussian displacements, wrapped on the torus."""
    if displacement_std < 0:
        raise ArgumentError(f"displacement_std must be >= 0, got {displacement_std}")
    lattice = hex_pattern(radius_km, n_side)
    extent = np.asarray(lattice.extent)
    moved = lattice.points + rng.normal(0.0, displacement_std, size=lattice.points.shape)
    moved = np.mod(moved, extent)
    moved = np.where(moved >= extent, 0.0, moved)
    return PointPattern(moved, lattice.extent, PatternKind.PERTURBED_HEXAGONAL)


class Layout(ABC):
    """Recipe for the station pattern of one realization."""

    kind: PatternKind

    @abstractmethod
    def build(self, rng: np.random.Generator) -> PointPattern:
        """Draw (or construct) the pattern."""
        ...

    @property
    @abstractmethod
    def extent(self) -> tuple[float, float]: ...

    @property
    @abstractmethod
    def intensity(self) -> float:
        """Station intensity the layout targets, per km^2."""
        ...


class HexLayout(Layout):
    kind = PatternKind.HEXAGONAL

    def __init__(self, radius_km: float, n_side: int):
        self.radius_km = radius_km
        self.n_side = n_side
        self._pattern = hex_pattern(radius_km, n_side)

    def build(self, rng: np.random.Generator) -> PointPattern:
        return self._pattern

    @property
    def extent(self) -> tuple[float, float]:
        return self._pattern.extent

    @property
    def intensity(self) -> float:
        return 1.0 / (math.pi * self.radius_km**2)


class PoissonLayout(Layout):
    """Poisson stations on the same torus a hexagonal layout would use."""

    kind = PatternKind.POISSON

    def __init__(self, radius_km: float, n_side: int):
        self.radius_km = radius_km
        self._extent = hex_extent(radius_km, n_side)

    def build(self, rng: np.random.Generator) -> PointPattern:
        return poisson_pattern(self.intensity, self._extent, rng)

    @property
    def extent(self) -> tuple[float, float]:
        return self._extent

    @property
    def intensity(self) -> float:
        return 1.0 / (math.pi * self.radius_km**2)


class PerturbedHexLayout(HexLayout):
    kind = PatternKind.PERTURBED_HEXAGONAL

    def __init__(self, radius_km: float, n_side: int, displacement_km: float):
        super().__init__(radius_km, n_side)
        self.displacement_km = displacement_km

    def build(self, rng: np.random.Generator) -> PointPattern:
        return perturbed_hex_pattern(self.radius_km, self.n_side, self.displacement_km, rng)


def make_layout(
    kind: PatternKind | str, radius_km: float, n_side: int, displacement_km: float = 0.0
) -> Layout:
    match PatternKind(kind):
        case PatternKind.HEXAGONAL:
            return HexLayout(radius_km, n_side)
        case PatternKind.POISSON:
            return PoissonLayout(radius_km, n_side)
        case PatternKind.PERTURBED_HEXAGONAL:
            return PerturbedHexLayout(radius_km, n_side, displacement_km)
