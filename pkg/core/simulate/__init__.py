"""Monte Carlo simulation of base-station patterns and the typical user."""

from .base import (
    PatternKind,
    PointPattern,
    TruncationWindow,
    empirical_homogeneity,
    stream,
    torus_distance,
)
from .engine import (
    TypicalUserBatch,
    TypicalUserSample,
    expected_log_count,
    poisson_log_count,
    sample_sigma_scaled_losses,
    sample_typical_user,
    sample_typical_users,
    simulated_energy_efficiency,
)
from .layouts import (
    HexLayout,
    Layout,
    PerturbedHexLayout,
    PoissonLayout,
    hex_extent,
    hex_pattern,
    make_layout,
    perturbed_hex_pattern,
    poisson_pattern,
)
from .shadowing import draw_shadowing

__all__ = [
    "PatternKind",
    "PointPattern",
    "TruncationWindow",
    "empirical_homogeneity",
    "stream",
    "torus_distance",
    "TypicalUserBatch",
    "TypicalUserSample",
    "expected_log_count",
    "poisson_log_count",
    "sample_sigma_scaled_losses",
    "sample_typical_user",
    "sample_typical_users",
    "simulated_energy_efficiency",
    "HexLayout",
    "Layout",
    "PerturbedHexLayout",
    "PoissonLayout",
    "hex_extent",
    "hex_pattern",
    "make_layout",
    "perturbed_hex_pattern",
    "poisson_pattern",
    "draw_shadowing",
]
