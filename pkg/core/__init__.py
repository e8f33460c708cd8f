"""Core module for Poissonize: analytic laws, simulation and statistics."""

from .analytic import PathLossLaw, SinrLaw
from .models import EquivalentPoisson, PropagationModel, ShadowingSpec, equivalent_poisson
from .sweep import SweepOrchestrator, convergence_sweep

__all__ = [
    "EquivalentPoisson",
    "PathLossLaw",
    "PropagationModel",
    "ShadowingSpec",
    "SinrLaw",
    "SweepOrchestrator",
    "convergence_sweep",
    "equivalent_poisson",
]
