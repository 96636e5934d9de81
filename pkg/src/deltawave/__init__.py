"""Steady-state simulator for a driven cyclic (Delta-type) three-level
artificial atom coupled to an open 1D transmission line."""

from .errors import (
    ConfigError,
    DegenerateSteadyState,
    DomainError,
    NonPhysicalResult,
    SimulatorError,
    StepTooLarge,
)
from .model import (
    PAPER_ATOM,
    PAPER_DRIVES,
    AtomParams,
    DensityMatrix,
    DriveConfig,
    Rabi,
    ValidationReport,
    pure_dephasing,
    validate,
)
from .liouvillian import build_dissipator, build_hamiltonian, build_liouvillian
from .steady import evolve, solve_steady, steady_convergence_report, steady_state
from . import analytic, experiments, waveguide

__version__ = "0.1.0"

__all__ = [
    "AtomParams", "DriveConfig", "DensityMatrix", "Rabi", "ValidationReport",
    "PAPER_ATOM", "PAPER_DRIVES", "validate", "pure_dephasing",
    "build_hamiltonian", "build_dissipator", "build_liouvillian",
    "steady_state", "solve_steady", "evolve", "steady_convergence_report",
    "analytic", "experiments", "waveguide",
    "SimulatorError", "ConfigError", "DomainError", "DegenerateSteadyState",
    "NonPhysicalResult", "StepTooLarge",
]
