"""Entanglement dynamics of two qubits in independent lossy cavities.

Tracks the concurrence of all four bipartitions of (qubit 1, qubit 2,
reservoir 1, reservoir 2) under Lorentzian reservoir memory, detects
entanglement sudden death, sudden birth, and revival events, and maps the
regime structure over the initial-state weight.
"""

from .amplitude import (
    AmplitudeInstabilityError,
    AmplitudePair,
    Regime,
    c0_closed_form,
    c0_closed_series,
    c0_discrete_modes,
    c0_volterra,
    classify_regime,
    closed_form_pair,
    run_discrete_modes,
)
from .concurrence import (
    ConcurrenceSeries,
    EigenSolverError,
    InvalidStateError,
    SeriesMeta,
    concurrence_wootters,
    concurrence_x,
)
from .dynamics import StateValidationError, TrajectoryResult, run_trajectory
from .events import (
    EntanglementEvent,
    EventKind,
    Q1Q2Regime,
    R1R2Regime,
    classify_q1q2_regime,
    classify_r1r2_regime,
    detect_events,
    threshold_u_star,
)
from .spectral import (
    ReservoirSpectrum,
    memory_kernel,
    memory_kernel_quadrature,
    spectral_density,
)
from .states import (
    Partition,
    ValidationReport,
    XMatrix,
    rho_q1q2,
    rho_q1r1,
    rho_q1r2,
    rho_r1r2,
    validate_density_matrix,
)
from .sweep import figure2_curves, regime_boundary_map, sweep_alpha_time

__version__ = "0.1.0"

__all__ = [
    "AmplitudeInstabilityError",
    "AmplitudePair",
    "ConcurrenceSeries",
    "EigenSolverError",
    "EntanglementEvent",
    "EventKind",
    "InvalidStateError",
    "Partition",
    "Q1Q2Regime",
    "R1R2Regime",
    "Regime",
    "ReservoirSpectrum",
    "SeriesMeta",
    "StateValidationError",
    "TrajectoryResult",
    "ValidationReport",
    "XMatrix",
    "c0_closed_form",
    "c0_closed_series",
    "c0_discrete_modes",
    "c0_volterra",
    "classify_q1q2_regime",
    "classify_r1r2_regime",
    "classify_regime",
    "closed_form_pair",
    "concurrence_wootters",
    "concurrence_x",
    "detect_events",
    "figure2_curves",
    "memory_kernel",
    "memory_kernel_quadrature",
    "regime_boundary_map",
    "rho_q1q2",
    "rho_q1r1",
    "rho_q1r2",
    "rho_r1r2",
    "run_discrete_modes",
    "run_trajectory",
    "spectral_density",
    "sweep_alpha_time",
    "threshold_u_star",
    "validate_density_matrix",
]
