"""Full trajectory pipeline: amplitude -> states -> concurrence -> events.

The two qubit-reservoir pairs are identical and independent, so one
amplitude series feeds the reduced states of all four partitions.  Every
grid point is validated as a physical state before its concurrence enters
a series.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import amplitude as amp_mod
from .amplitude import AmplitudePair, closed_form_pair
from .concurrence import ConcurrenceSeries, SeriesMeta, concurrence_x
from .events import (
    DEFAULT_ZERO_TOL,
    EntanglementEvent,
    Q1Q2Regime,
    R1R2Regime,
    classify_q1q2_from_events,
    classify_r1r2_from_series,
    detect_events,
)
from .spectral import ReservoirSpectrum
from .states import (
    Partition,
    partition_state,
    validate_alpha,
    validate_density_matrix,
)

__all__ = ["SOLVERS", "StateValidationError", "TrajectoryResult", "run_trajectory"]

SOLVERS = ("closed", "volterra", "modes")


class StateValidationError(RuntimeError):
    """A reduced state failed its physicality checks during a trajectory."""

    def __init__(self, t: float, partition: Partition, violations: tuple[str, ...]):
        super().__init__(
            f"invalid {partition.value} state at t={t:.6g}: " + "; ".join(violations)
        )
        self.t = t
        self.partition = partition
        self.violations = violations


@dataclass(frozen=True)
class TrajectoryResult:
    """Everything computed along one trajectory.

    ``series`` holds one concurrence series per partition on the shared
    amplitude grid.  ``events`` and ``regimes`` cover the qubit pair and
    the reservoir pair; the mixed partitions q1r1/q1r2 vanish only at
    zeros of c0 * c_tilde and are reported as series without event
    classification.  Regime labels are certified on [0, t_max] only.
    """

    alpha: float
    spectrum: ReservoirSpectrum
    solver: str
    t_max: float
    dt: float
    amplitude: list[AmplitudePair]
    series: dict[Partition, ConcurrenceSeries]
    events: dict[Partition, list[EntanglementEvent]]
    regimes: dict[Partition, Q1Q2Regime | R1R2Regime]


def _amplitude_series(
    s: ReservoirSpectrum,
    t_max: float,
    dt: float,
    solver: str,
    n_modes: int,
    window: float | None,
) -> list[AmplitudePair]:
    if solver == "closed":
        return amp_mod.c0_closed_series(s, t_max, dt)
    if solver == "volterra":
        return amp_mod.c0_volterra(s, t_max, dt)
    if solver == "modes":
        if window is None:
            window = 20.0 * s.gamma0
        return amp_mod.c0_discrete_modes(s, n_modes, window, t_max, dt)
    raise ValueError(f"unknown solver {solver!r}; expected one of {SOLVERS}")


def run_trajectory(
    alpha: float,
    s: ReservoirSpectrum,
    t_max: float = 15.0,
    dt: float = 1e-3,
    solver: str = "closed",
    zero_tol: float = DEFAULT_ZERO_TOL,
    n_modes: int = 4000,
    window: float | None = None,
) -> TrajectoryResult:
    """Compute the four-partition concurrence trajectory.

    Parameters
    ----------
    alpha : float
        Initial-state weight in [0, 1].
    s : ReservoirSpectrum
    t_max, dt : float
        Grid extent and step, in units of 1/gamma0 when gamma0 = 1.
    solver : str
        Amplitude route: "closed" (default), "volterra", or "modes".
    zero_tol : float
        Zero threshold for event detection.
    n_modes, window : int, float
        Discrete-mode bath size and half-width (solver "modes" only);
        window defaults to 20 * gamma0.

    Raises
    ------
    StateValidationError
        If any reduced state fails validation (with time and partition).
    """
    validate_alpha(alpha)
    pairs = _amplitude_series(s, t_max, dt, solver, n_modes, window)
    times = np.array([p.t for p in pairs])
    meta = SeriesMeta(alpha=alpha, gamma0=s.gamma0, gamma=s.gamma,
                      solver=solver, dt=dt)

    series: dict[Partition, ConcurrenceSeries] = {}
    for partition in Partition:
        values = np.empty(len(pairs))
        for i, pair in enumerate(pairs):
            state = partition_state(partition, alpha, pair)
            report = validate_density_matrix(state)
            if not report.ok:
                raise StateValidationError(pair.t, partition, report.violations)
            values[i] = concurrence_x(state, validate=False)
        series[partition] = ConcurrenceSeries(
            partition=partition, times=times, values=values, meta=meta
        )

    refines: dict[Partition, Callable[[float], float] | None] = {
        Partition.Q1Q2: None,
        Partition.R1R2: None,
    }
    if solver == "closed":
        def make_refine(partition: Partition) -> Callable[[float], float]:
            def continuous(t: float) -> float:
                return concurrence_x(
                    partition_state(partition, alpha, closed_form_pair(s, t)),
                    validate=False,
                )
            return continuous

        refines = {p: make_refine(p) for p in (Partition.Q1Q2, Partition.R1R2)}

    events = {
        p: detect_events(series[p], zero_tol, refine=refines[p])
        for p in (Partition.Q1Q2, Partition.R1R2)
    }
    regimes: dict[Partition, Q1Q2Regime | R1R2Regime] = {
        Partition.Q1Q2: classify_q1q2_from_events(events[Partition.Q1Q2])
    }
    try:
        regimes[Partition.R1R2] = classify_r1r2_from_series(
            series[Partition.R1R2], events[Partition.R1R2], zero_tol
        )
    except ValueError:
        # window too short for the reservoir pair to be born; leave unlabeled
        pass
    return TrajectoryResult(
        alpha=alpha,
        spectrum=s,
        solver=solver,
        t_max=t_max,
        dt=dt,
        amplitude=pairs,
        series=series,
        events=events,
        regimes=regimes,
    )
