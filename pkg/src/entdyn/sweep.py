"""Parameter sweeps over the initial-state weight and the coupling ratio.

Produces the long-format tables behind the concurrence surfaces (alpha vs
time) and the fixed-alpha curves across coupling strengths, plus the map
of qubit-pair regimes with its two critical alpha values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .amplitude import c0_closed_form, time_grid
from .dynamics import TrajectoryResult, run_trajectory
from .events import (
    Q1Q2Regime,
    R1R2Regime,
    classify_q1q2_regime,
    classify_r1r2_regime,
    threshold_u_star,
)
from .spectral import ReservoirSpectrum
from .states import Partition, validate_alpha

__all__ = [
    "SweepSurface",
    "BoundaryMap",
    "CurveSet",
    "sweep_alpha_time",
    "regime_boundary_map",
    "figure2_curves",
]


@dataclass(frozen=True)
class SweepSurface:
    """Concurrence of all partitions over an (alpha, t) grid."""

    alphas: np.ndarray
    times: np.ndarray
    values: dict[Partition, np.ndarray]  # shape (n_alpha, n_time)

    def iter_rows(self) -> Iterator[tuple[float, float, str, float]]:
        """Rows (alpha, t, partition, concurrence), sorted by alpha, then t,
        then partition in declaration order."""
        for i, alpha in enumerate(self.alphas):
            for j, t in enumerate(self.times):
                for partition in Partition:
                    yield float(alpha), float(t), partition.value, float(
                        self.values[partition][i, j]
                    )

    @property
    def n_rows(self) -> int:
        return len(self.alphas) * len(self.times) * len(Partition)


@dataclass(frozen=True)
class BoundaryMap:
    """Per-alpha regime labels plus the bisected critical alphas.

    ``esd_boundary`` separates no-death from death regimes and
    ``permanent_boundary`` separates death-with-revival from permanent
    death; either is None when the sweep grid shows no such transition.
    Labels are certified on [0, t_max] only.
    """

    alphas: np.ndarray
    q1q2: tuple[Q1Q2Regime, ...]
    r1r2: tuple[R1R2Regime | None, ...]
    esd_boundary: float | None
    permanent_boundary: float | None
    t_max: float
    dt: float


@dataclass(frozen=True)
class CurveSet:
    """Fixed-alpha trajectories across several coupling ratios."""

    alpha: float
    gamma_ratios: tuple[float, ...]
    trajectories: dict[float, TrajectoryResult]

    def iter_rows(self) -> Iterator[tuple[float, float, str, float]]:
        """Rows (gamma_ratio, t, partition, concurrence) in ratio order."""
        for ratio in self.gamma_ratios:
            result = self.trajectories[ratio]
            times = result.series[Partition.Q1Q2].times
            for j, t in enumerate(times):
                for partition in Partition:
                    yield ratio, float(t), partition.value, float(
                        result.series[partition].values[j]
                    )


def _checked_alphas(alphas) -> np.ndarray:
    arr = np.sort(np.asarray(alphas, dtype=float))
    if arr.size == 0:
        raise ValueError("alpha grid must not be empty")
    for alpha in arr:
        validate_alpha(alpha)
    return arr


def sweep_alpha_time(
    s: ReservoirSpectrum,
    alphas,
    t_max: float = 15.0,
    dt: float = 1e-3,
) -> SweepSurface:
    """Run one trajectory per alpha and collect the concurrence surface.

    Deterministic for fixed inputs; rows come out sorted by alpha, t,
    partition regardless of evaluation order.
    """
    arr = _checked_alphas(alphas)
    times = time_grid(t_max, dt)
    values = {p: np.empty((len(arr), len(times))) for p in Partition}
    for i, alpha in enumerate(arr):
        result = run_trajectory(float(alpha), s, t_max=t_max, dt=dt, solver="closed")
        for partition in Partition:
            values[partition][i] = result.series[partition].values
    return SweepSurface(alphas=arr, times=times, values=values)


def _death_reachable(alpha: float, u_max: float) -> bool:
    u_star = threshold_u_star(alpha)
    return u_star is not None and u_max > u_star


def _bisect_boundary(predicate, lo: float, hi: float, tol: float = 1e-3) -> float:
    # predicate is False at lo, True at hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def regime_boundary_map(
    s: ReservoirSpectrum,
    alphas,
    t_max: float = 15.0,
    dt: float = 1e-3,
) -> BoundaryMap:
    """Classify the pair regimes per alpha and bisect the critical alphas.

    The death-existence boundary uses the threshold condition (transferred
    population crossing u*) evaluated on the closed-form amplitude, which
    stays sharp arbitrarily close to the boundary; the revival-to-permanent
    boundary uses the event classifier.  Both are bisected to 1e-3.
    """
    arr = _checked_alphas(alphas)
    q1q2_labels = tuple(
        classify_q1q2_regime(float(a), s, t_max, dt) for a in arr
    )
    r1r2_labels: list[R1R2Regime | None] = []
    for a in arr:
        try:
            r1r2_labels.append(classify_r1r2_regime(float(a), s, t_max, dt))
        except ValueError:
            r1r2_labels.append(None)

    c0 = c0_closed_form(s, time_grid(t_max, dt))
    u_max = float(np.max(1.0 - c0 * c0))

    esd_boundary = None
    reachable = [_death_reachable(float(a), u_max) for a in arr]
    for i in range(len(arr) - 1):
        if not reachable[i] and reachable[i + 1]:
            esd_boundary = _bisect_boundary(
                lambda a: _death_reachable(a, u_max), float(arr[i]), float(arr[i + 1])
            )
            break

    permanent_boundary = None
    for i in range(len(arr) - 1):
        if (
            q1q2_labels[i] is Q1Q2Regime.ESD_WITH_REVIVAL
            and q1q2_labels[i + 1] is Q1Q2Regime.PERMANENT_ESD
        ):
            permanent_boundary = _bisect_boundary(
                lambda a: classify_q1q2_regime(a, s, t_max, dt)
                is Q1Q2Regime.PERMANENT_ESD,
                float(arr[i]),
                float(arr[i + 1]),
            )
            break

    return BoundaryMap(
        alphas=arr,
        q1q2=q1q2_labels,
        r1r2=tuple(r1r2_labels),
        esd_boundary=esd_boundary,
        permanent_boundary=permanent_boundary,
        t_max=t_max,
        dt=dt,
    )


def figure2_curves(
    alpha: float = 0.35,
    gamma_ratios: tuple[float, ...] = (5.0, 0.1, 0.05),
    t_max: float = 15.0,
    dt: float = 1e-3,
    gamma0: float = 1.0,
    omega0: float | None = None,
) -> CurveSet:
    """Trajectories of all four partitions at fixed alpha for each ratio.

    The default ratios contrast one memoryless reservoir (gamma = 5
    gamma0) with two long-memory ones (0.1 and 0.05).
    """
    validate_alpha(alpha)
    if not gamma_ratios:
        raise ValueError("gamma_ratios must not be empty")
    trajectories: dict[float, TrajectoryResult] = {}
    for ratio in gamma_ratios:
        if ratio <= 0.0:
            raise ValueError(f"gamma ratio must be positive, got {ratio}")
        spectrum = ReservoirSpectrum(
            gamma0=gamma0,
            gamma=ratio * gamma0,
            omega0=omega0 if omega0 is not None else 100.0 * gamma0,
        )
        trajectories[ratio] = run_trajectory(
            alpha, spectrum, t_max=t_max, dt=dt, solver="closed"
        )
    return CurveSet(alpha=alpha, gamma_ratios=tuple(gamma_ratios),
                    trajectories=trajectories)
