"""Entanglement life-cycle events: sudden death, sudden birth, revival.

Events are zero crossings of a concurrence series.  A partition that
starts entangled dies when its concurrence first reaches zero and revives
when it returns; a partition that starts unentangled is born when its
concurrence first becomes positive.  A closed-form threshold on the
transferred population provides an independent oracle for the qubit-pair
death and reservoir-pair birth conditions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .amplitude import c0_closed_form, time_grid
from .concurrence import ConcurrenceSeries, SeriesMeta
from .spectral import ReservoirSpectrum
from .states import Partition, validate_alpha

__all__ = [
    "EventKind",
    "EntanglementEvent",
    "Q1Q2Regime",
    "R1R2Regime",
    "detect_events",
    "threshold_u_star",
    "bisect_crossing",
    "classify_q1q2_regime",
    "classify_r1r2_regime",
    "classify_q1q2_from_events",
    "classify_r1r2_from_series",
    "pair_concurrence_series",
]

DEFAULT_ZERO_TOL = 1e-12


class EventKind(Enum):
    DEATH = "Death"
    BIRTH = "Birth"
    REVIVAL = "Revival"


class Q1Q2Regime(Enum):
    """Qubit-pair fate on the observed window."""

    NO_ESD = "NoESD"
    ESD_WITH_REVIVAL = "ESDWithRevival"
    PERMANENT_ESD = "PermanentESD"


class R1R2Regime(Enum):
    """Reservoir-pair onset of entanglement."""

    IMMEDIATE_BIRTH = "ImmediateBirth"
    SUDDEN_BIRTH = "SuddenBirth"


@dataclass(frozen=True)
class EntanglementEvent:
    kind: EventKind
    t: float
    partition: Partition


def bisect_crossing(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-8,
) -> float:
    """Bisect a sign change of ``func`` on [lo, hi] to width ``tol``.

    The endpoints must have opposite signs (zero counts as negative).
    """
    f_lo = func(lo)
    lo_positive = f_lo > 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (func(mid) > 0.0) == lo_positive:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def detect_events(
    series: ConcurrenceSeries,
    zero_tol: float = DEFAULT_ZERO_TOL,
    refine: Callable[[float], float] | None = None,
) -> list[EntanglementEvent]:
    """Locate death, birth, and revival events in a concurrence series.

    Scans the uniform grid for sign changes of (concurrence - zero_tol).
    When ``refine`` (the continuous-time concurrence function) is given,
    each bracket is sharpened by bisection to a width of 1e-8; otherwise
    the crossing is placed by linear interpolation between the bracketing
    grid points, which is only one-grid-step accurate because stored
    values are clamped at zero on the dead side.

    Ghost suppression: a curve that merely grazes zero (at a node of the
    amplitude) can dip below ``zero_tol`` without ever reaching zero.  In
    a genuine dead stretch the concurrence values are exactly 0.0, the
    clamp of the X-state formula being active, so a death bracket whose
    interior stays strictly positive is discarded together with its
    revival partner.  Likewise a revival that never rises above
    ``zero_tol`` produces no crossing and therefore no event.

    Parameters
    ----------
    series : ConcurrenceSeries
        Non-empty series on a uniform grid.
    zero_tol : float
        Below this value entanglement counts as zero.
    refine : callable, optional
        Continuous concurrence C(t) used for bisection refinement.

    Returns
    -------
    list of EntanglementEvent
        Time-ordered events; death and revival alternate after the first
        death.
    """
    times, values = series.times, series.values
    if len(times) == 0:
        raise ValueError("cannot detect events in an empty series")
    steps = np.diff(times)
    if len(steps) and not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise ValueError("event detection requires a uniform time grid")

    above = values > zero_tol
    transitions = list(np.nonzero(above[:-1] != above[1:])[0])

    # drop grazing-touch pairs: a down-crossing whose dead stretch never
    # clamps to exactly zero is not a death
    kept: list[int] = []
    pos = 0
    while pos < len(transitions):
        i = transitions[pos]
        if above[i]:
            end = transitions[pos + 1] if pos + 1 < len(transitions) else None
            interior = values[i + 1: (end + 1 if end is not None else len(values))]
            if len(interior) and np.min(interior) > 0.0:
                pos += 2 if end is not None else 1
                continue
        kept.append(i)
        pos += 1

    events: list[EntanglementEvent] = []
    seen_death = False
    for i in kept:
        t_cross = _locate_crossing(
            times[i], times[i + 1],
            values[i] - zero_tol, values[i + 1] - zero_tol,
            zero_tol, refine,
        )
        if above[i]:
            kind = EventKind.DEATH
            seen_death = True
        else:
            kind = EventKind.REVIVAL if seen_death else EventKind.BIRTH
        events.append(EntanglementEvent(kind=kind, t=t_cross, partition=series.partition))
    return events


def _locate_crossing(t_lo, t_hi, g_lo, g_hi, zero_tol, refine) -> float:
    if refine is not None:
        func = lambda t: refine(t) - zero_tol
        # recomputed endpoint signs can disagree with stored values only
        # in degenerate near-zero brackets; fall back to interpolation
        if (func(t_lo) > 0.0) != (func(t_hi) > 0.0):
            return bisect_crossing(func, t_lo, t_hi)
    if g_lo == g_hi:
        return 0.5 * (t_lo + t_hi)
    return float(t_lo + (t_hi - t_lo) * g_lo / (g_lo - g_hi))


def threshold_u_star(alpha: float) -> float | None:
    """Critical transferred population u* for the qubit-pair death.

    The qubit pair stays entangled while the transferred population
    u = c_tilde^2 satisfies alpha (alpha u^2 + 2 u + 1 - alpha) < 1; the
    positive root of the quadratic is

        u* = (sqrt(alpha^2 - alpha + 2) - 1) / alpha.

    Returns None when no death is possible: at alpha = 0 the coherence
    always dominates, and for u* > 1 (alpha < 1/3) the threshold is out of
    reach.  By the exchange symmetry of the two pair reductions, the same
    value bounds the reservoir pair: it is entangled exactly when
    c0^2 < u*.
    """
    validate_alpha(alpha)
    if alpha == 0.0:
        return None
    u = (math.sqrt(alpha * alpha - alpha + 2.0) - 1.0) / alpha
    return u if u <= 1.0 else None


def _pair_concurrence_values(alpha: float, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    # p is the local excitation weight of the partition, q its complement;
    # mirrors the X-matrix entries so grid values match the object path.
    a = alpha * p * p / 3.0
    d = (alpha * q * q + 2.0 * q + (1.0 - alpha)) / 3.0
    z = p / 3.0
    return 2.0 * np.maximum(0.0, z - np.sqrt(np.maximum(a, 0.0) * np.maximum(d, 0.0)))


def pair_concurrence_series(
    partition: Partition,
    alpha: float,
    s: ReservoirSpectrum,
    t_max: float,
    dt: float,
) -> tuple[ConcurrenceSeries, Callable[[float], float]]:
    """Closed-form concurrence of the qubit or reservoir pair on a grid.

    Returns the series together with the continuous-time concurrence
    function used for event refinement.
    """
    if partition not in (Partition.Q1Q2, Partition.R1R2):
        raise ValueError(f"pair series only defined for q1q2/r1r2, got {partition}")
    validate_alpha(alpha)
    times = time_grid(t_max, dt)

    def values_at(c0):
        # squared amplitudes formed exactly as the state builders form them,
        # so these values match the object pipeline bit for bit
        c_tilde = np.sqrt(np.clip(1.0 - c0 * c0, 0.0, None))
        excited = c0 * c0
        transferred = c_tilde * c_tilde
        if partition is Partition.Q1Q2:
            return _pair_concurrence_values(alpha, excited, transferred)
        return _pair_concurrence_values(alpha, transferred, excited)

    series = ConcurrenceSeries(
        partition=partition,
        times=times,
        values=values_at(c0_closed_form(s, times)),
        meta=SeriesMeta(alpha=alpha, gamma0=s.gamma0, gamma=s.gamma,
                        solver="closed", dt=dt),
    )

    def continuous(t: float) -> float:
        return float(values_at(np.asarray(c0_closed_form(s, t))))

    return series, continuous


def classify_q1q2_from_events(events: list[EntanglementEvent]) -> Q1Q2Regime:
    """Fate of the qubit pair given its detected events (window-limited)."""
    kinds = [e.kind for e in events]
    if EventKind.DEATH not in kinds:
        return Q1Q2Regime.NO_ESD
    if EventKind.REVIVAL in kinds:
        return Q1Q2Regime.ESD_WITH_REVIVAL
    return Q1Q2Regime.PERMANENT_ESD


def classify_r1r2_from_series(
    series: ConcurrenceSeries,
    events: list[EntanglementEvent],
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> R1R2Regime:
    """Birth mode of the reservoir pair.

    Immediate when the concurrence is already positive at the first grid
    step; sudden when a later birth event exists.
    """
    if len(series.values) < 2:
        raise ValueError("need at least two grid points to classify the birth")
    if series.values[1] > zero_tol:
        return R1R2Regime.IMMEDIATE_BIRTH
    if any(e.kind is EventKind.BIRTH for e in events):
        return R1R2Regime.SUDDEN_BIRTH
    raise ValueError("reservoir pair shows no entanglement within the window")


def classify_q1q2_regime(
    alpha: float,
    s: ReservoirSpectrum,
    t_max: float,
    dt: float = 1e-3,
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> Q1Q2Regime:
    """Classify the qubit-pair fate on [0, t_max] from the closed form.

    The verdict is certified only on the observed window: permanence means
    the concurrence stayed at zero until t_max.
    """
    series, continuous = pair_concurrence_series(Partition.Q1Q2, alpha, s, t_max, dt)
    events = detect_events(series, zero_tol, refine=continuous)
    return classify_q1q2_from_events(events)


def classify_r1r2_regime(
    alpha: float,
    s: ReservoirSpectrum,
    t_max: float,
    dt: float = 1e-3,
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> R1R2Regime:
    """Classify the reservoir-pair birth mode on [0, t_max]."""
    series, continuous = pair_concurrence_series(Partition.R1R2, alpha, s, t_max, dt)
    events = detect_events(series, zero_tol, refine=continuous)
    return classify_r1r2_from_series(series, events, zero_tol)
