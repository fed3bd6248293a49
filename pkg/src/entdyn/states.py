"""Reduced two-party density matrices of the qubit-reservoir system.

The joint state of (qubit 1, qubit 2, reservoir 1, reservoir 2) starts from
a one-parameter entangled qubit pair with both reservoirs in vacuum.  Every
two-party reduction stays of X form in the basis |11>, |10>, |01>, |00>:
nonzero entries sit only on the diagonal (a, b, c, d) and the anti-diagonal
(inner coherence z between |10> and |01>, outer coherence w between |11>
and |00>).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .amplitude import AmplitudePair

__all__ = [
    "Partition",
    "XMatrix",
    "ValidationReport",
    "validate_alpha",
    "rho_q1q2",
    "rho_r1r2",
    "rho_q1r1",
    "rho_q1r2",
    "partition_state",
    "validate_density_matrix",
]


class Partition(Enum):
    """Bipartition of the four subsystems whose entanglement is tracked."""

    Q1Q2 = "q1q2"
    R1R2 = "r1r2"
    Q1R1 = "q1r1"
    Q1R2 = "q1r2"


@dataclass(frozen=True)
class XMatrix:
    """X-form 4x4 density matrix in the basis |11>, |10>, |01>, |00>.

    Physical instances have unit trace and satisfy |z| <= sqrt(b c) and
    |w| <= sqrt(a d); use :func:`validate_density_matrix` to check.
    """

    a: float
    b: float
    c: float
    d: float
    z: complex
    w: complex = 0.0 + 0.0j

    def trace(self) -> float:
        return self.a + self.b + self.c + self.d

    def to_matrix(self) -> np.ndarray:
        """Dense 4x4 complex matrix (Hermitian by construction)."""
        z, w = complex(self.z), complex(self.w)
        return np.array(
            [
                [self.a, 0.0, 0.0, w],
                [0.0, self.b, z, 0.0],
                [0.0, z.conjugate(), self.c, 0.0],
                [w.conjugate(), 0.0, 0.0, self.d],
            ],
            dtype=complex,
        )


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the physicality checks on an X matrix."""

    violations: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_alpha(alpha: float) -> float:
    """Check the initial-state weight alpha; valid range is [0, 1]."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    return float(alpha)


def _pair_state(alpha: float, p: float, q: float) -> XMatrix:
    # Shared layout of the qubit-qubit / reservoir-reservoir reductions,
    # with p the local excitation weight and q = 1 - p its complement.
    a = alpha * p * p / 3.0
    b = (alpha * p * q + p) / 3.0
    d = (alpha * q * q + 2.0 * q + (1.0 - alpha)) / 3.0
    return XMatrix(a=a, b=b, c=b, d=d, z=complex(p / 3.0), w=0.0j)


def rho_q1q2(alpha: float, amp: AmplitudePair) -> XMatrix:
    """Reduced state of the two qubits at amplitude ``amp``.

    At t = 0 (amp = (1, 0)) this reproduces the initial qubit pair:
    diag(alpha, 1, 1, 1 - alpha)/3 with inner coherence 1/3.
    """
    validate_alpha(alpha)
    p = amp.c0 * amp.c0
    q = amp.c_tilde * amp.c_tilde
    return _pair_state(alpha, p, q)


def rho_r1r2(alpha: float, amp: AmplitudePair) -> XMatrix:
    """Reduced state of the two reservoirs; the qubit-pair layout with the
    roles of the excited and transferred weights exchanged."""
    validate_alpha(alpha)
    p = amp.c_tilde * amp.c_tilde
    q = amp.c0 * amp.c0
    return _pair_state(alpha, p, q)


def rho_q1r1(alpha: float, amp: AmplitudePair) -> XMatrix:
    """Reduced state of qubit 1 with its own reservoir.

    The coherence block is rank deficient: |z|^2 = b c identically, so
    this partition is entangled exactly when c0 * c_tilde != 0.
    """
    validate_alpha(alpha)
    m = (1.0 + alpha) / 3.0
    return XMatrix(
        a=0.0,
        b=m * amp.c0 * amp.c0,
        c=m * amp.c_tilde * amp.c_tilde,
        d=(2.0 - alpha) / 3.0,
        z=complex(m * amp.c0 * amp.c_tilde),
        w=0.0j,
    )


def rho_q1r2(alpha: float, amp: AmplitudePair) -> XMatrix:
    """Reduced state of qubit 1 with the opposite reservoir."""
    validate_alpha(alpha)
    p = amp.c0 * amp.c0
    q = amp.c_tilde * amp.c_tilde
    return XMatrix(
        a=alpha * p * q / 3.0,
        b=(p + alpha * p * p) / 3.0,
        c=(q + alpha * q * q) / 3.0,
        d=(2.0 - alpha + alpha * p * q) / 3.0,
        z=complex(amp.c0 * amp.c_tilde / 3.0),
        w=0.0j,
    )


_BUILDERS = {
    Partition.Q1Q2: rho_q1q2,
    Partition.R1R2: rho_r1r2,
    Partition.Q1R1: rho_q1r1,
    Partition.Q1R2: rho_q1r2,
}


def partition_state(partition: Partition, alpha: float, amp: AmplitudePair) -> XMatrix:
    """Reduced density matrix of the requested partition."""
    return _BUILDERS[partition](alpha, amp)


def validate_density_matrix(m: XMatrix) -> ValidationReport:
    """Check unit trace and positivity of an X matrix.

    Positivity of an X matrix reduces to nonnegative diagonal entries with
    |z| <= sqrt(b c) and |w| <= sqrt(a d); Hermiticity holds by
    construction of the storage format.  Tolerances: 1e-10 on the trace and
    the coherence bounds, 1e-12 on diagonal nonnegativity.
    """
    violations: list[str] = []
    trace_error = abs(m.trace() - 1.0)
    if trace_error > 1e-10:
        violations.append(f"trace deviates from 1 by {trace_error:.3e}")
    for name, value in (("a", m.a), ("b", m.b), ("c", m.c), ("d", m.d)):
        if value < -1e-12:
            violations.append(f"diagonal entry {name} negative: {value:.3e}")
    inner_bound = np.sqrt(max(m.b, 0.0) * max(m.c, 0.0))
    if abs(m.z) > inner_bound + 1e-10:
        violations.append(
            f"|z| exceeds sqrt(b c) by {abs(m.z) - inner_bound:.3e}"
        )
    outer_bound = np.sqrt(max(m.a, 0.0) * max(m.d, 0.0))
    if abs(m.w) > outer_bound + 1e-10:
        violations.append(
            f"|w| exceeds sqrt(a d) by {abs(m.w) - outer_bound:.3e}"
        )
    return ValidationReport(violations=tuple(violations))
