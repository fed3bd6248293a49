"""Two-qubit concurrence: X-state closed form and the general construction.

The X-state formula is exact algebra on the six independent entries and is
what the trajectory pipeline evaluates.  The general spin-flip construction
(square roots of the eigenvalues of rho rho~) is kept as an independent
oracle; the two must agree to 1e-10 on any valid X matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import Partition, ValidationReport, XMatrix, validate_density_matrix

__all__ = [
    "InvalidStateError",
    "EigenSolverError",
    "concurrence_x",
    "concurrence_wootters",
    "SeriesMeta",
    "ConcurrenceSeries",
]

_SIGMA_YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ],
    dtype=complex,
)


class InvalidStateError(ValueError):
    """Raised when a matrix fails the density-matrix checks."""

    def __init__(self, message: str, report: ValidationReport | None = None):
        super().__init__(message)
        self.report = report


class EigenSolverError(RuntimeError):
    """Raised when the eigenvalue solve behind the general formula fails."""


def concurrence_x(m: XMatrix, validate: bool = True) -> float:
    """Concurrence of an X-form density matrix.

    C = 2 max{0, |z| - sqrt(a d), |w| - sqrt(b c)}

    Parameters
    ----------
    m : XMatrix
        Must pass :func:`entdyn.states.validate_density_matrix`.
    validate : bool
        Skip revalidation when the caller has already checked ``m``.

    Returns
    -------
    float
        Concurrence in [0, 1].
    """
    if validate:
        report = validate_density_matrix(m)
        if not report.ok:
            raise InvalidStateError(
                "not a physical X matrix: " + "; ".join(report.violations),
                report=report,
            )
    inner = abs(m.z) - np.sqrt(max(m.a, 0.0) * max(m.d, 0.0))
    outer = abs(m.w) - np.sqrt(max(m.b, 0.0) * max(m.c, 0.0))
    return 2.0 * max(0.0, inner, outer)


def _validate_general(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidStateError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise InvalidStateError("matrix is not Hermitian within 1e-10")
    if abs(np.trace(rho).real - 1.0) > 1e-10 or abs(np.trace(rho).imag) > 1e-10:
        raise InvalidStateError("trace differs from 1 by more than 1e-10")
    eigenvalues = np.linalg.eigvalsh(rho)
    if eigenvalues.min() < -1e-10:
        raise InvalidStateError(
            f"matrix has negative eigenvalue {eigenvalues.min():.3e}"
        )
    return rho


def concurrence_wootters(rho: np.ndarray) -> float:
    """Concurrence of a general two-qubit density matrix.

    The classic construction takes l1 >= l2 >= l3 >= l4 as the square
    roots of the eigenvalues of rho rho~, where
    rho~ = (sy x sy) rho* (sy x sy) is the spin-flipped state, and returns
    max{0, l1 - l2 - l3 - l4}.  Those square roots equal the singular
    values of A = sqrt(rho) (sy x sy) sqrt(rho)* (elementwise conjugate),
    because A A^dag = sqrt(rho) rho~ sqrt(rho); extracting them by SVD
    avoids squaring and re-rooting, which would amplify round-off on the
    zero eigenvalues of rank-deficient states far beyond 1e-10.
    Eigenvalues of rho below 1e-13 are treated as exact zeros when the
    root is formed, for the same reason.

    Parameters
    ----------
    rho : ndarray
        4x4 Hermitian, unit-trace, positive-semidefinite matrix in the
        basis |11>, |10>, |01>, |00> (any product basis works; the result
        is invariant under local unitaries).

    Raises
    ------
    InvalidStateError
        If ``rho`` fails the density-matrix checks (eigenvalues below
        -1e-10 included).
    EigenSolverError
        If an eigenvalue or singular-value solve does not converge.
    """
    rho = _validate_general(rho)
    try:
        eigenvalues, vectors = np.linalg.eigh(rho)
        eigenvalues = np.where(eigenvalues < 1e-13, 0.0, eigenvalues)
        sqrt_rho = (vectors * np.sqrt(eigenvalues)) @ vectors.conj().T
        flipped_root = sqrt_rho @ _SIGMA_YY @ sqrt_rho.conj()
        roots = np.linalg.svd(flipped_root, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"eigenvalue solve failed: {exc}") from exc
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


@dataclass(frozen=True)
class SeriesMeta:
    """Provenance of a concurrence series: parameters and solver identity."""

    alpha: float
    gamma0: float
    gamma: float
    solver: str
    dt: float


@dataclass(frozen=True)
class ConcurrenceSeries:
    """Concurrence of one partition sampled on a uniform time grid."""

    partition: Partition
    times: np.ndarray
    values: np.ndarray
    meta: SeriesMeta

    def __post_init__(self) -> None:
        if len(self.times) != len(self.values):
            raise ValueError("times and values must have equal length")
        if len(self.times) == 0:
            raise ValueError("series must not be empty")
