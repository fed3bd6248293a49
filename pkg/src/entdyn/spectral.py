"""Lorentzian reservoir spectra and their memory kernels.

Each qubit couples to its own zero-temperature bosonic reservoir whose
coupling spectrum is a Lorentzian line centred on the qubit transition.
The reservoir correlation function (memory kernel) is the Fourier
transform of that line and therefore decays as a plain exponential.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ReservoirSpectrum",
    "spectral_density",
    "memory_kernel",
    "memory_kernel_quadrature",
]


@dataclass(frozen=True)
class ReservoirSpectrum:
    """Lorentzian coupling spectrum of one qubit-reservoir pair.

    Parameters
    ----------
    gamma0 : float
        Qubit relaxation rate (inverse of the qubit relaxation time).
        Sets the weight of the spectrum; 1/gamma0 is the natural time
        unit of the model and all defaults assume gamma0 = 1.
    gamma : float
        Spectral half-width (inverse of the reservoir correlation time).
        The memory kernel decays as exp(-gamma*tau).
    omega0 : float
        Qubit transition frequency.  Only the detuning omega0 - omega
        enters the kernel, but the discrete-mode solver needs an absolute
        frequency grid, so it is kept explicit.  The default places the
        line far from zero frequency (100/gamma0) so the rotating-wave,
        single-excitation picture is comfortably valid.
    """

    gamma0: float = 1.0
    gamma: float = 0.1
    omega0: float = 100.0

    def __post_init__(self) -> None:
        if self.gamma0 <= 0.0:
            raise ValueError(f"gamma0 must be positive, got {self.gamma0}")
        if self.gamma <= 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.omega0 <= 0.0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")


def spectral_density(s: ReservoirSpectrum, omega):
    """Lorentzian spectral density J(omega).

    J(omega) = (gamma0 / 2 pi) * gamma^2 / ((omega0 - omega)^2 + gamma^2)

    The peak value is gamma0 / (2 pi) at omega = omega0 and the total
    weight integrates to gamma0 * gamma / 2 over the whole real line.

    Parameters
    ----------
    s : ReservoirSpectrum
    omega : float or ndarray
        Mode frequency (or frequencies).

    Returns
    -------
    float or ndarray
        Strictly positive spectral density, same shape as ``omega``.
    """
    detuning = s.omega0 - np.asarray(omega, dtype=float)
    value = (s.gamma0 / (2.0 * np.pi)) * s.gamma**2 / (detuning**2 + s.gamma**2)
    if np.isscalar(omega) or np.ndim(omega) == 0:
        return float(value)
    return value


def memory_kernel(s: ReservoirSpectrum, tau):
    """Reservoir correlation function F(tau) for tau >= 0.

    F(tau) is the Fourier transform of the spectral density taken at the
    detuning from omega0.  For the Lorentzian line the integral closes in
    the lower half plane around the pole at gamma, giving

        F(tau) = (gamma0 * gamma / 2) * exp(-gamma * tau).

    The line is centred exactly on the transition, so the oscillatory
    factor cancels and the kernel is real; the return type is complex to
    keep the interface valid for detuned spectra.

    Parameters
    ----------
    s : ReservoirSpectrum
    tau : float or ndarray
        Time delay, must be nonnegative.

    Returns
    -------
    complex or ndarray
        Kernel value(s); F(0) = gamma0 * gamma / 2 exactly.
    """
    tau_arr = np.asarray(tau, dtype=float)
    if np.any(tau_arr < 0.0):
        raise ValueError("memory_kernel requires tau >= 0")
    value = (s.gamma0 * s.gamma / 2.0) * np.exp(-s.gamma * tau_arr) + 0.0j
    if np.isscalar(tau) or np.ndim(tau) == 0:
        return complex(value)
    return value


def memory_kernel_quadrature(
    s: ReservoirSpectrum, tau: float, window: float, points: int
) -> complex:
    """Composite-trapezoid evaluation of the kernel Fourier integral.

    Integrates J(omega) * exp(i (omega0 - omega) tau) over the finite
    frequency window [omega0 - window, omega0 + window].  Serves as an
    independent numerical oracle for :func:`memory_kernel`; the agreement
    improves as both ``window`` and ``points`` grow.  The truncated
    Lorentzian tail contributes about (2/pi) * (gamma/window) in relative
    terms at tau = 0, so windows of several hundred gamma are needed for
    sub-1e-3 agreement.

    Parameters
    ----------
    s : ReservoirSpectrum
    tau : float
        Time delay.
    window : float
        Half-width of the integration window, must be positive.
    points : int
        Number of quadrature nodes, must be positive (>= 1000 intended).

    Returns
    -------
    complex
        Windowed Fourier integral; the imaginary part vanishes up to
        quadrature error because the spectrum is even about omega0.
    """
    if window <= 0.0:
        raise ValueError(f"window must be positive, got {window}")
    if points <= 0:
        raise ValueError(f"points must be positive, got {points}")
    omega = np.linspace(s.omega0 - window, s.omega0 + window, int(points))
    integrand = spectral_density(s, omega) * np.exp(1j * (s.omega0 - omega) * tau)
    h = omega[1] - omega[0] if len(omega) > 1 else 0.0
    total = h * (integrand.sum() - 0.5 * (integrand[0] + integrand[-1]))
    return complex(total)
