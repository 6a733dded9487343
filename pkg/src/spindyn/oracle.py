"""Independent answers for cross-checking the spinor integrator.

Everything in this module is computed without touching the spinor dynamics
code: closed-form solutions for a uniform magnetic field, a four-vector
force-law integrator working directly on p^a, and a circular-motion fitter.
The few formulas shared with the main modules (the momentum bilinear, the
invariant mass) are deliberately re-derived inline rather than imported, so
a bug in one side cannot hide in the other.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegenerateFit

_SQRT2 = float(np.sqrt(2.0))
_METRIC = np.diag([1.0, -1.0, -1.0, -1.0])


def _momentum_of(pi: np.ndarray, eta: np.ndarray) -> np.ndarray:
    m00 = abs(pi[0]) ** 2 + abs(eta[0]) ** 2
    m11 = abs(pi[1]) ** 2 + abs(eta[1]) ** 2
    cross = pi[0] * np.conj(pi[1]) + eta[0] * np.conj(eta[1])
    return np.array([(m00 + m11) / _SQRT2, _SQRT2 * cross.real,
                     _SQRT2 * cross.imag, (m00 - m11) / _SQRT2])


@dataclass(frozen=True)
class ConstantBScenario:
    """Closed-form motion for charge q, mass m in B = (0, 0, b).

    The spinor components each pick up a pure phase at half the momentum
    rotation rate: pi0 and eta0 rotate by exp(+i q b tau / 2m), pi1 and
    eta1 by the conjugate.  Transverse momentum consequently rotates
    counterclockwise at omega = q b / m for positive q b, while energy and
    p_z stay fixed.
    """

    charge: float
    b: float
    mass: float
    pi0: tuple[complex, complex]
    eta0: tuple[complex, complex]
    x0: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        pi = np.asarray(self.pi0, dtype=complex)
        eta = np.asarray(self.eta0, dtype=complex)
        m = _SQRT2 * abs(pi[1] * eta[0] - pi[0] * eta[1])
        if self.mass <= 0.0:
            raise ConfigError(f"mass must be positive, got {self.mass}")
        if abs(m - self.mass) > 1e-8 * self.mass:
            raise ConfigError(
                f"spinor pair carries mass {m:.12g}, scenario says {self.mass:.12g}"
            )

    @property
    def omega(self) -> float:
        """Signed rotation rate of the transverse four-vector components."""
        return self.charge * self.b / self.mass

    @property
    def vector_period(self) -> float:
        """Proper time for momentum and spin axes to return to themselves."""
        if self.omega == 0.0:
            raise ConfigError("field-free or neutral scenario has no rotation period")
        return 2.0 * np.pi / abs(self.omega)

    @property
    def spinor_period(self) -> float:
        """Proper time for the spinors themselves: twice the vector period."""
        return 2.0 * self.vector_period

    def spinor_solution(self, tau: float) -> tuple[np.ndarray, np.ndarray]:
        phase = np.exp(0.5j * self.omega * tau)
        pi = np.asarray(self.pi0, dtype=complex)
        eta = np.asarray(self.eta0, dtype=complex)
        rot = np.array([phase, np.conj(phase)])
        return pi * rot, eta * rot

    def momentum_solution(self, tau: float) -> np.ndarray:
        p0 = _momentum_of(np.asarray(self.pi0, dtype=complex),
                          np.asarray(self.eta0, dtype=complex))
        trans = (p0[1] + 1j * p0[2]) * np.exp(1j * self.omega * tau)
        return np.array([p0[0], trans.real, trans.imag, p0[3]])

    def worldline_solution(self, tau: float) -> np.ndarray:
        """Position from integrating dx/dtau = p(tau)/m from x0."""
        p0 = _momentum_of(np.asarray(self.pi0, dtype=complex),
                          np.asarray(self.eta0, dtype=complex))
        x = np.asarray(self.x0, dtype=float).copy()
        x[0] += p0[0] * tau / self.mass
        x[3] += p0[3] * tau / self.mass
        z0 = p0[1] + 1j * p0[2]
        if self.omega == 0.0:
            dz = z0 * tau / self.mass
        else:
            dz = z0 * (np.exp(1j * self.omega * tau) - 1.0) / (1j * self.omega * self.mass)
        x[1] += dz.real
        x[2] += dz.imag
        return x


def tensor_integrate(f_lower: np.ndarray, K: float, p0: np.ndarray,
                     step_size: float, n_steps: int) -> tuple[np.ndarray, np.ndarray]:
    """RK4 for the four-vector force law dp^a/dtau = K F^a_b p^b.

    f_lower is the antisymmetric field matrix with both indices down; the
    first index is raised here with the (+,-,-,-) metric.  Returns
    (taus, ps) with ps of shape (n_steps + 1, 4).  This works on momentum
    components only and never sees a spinor.
    """
    f_lower = np.asarray(f_lower, dtype=float)
    if f_lower.shape != (4, 4):
        raise ConfigError(f"field matrix must be 4x4, got {f_lower.shape}")
    if n_steps < 1:
        raise ConfigError(f"n_steps must be >= 1, got {n_steps}")
    M = K * (_METRIC @ f_lower)
    p = np.asarray(p0, dtype=float).copy()
    ps = np.empty((n_steps + 1, 4))
    ps[0] = p
    h = float(step_size)
    for k in range(n_steps):
        k1 = M @ p
        k2 = M @ (p + 0.5 * h * k1)
        k3 = M @ (p + 0.5 * h * k2)
        k4 = M @ (p + h * k3)
        p = p + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        ps[k + 1] = p
    taus = np.arange(n_steps + 1, dtype=float) * h
    return taus, ps


@dataclass(frozen=True)
class PrecessionFit:
    """Result of fitting (x, y) samples to uniform circular motion.

    frequency is positive for clockwise rotation in the xy plane, i.e.
    x = A cos(f tau + phase), y = -A sin(f tau + phase).
    """

    frequency: float
    amplitude: float
    phase: float
    rms_residual: float


def fit_precession(taus: np.ndarray, x: np.ndarray, y: np.ndarray) -> PrecessionFit:
    """Least-squares circular fit via the unwrapped angle of x + iy.

    Needs at least 4 samples and a radius above 1e-12; raises
    DegenerateFit otherwise.  Sampling should stay below half a turn per
    point or the unwrap will alias.
    """
    taus = np.asarray(taus, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(taus) < 4 or len(x) != len(taus) or len(y) != len(taus):
        raise ConfigError(
            f"need >= 4 matched samples, got {len(taus)}, {len(x)} and {len(y)}"
        )
    z = x + 1j * y
    radii = np.abs(z)
    amplitude = float(radii.mean())
    if amplitude < 1e-12 or radii.min() < 1e-12:
        raise DegenerateFit(f"orbit radius {radii.min():.3e} too small to carry an angle")
    theta = np.unwrap(np.angle(z))
    slope, intercept = np.polyfit(taus, theta, 1)
    model = amplitude * np.exp(1j * (slope * taus + intercept))
    rms = float(np.sqrt(np.mean(np.abs(z - model) ** 2)))
    # theta = -(f tau + phase) under the clockwise-positive convention
    phase = float(np.remainder(-intercept + np.pi, 2.0 * np.pi) - np.pi)
    return PrecessionFit(frequency=float(-slope), amplitude=amplitude,
                         phase=phase, rms_residual=rms)
