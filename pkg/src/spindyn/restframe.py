"""Rest-frame structure of a spinor pair.

Boosting a timelike state to its rest frame exposes a rigid pattern: the
eta moduli are the pi moduli swapped (|eta0| = |pi1|, |eta1| = |pi0|), and
the phase combination (arg eta1 - arg pi1) - (arg eta0 - arg pi0) sits at
an odd multiple of pi.  Together these are equivalent to the spatial
momentum vanishing.  On top of that pattern the momentum splits into two
null halves of energy m/2 with opposite spatial parts, the spatial spin
axis is parallel to the pi half's momentum, and the spin components can be
read directly off the pi moduli and phases.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import ParticleState, mass, momentum, tetrad
from .errors import ConfigError, MasslessState, NotAtRest, NotTimelike
from .spinors import (
    SQRT2,
    FourVector,
    Spinor,
    fourvector_of,
    hermitian_of,
    minkowski_dot,
    minkowski_norm,
    outer,
    sl2c_boost,
    sl2c_rotation,
    transform_spinor,
)

AT_REST_TOL = 1e-8


def rest_boost(p: FourVector) -> np.ndarray:
    """SL(2,C) boost that brings the timelike momentum p to rest."""
    m2 = minkowski_norm(p)
    if m2 < 1e-24 or p.t <= 0.0:
        raise MasslessState(f"no rest frame for p.p = {m2:.3e} with t-component {p.t:.3e}")
    sp = p.spatial()
    r = float(np.linalg.norm(sp))
    if r == 0.0:
        return np.eye(2, dtype=complex)
    chi = np.arctanh(r / p.t)
    return sl2c_boost(tuple(sp / r), -chi)


def boost_to_rest(state: ParticleState) -> ParticleState:
    """Rewrite the state in its instantaneous rest frame.

    Proper time and worldline position are carried over unchanged; only
    the spinor components transform.
    """
    U = rest_boost(momentum(state))
    return ParticleState(
        tau=state.tau,
        pi=transform_spinor(U, state.pi),
        eta=transform_spinor(U, state.eta),
        x=state.x,
    )


def _require_at_rest(state: ParticleState) -> float:
    m = mass(state)
    if m < 1e-12:
        raise MasslessState(f"rest-frame structure undefined at mass {m:.3e}")
    p = momentum(state)
    drift = float(np.linalg.norm(p.spatial()))
    if drift > AT_REST_TOL * m:
        raise NotAtRest(f"spatial momentum {drift:.3e} exceeds {AT_REST_TOL:g} * mass")
    return m


def check_phase_relation(pi: Spinor, eta: Spinor) -> float:
    """Distance (in [0, pi]) of the rest-frame phase combination from the
    nearest odd multiple of pi.  Zero for any state truly at rest.

    The relation constrains nothing when a component vanishes (the spin
    axis then sits exactly on +-z and the cross term is zero by itself),
    so that case reports zero rather than an arbitrary angle.
    """
    scale2 = max(abs(pi.c0), abs(pi.c1), abs(eta.c0), abs(eta.c1)) ** 2
    if max(abs(pi.c0 * pi.c1), abs(eta.c0 * eta.c1)) < 1e-12 * scale2:
        return 0.0
    delta = (np.angle(eta.c1) - np.angle(pi.c1)) - (np.angle(eta.c0) - np.angle(pi.c0))
    r = np.remainder(delta - np.pi, 2.0 * np.pi)
    return float(min(r, 2.0 * np.pi - r))


@dataclass(frozen=True)
class RestFrameState:
    """Moduli and phases of a spinor pair at rest, plus the two structure
    residuals (moduli swap, phase relation)."""

    pi: Spinor
    eta: Spinor
    mass: float
    pi_moduli: tuple[float, float]
    eta_moduli: tuple[float, float]
    pi_phases: tuple[float, float]
    eta_phases: tuple[float, float]
    moduli_residual: float
    phase_residual: float

    @classmethod
    def from_state(cls, state: ParticleState) -> "RestFrameState":
        m = _require_at_rest(state)
        pi, eta = state.pi, state.eta
        pm = (abs(pi.c0), abs(pi.c1))
        em = (abs(eta.c0), abs(eta.c1))
        scale = max(max(pm), max(em))
        moduli = max(abs(em[0] - pm[1]), abs(em[1] - pm[0])) / scale
        return cls(
            pi=pi, eta=eta, mass=m,
            pi_moduli=pm, eta_moduli=em,
            pi_phases=(float(np.angle(pi.c0)), float(np.angle(pi.c1))),
            eta_phases=(float(np.angle(eta.c0)), float(np.angle(eta.c1))),
            moduli_residual=float(moduli),
            phase_residual=check_phase_relation(pi, eta),
        )


@dataclass(frozen=True)
class NullSplit:
    """The two flagpole null vectors whose sum is the momentum, plus their
    common rest-frame energy omega = m/2."""

    p_pi: FourVector
    p_eta: FourVector
    omega: float


def null_split(state: ParticleState) -> NullSplit:
    """Split p into the pi and eta null halves (state must be at rest).

    Each half is null, carries energy mass/2, and their spatial parts are
    opposite.
    """
    _require_at_rest(state)
    k_pi = fourvector_of(outer(state.pi, state.pi))
    k_eta = fourvector_of(outer(state.eta, state.eta))
    return NullSplit(p_pi=k_pi, p_eta=k_eta, omega=0.5 * (k_pi.t + k_eta.t))


def rest_frame_s_components(state: ParticleState) -> FourVector:
    """Spatial spin axis from moduli and phases alone (state must be at rest).

    s_z = sqrt(2) (|pi0|^2 - |pi1|^2) / m and the transverse part is
    2 sqrt(2) |pi0| |pi1| e^{i (arg pi0 - arg pi1)} / m.  Agrees with the
    bilinear tetrad axis whenever the state is actually at rest.
    """
    m = _require_at_rest(state)
    a0, a1 = abs(state.pi.c0), abs(state.pi.c1)
    rel = np.angle(state.pi.c0) - np.angle(state.pi.c1)
    return FourVector(
        0.0,
        2.0 * SQRT2 * a0 * a1 * np.cos(rel) / m,
        2.0 * SQRT2 * a0 * a1 * np.sin(rel) / m,
        SQRT2 * (a0 * a0 - a1 * a1) / m,
    )


def polarization_check(state: ParticleState, strict: bool = True) -> dict[str, float]:
    """Five named residuals tying the null halves to the spin plane.

    For each null half k (normalized by mass): |k.k|, |k.v|, |k.w| and
    |v.w| are reported (worst over the two halves), all of which vanish
    identically for any spinor pair.  The fifth entry,
    'spatial-orthogonality', is the worst spatial product between a null
    half and v or w; it vanishes only when the rest-frame phase relation
    holds, so it is the entry that actually detects a corrupted state.

    strict=True insists the state is at rest before measuring; pass
    strict=False to inspect a state that is expected to fail.
    """
    m = mass(state)
    if m < 1e-12:
        raise MasslessState(f"polarization residuals undefined at mass {m:.3e}")
    if strict:
        _require_at_rest(state)
    t = tetrad(state)
    k_pi = fourvector_of(outer(state.pi, state.pi))
    k_eta = fourvector_of(outer(state.eta, state.eta))
    halves = [FourVector.from_array(k_pi.as_array() / m),
              FourVector.from_array(k_eta.as_array() / m)]
    spatial = 0.0
    for k in halves:
        for axis in (t.v, t.w):
            spatial = max(spatial, abs(float(np.dot(k.spatial(), axis.spatial()))))
    return {
        "null-norm": max(abs(minkowski_norm(k)) for k in halves),
        "null-dot-v": max(abs(minkowski_dot(k, t.v)) for k in halves),
        "null-dot-w": max(abs(minkowski_dot(k, t.w)) for k in halves),
        "v-dot-w": abs(minkowski_dot(t.v, t.w)),
        "spatial-orthogonality": spatial,
    }


def _rotation_taking(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """SL(2,C) rotation carrying unit vector a onto unit vector b."""
    cross = np.cross(a, b)
    s = float(np.linalg.norm(cross))
    c = float(np.dot(a, b))
    if s < 1e-15:
        if c > 0.0:
            return np.eye(2, dtype=complex)
        # antiparallel: half turn about any axis orthogonal to a
        helper = np.array([1.0, 0.0, 0.0]) if abs(a[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        axis = np.cross(a, helper)
        axis /= np.linalg.norm(axis)
        return sl2c_rotation(tuple(axis), np.pi)
    return sl2c_rotation(tuple(cross / s), float(np.arctan2(s, c)))


def canonical_rest_state(state: ParticleState) -> ParticleState:
    """Canonical rest-frame gauge of a timelike state.

    Boosts to rest, rotates the spin axis onto +z, and strips the free
    phases, leaving pi = (a, 0) and eta = (0, a) with a = sqrt(m/sqrt(2)).
    """
    at_rest = boost_to_rest(state)
    t = tetrad(at_rest)
    svec = t.s.spatial()
    U = _rotation_taking(svec / np.linalg.norm(svec), np.array([0.0, 0.0, 1.0]))
    pi = transform_spinor(U, at_rest.pi)
    eta = transform_spinor(U, at_rest.eta)
    pi = Spinor.from_array(pi.as_array() * np.exp(-1j * np.angle(pi.c0)))
    eta = Spinor.from_array(eta.as_array() * np.exp(-1j * np.angle(eta.c1)))
    return ParticleState(tau=state.tau, pi=pi, eta=eta, x=state.x)


def pauli_form(state: ParticleState, canonical: bool = False
               ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Hermitian matrices of the tetrad axes (s, v, w), in that order.

    With canonical=True the state is first brought to the gauge of
    `canonical_rest_state`, where the matrices become exactly
    1/sqrt(2) times diag(1, -1), [[0, 1], [1, 0]] and [[0, i], [-i, 0]];
    otherwise the state must already be at rest.
    """
    st = canonical_rest_state(state) if canonical else state
    if not canonical:
        _require_at_rest(st)
    t = tetrad(st)
    return hermitian_of(t.s), hermitian_of(t.v), hermitian_of(t.w)


def spin_operator(state: ParticleState, canonical: bool = False
                  ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin matrices: one half of the `pauli_form` output, order (s, v, w).

    Writing them (A, B, C), they close cyclically under
    [A, B] = -(i / sqrt(2)) C, and each has eigenvalues +-1 / (2 sqrt(2)),
    the spin one-half structure in this Hermitian-map normalization.
    """
    hs, hv, hw = pauli_form(state, canonical)
    return 0.5 * hs, 0.5 * hv, 0.5 * hw


def spinors_from_momentum(p: FourVector, spin_axis: tuple[float, float, float] = (0.0, 0.0, 1.0),
                          phase: float = 0.0) -> tuple[Spinor, Spinor]:
    """Spinor pair carrying four-momentum p with the spatial spin axis
    pointing along spin_axis in the rest frame.

    phase rotates the transverse axes v and w about the spin axis without
    touching p or s.  Raises NotTimelike unless p.p > 0 with positive
    t-component.
    """
    m2 = minkowski_norm(p)
    if m2 <= 1e-12 or p.t <= 0.0:
        raise NotTimelike(f"need a future-pointing timelike p, got p.p = {m2:.3e}")
    m = float(np.sqrt(m2))
    a = np.sqrt(m / SQRT2)
    pi = Spinor(a * np.exp(1j * phase), 0.0)
    eta = Spinor(0.0, a * np.exp(-1j * phase))

    axis = np.asarray(spin_axis, dtype=float)
    norm = float(np.linalg.norm(axis))
    if norm < 1e-15:
        raise ConfigError(f"spin_axis must be a nonzero direction, got {spin_axis}")
    R = _rotation_taking(np.array([0.0, 0.0, 1.0]), axis / norm)
    pi, eta = transform_spinor(R, pi), transform_spinor(R, eta)

    sp = p.spatial()
    r = float(np.linalg.norm(sp))
    if r > 0.0:
        chi = float(np.arctanh(r / p.t))
        U = sl2c_boost(tuple(sp / r), chi)
        pi, eta = transform_spinor(U, pi), transform_spinor(U, eta)
    return pi, eta
