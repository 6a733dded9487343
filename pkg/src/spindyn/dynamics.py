"""Spinor-form equations of motion and trajectory integration.

The dynamical variables are two spinors pi and eta.  Both satisfy the same
linear equation

    d(xi)^A/dtau = K phi^{AB} xi_B,     K = charge / mass,

with the index on xi lowered by the convention in `spinors`.  Written out
against upper components this is the coefficient matrix

    C = K [[phi01, -phi00], [phi11, -phi10]],

which is traceless because phi is symmetric.  Everything observable is
bilinear: momentum p = pi pibar + eta etabar, and the spin tetrad (s, v, w)
from the three independent bilinears divided by the invariant mass
m = sqrt(2) |pi^A eta_A|.  The tetrad plus p form an orthonormal frame;
mass and the ten frame conditions are the conserved quantities the
verification layer watches.

The worldline is carried along via dx/dtau = p/m.  It feeds back into the
equations only for position-dependent (potential) fields.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import kernels
from .errors import ConfigError, MasslessState
from .fields import FieldConfig, mixed_from_lowered
from .spinors import (
    SQRT2,
    FourVector,
    Spinor,
    contract,
    expm_traceless,
    fourvector_of,
    lower,
    outer,
)


@dataclass(frozen=True)
class ParticleState:
    """Spinor pair plus proper time and worldline position."""

    tau: float
    pi: Spinor
    eta: Spinor
    x: FourVector = dc_field(default=FourVector(0.0, 0.0, 0.0, 0.0))


@dataclass(frozen=True)
class Tetrad:
    p: FourVector
    s: FourVector
    v: FourVector
    w: FourVector


@dataclass(frozen=True)
class IntegratorConfig:
    step: float = 1e-3
    method: str = "rk4"
    record_every: int = 1

    def __post_init__(self):
        if not self.step > 0.0:
            raise ConfigError(f"integrator.step must be > 0, got {self.step}")
        if self.method not in ("rk4", "euler"):
            raise ConfigError(f"integrator.method must be 'rk4' or 'euler', got {self.method!r}")
        if self.record_every < 1:
            raise ConfigError(f"integrator.record_every must be >= 1, got {self.record_every}")


def coefficient_matrix(phi: np.ndarray) -> np.ndarray:
    """Matrix C with d(xi)/dtau = K C xi for upper spinor components."""
    return np.array(
        [[phi[0, 1], -phi[0, 0]], [phi[1, 1], -phi[1, 0]]], dtype=complex
    )


def spinor_rhs(state: ParticleState, phi: np.ndarray, K: float) -> tuple[Spinor, Spinor]:
    """Proper-time derivatives of (pi, eta) under the field spinor phi."""
    dpi_low = lower(state.pi)
    deta_low = lower(state.eta)
    phi = np.asarray(phi, dtype=complex)
    dpi = K * phi @ np.array([dpi_low.c0, dpi_low.c1])
    deta = K * phi @ np.array([deta_low.c0, deta_low.c1])
    return Spinor.from_array(dpi), Spinor.from_array(deta)


def momentum(state: ParticleState) -> FourVector:
    """Four-momentum from the spinor bilinears; t-component is positive for
    any nonzero spinor pair."""
    H = outer(state.pi, state.pi) + outer(state.eta, state.eta)
    return fourvector_of(H)


def mass(state: ParticleState) -> float:
    """Invariant mass sqrt(2) |pi^A eta_A|; conserved by the evolution."""
    return SQRT2 * abs(contract(state.pi, state.eta))


def tetrad(state: ParticleState) -> Tetrad:
    """Momentum plus the three unit spacelike axes (s, v, w).

    All four are mutually orthogonal; s, v, w have Minkowski norm -1 and
    p.p = m^2.  Raises MasslessState below mass 1e-12, where the frame
    normalization blows up.
    """
    m = mass(state)
    if m < 1e-12:
        raise MasslessState(f"tetrad undefined at mass {m:.3e}")
    pp = outer(state.pi, state.pi)
    ee = outer(state.eta, state.eta)
    pe = outer(state.pi, state.eta)
    ep = outer(state.eta, state.pi)
    return Tetrad(
        p=fourvector_of(pp + ee),
        s=fourvector_of((pp - ee) / m),
        v=fourvector_of((pe + ep) / m),
        w=fourvector_of(1j * (pe - ep) / m),
    )


def _rhs_arrays(pi: np.ndarray, eta: np.ndarray, x: np.ndarray,
                C: np.ndarray, inv_m: float):
    dpi = C @ pi
    deta = C @ eta
    m00 = abs(pi[0]) ** 2 + abs(eta[0]) ** 2
    m11 = abs(pi[1]) ** 2 + abs(eta[1]) ** 2
    cross = pi[0] * np.conj(pi[1]) + eta[0] * np.conj(eta[1])
    p = np.array([(m00 + m11) / SQRT2, SQRT2 * cross.real,
                  SQRT2 * cross.imag, (m00 - m11) / SQRT2])
    return dpi, deta, p * inv_m


def _step_arrays(pi, eta, x, field: FieldConfig, K: float, h: float,
                 method: str, inv_m: float):
    """One generic step; evaluates phi at the staged positions, so it is
    valid for position-dependent fields as well."""

    def C_at(xv):
        return K * coefficient_matrix(field.phi_at(FourVector.from_array(xv)))

    if method == "euler":
        dpi, deta, dx = _rhs_arrays(pi, eta, x, C_at(x), inv_m)
        return pi + h * dpi, eta + h * deta, x + h * dx

    k1 = _rhs_arrays(pi, eta, x, C_at(x), inv_m)
    a = (pi + 0.5 * h * k1[0], eta + 0.5 * h * k1[1], x + 0.5 * h * k1[2])
    k2 = _rhs_arrays(*a, C_at(a[2]), inv_m)
    b = (pi + 0.5 * h * k2[0], eta + 0.5 * h * k2[1], x + 0.5 * h * k2[2])
    k3 = _rhs_arrays(*b, C_at(b[2]), inv_m)
    c = (pi + h * k3[0], eta + h * k3[1], x + h * k3[2])
    k4 = _rhs_arrays(*c, C_at(c[2]), inv_m)
    w = h / 6.0
    return (
        pi + w * (k1[0] + 2.0 * (k2[0] + k3[0]) + k4[0]),
        eta + w * (k1[1] + 2.0 * (k2[1] + k3[1]) + k4[1]),
        x + w * (k1[2] + 2.0 * (k2[2] + k3[2]) + k4[2]),
    )


def step(state: ParticleState, field: FieldConfig, K: float,
         cfg: IntegratorConfig) -> ParticleState:
    """Advance one step of cfg.step with the configured method.

    RK4 local error is O(step^5) per step; Euler O(step^2).  The worldline
    moves by dx/dtau = p/m with m evaluated at the step start.
    """
    m = mass(state)
    if m < 1e-12:
        raise MasslessState(f"cannot advance worldline at mass {m:.3e}")
    pi, eta, x = _step_arrays(
        state.pi.as_array(), state.eta.as_array(), state.x.as_array(),
        field, K, cfg.step, cfg.method, 1.0 / m,
    )
    return ParticleState(
        tau=state.tau + cfg.step,
        pi=Spinor.from_array(pi),
        eta=Spinor.from_array(eta),
        x=FourVector.from_array(x),
    )


def exact_step(state: ParticleState, phi: np.ndarray, K: float, dt: float) -> ParticleState:
    """Exact propagator for a constant field: both spinors advance by
    expm(dt K C).  The worldline is not advanced (spinor comparison tool)."""
    P = expm_traceless(dt * K * coefficient_matrix(phi))
    return ParticleState(
        tau=state.tau + dt,
        pi=Spinor.from_array(P @ state.pi.as_array()),
        eta=Spinor.from_array(P @ state.eta.as_array()),
        x=state.x,
    )


# ---------------------------------------------------------------------------
# Trajectory records


@dataclass
class TrajectoryRecord:
    """Sampled trajectory plus derived frame vectors and residuals.

    All arrays share the leading sample axis.  mass_residual is the
    relative drift |m(tau) - m_ref| / m_ref; ortho_residual is, per sample,
    the worst violation among the ten frame conditions (three -1 norms,
    six orthogonality products, and p.p = m_ref^2 relative).
    """

    taus: np.ndarray
    pis: np.ndarray
    etas: np.ndarray
    xs: np.ndarray
    ps: np.ndarray
    ss: np.ndarray
    vs: np.ndarray
    ws: np.ndarray
    masses: np.ndarray
    mass_residual: np.ndarray
    ortho_residual: np.ndarray
    mass_ref: float

    def __len__(self) -> int:
        return len(self.taus)

    def state_at(self, i: int) -> ParticleState:
        return ParticleState(
            tau=float(self.taus[i]),
            pi=Spinor.from_array(self.pis[i]),
            eta=Spinor.from_array(self.etas[i]),
            x=FourVector.from_array(self.xs[i]),
        )

    @property
    def final_state(self) -> ParticleState:
        return self.state_at(len(self) - 1)


def _dots(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[:, 0] * b[:, 0] - np.einsum("ki,ki->k", a[:, 1:], b[:, 1:])


def build_record(taus, pis, etas, xs, mass_ref: float | None = None) -> TrajectoryRecord:
    """Assemble the derived arrays for sampled raw data.

    Exposed so that callers stitching together piecewise runs (for example
    the verification suite's perturbation mode) can rebuild residuals
    against the original reference mass.
    """
    taus = np.asarray(taus, dtype=float)
    pis = np.asarray(pis, dtype=complex)
    etas = np.asarray(etas, dtype=complex)
    xs = np.asarray(xs, dtype=float)

    cont = pis[:, 1] * etas[:, 0] - pis[:, 0] * etas[:, 1]
    masses = SQRT2 * np.abs(cont)
    if mass_ref is None:
        mass_ref = float(masses[0])
    if mass_ref < 1e-12:
        raise MasslessState("trajectory record requires a massive state")

    def pair(a, b):
        return np.einsum("ki,kj->kij", a, b.conj())

    Hpp = pair(pis, pis)
    Hee = pair(etas, etas)
    Hpe = pair(pis, etas)
    Hep = pair(etas, pis)
    inv_m = 1.0 / masses[:, None, None]

    def vecs(H):
        out = np.empty((len(taus), 4))
        out[:, 0] = (H[:, 0, 0] + H[:, 1, 1]).real / SQRT2
        out[:, 3] = (H[:, 0, 0] - H[:, 1, 1]).real / SQRT2
        out[:, 1] = SQRT2 * H[:, 0, 1].real
        out[:, 2] = SQRT2 * H[:, 0, 1].imag
        return out

    ps = vecs(Hpp + Hee)
    ss = vecs((Hpp - Hee) * inv_m)
    vs = vecs((Hpe + Hep) * inv_m)
    ws = vecs(1j * (Hpe - Hep) * inv_m)

    conditions = np.stack([
        np.abs(_dots(ss, ss) + 1.0),
        np.abs(_dots(vs, vs) + 1.0),
        np.abs(_dots(ws, ws) + 1.0),
        np.abs(_dots(ss, vs)),
        np.abs(_dots(ss, ws)),
        np.abs(_dots(vs, ws)),
        np.abs(_dots(ss, ps)),
        np.abs(_dots(vs, ps)),
        np.abs(_dots(ws, ps)),
        np.abs(_dots(ps, ps) - mass_ref**2) / mass_ref**2,
    ])

    return TrajectoryRecord(
        taus=taus, pis=pis, etas=etas, xs=xs,
        ps=ps, ss=ss, vs=vs, ws=ws,
        masses=masses,
        mass_residual=np.abs(masses - mass_ref) / mass_ref,
        ortho_residual=conditions.max(axis=0),
        mass_ref=float(mass_ref),
    )


def plan_steps(tau_span: float, step_size: float) -> int:
    """Number of fixed steps covering tau_span, final point within one step
    of the far end (never past it beyond roundoff)."""
    n = int(np.floor(tau_span / step_size + 1e-9))
    if n < 1:
        raise ConfigError(f"tau_end of {tau_span} shorter than one step of {step_size}")
    return n


def integrate(initial: ParticleState, field: FieldConfig, K: float,
              cfg: IntegratorConfig, tau_end: float) -> TrajectoryRecord:
    """Integrate from initial.tau to ~tau_end and return the sampled record.

    Samples land every cfg.record_every steps, plus the final step.  For
    constant fields the inner loop runs in the selected kernel backend
    (see `kernels.BACKEND`); position-dependent fields use the generic
    stage loop, which re-evaluates phi at each staged worldline point.
    """
    m0 = mass(initial)
    if m0 < 1e-12:
        raise MasslessState("cannot integrate a massless spinor pair")
    n_steps = plan_steps(tau_end - initial.tau, cfg.step)

    if field.is_constant:
        C = K * coefficient_matrix(field.phi_at(initial.x))
        idx, spinors, xs = kernels.integrate_constant(
            initial.pi.as_array(), initial.eta.as_array(),
            initial.x.as_array(), C, m0, cfg.step, n_steps,
            cfg.record_every, euler=(cfg.method == "euler"),
        )
        taus = initial.tau + np.asarray(idx, dtype=float) * cfg.step
        return build_record(taus, spinors[:, 0:2], spinors[:, 2:4], xs, mass_ref=m0)

    pi = initial.pi.as_array()
    eta = initial.eta.as_array()
    x = initial.x.as_array()
    inv_m = 1.0 / m0
    rec_idx = list(range(0, n_steps + 1, cfg.record_every))
    if rec_idx[-1] != n_steps:
        rec_idx.append(n_steps)
    taus, pis, etas, xs = [], [], [], []
    pointer = 0
    for k in range(n_steps + 1):
        if pointer < len(rec_idx) and k == rec_idx[pointer]:
            taus.append(initial.tau + k * cfg.step)
            pis.append(pi.copy())
            etas.append(eta.copy())
            xs.append(x.copy())
            pointer += 1
        if k == n_steps:
            break
        pi, eta, x = _step_arrays(pi, eta, x, field, K, cfg.step, cfg.method, inv_m)
    return build_record(taus, pis, etas, xs, mass_ref=m0)


def evolve_fourvector_check(state: ParticleState, field: FieldConfig, K: float,
                            coeffs: tuple[float, float, float, float],
                            tau_span: float = 2.0, step_size: float = 1e-3) -> float:
    """Residual of the four-vector force law for J = c0 p + c1 s + c2 v + c3 w.

    Any real combination of the frame vectors must satisfy dJ/dtau =
    K F^a_b J^b along the trajectory.  The derivative is taken by central
    differences of the integrated samples, so the returned residual floors
    at the O(step^2) finite-difference error, not at machine precision.
    """
    cfg = IntegratorConfig(step=step_size, method="rk4", record_every=1)
    rec = integrate(state, field, K, cfg, state.tau + tau_span)
    c0, c1, c2, c3 = (float(c) for c in coeffs)
    J = c0 * rec.ps + c1 * rec.ss + c2 * rec.vs + c3 * rec.ws
    dJ = (J[2:] - J[:-2]) / (2.0 * step_size)
    worst = 0.0
    if field.is_constant:
        M = K * mixed_from_lowered(field.tensor_at(state.x))
        worst = float(np.abs(dJ - J[1:-1] @ M.T).max())
    else:
        for i in range(1, len(J) - 1):
            M = K * mixed_from_lowered(field.tensor_at(FourVector.from_array(rec.xs[i])))
            worst = max(worst, float(np.abs(dJ[i - 1] - M @ J[i]).max()))
    return worst
