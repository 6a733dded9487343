"""Equations of motion, the integrator, and trajectory records."""
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spindyn import (
    ConfigError,
    FieldConfig,
    FourVector,
    IntegratorConfig,
    MasslessState,
    ParticleState,
    SQRT2,
    Spinor,
    build_record,
    coefficient_matrix,
    evolve_fourvector_check,
    exact_step,
    integrate,
    mass,
    momentum,
    phi_from_EB,
    spinor_rhs,
    step,
    tetrad,
)
from spindyn.dynamics import plan_steps
from spindyn.oracle import ConstantBScenario, tensor_integrate
from spindyn.spinors import expm_traceless

from conftest import random_massive_state

CANONICAL = ParticleState(
    0.0, Spinor(1.0, 0.0), Spinor(0.0, 1.0), FourVector(0.0, 0.0, 0.0, 0.0)
)

comp = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)
triples = st.tuples(comp, comp, comp)


def unit_bz(b=1.0):
    return FieldConfig.constant((0.0, 0.0, 0.0), (0.0, 0.0, b))


def oracle_for(state, b=1.0, charge=1.0):
    return ConstantBScenario(
        charge=charge, b=b, mass=mass(state),
        pi0=tuple(state.pi.as_array()), eta0=tuple(state.eta.as_array()),
        x0=tuple(state.x.as_array()),
    )


# ---------------------------------------------------------------------------
# configuration guards


@pytest.mark.parametrize(
    "kwargs",
    [
        {"step": 0.0},
        {"step": -1e-3},
        {"method": "rk5"},
        {"record_every": 0},
    ],
)
def test_integrator_config_rejects(kwargs):
    with pytest.raises(ConfigError):
        IntegratorConfig(**kwargs)


def test_plan_steps():
    assert plan_steps(1.0, 0.1) == 10
    assert plan_steps(0.95, 0.1) == 9
    with pytest.raises(ConfigError):
        plan_steps(0.05, 0.1)


# ---------------------------------------------------------------------------
# right-hand side and pointwise observables


@given(triples, triples)
def test_coefficient_matrix_traceless(E, B):
    C = coefficient_matrix(phi_from_EB(np.array(E), np.array(B)))
    assert abs(np.trace(C)) < 1e-14


def test_coefficient_matrix_layout():
    phi = np.array([[1.0, 2.0], [2.0, 3.0]], dtype=complex)
    C = coefficient_matrix(phi)
    assert np.allclose(C, np.array([[2.0, -1.0], [3.0, -2.0]]))


def test_spinor_rhs_pure_bz_example():
    phi = phi_from_EB(np.zeros(3), np.array([0.0, 0.0, 1.0]))
    dpi, deta = spinor_rhs(CANONICAL, phi, K=1.0)
    assert dpi.c0 == pytest.approx(0.5j)
    assert dpi.c1 == 0.0
    assert deta.c0 == 0.0
    assert deta.c1 == pytest.approx(-0.5j)


def test_momentum_and_mass_canonical():
    p = momentum(CANONICAL)
    assert np.allclose(p.as_array(), [SQRT2, 0.0, 0.0, 0.0])
    assert mass(CANONICAL) == pytest.approx(SQRT2)


def test_tetrad_canonical_axes():
    t = tetrad(CANONICAL)
    assert np.allclose(t.s.as_array(), [0.0, 0.0, 0.0, 1.0])
    assert np.allclose(t.v.as_array(), [0.0, 1.0, 0.0, 0.0])
    assert np.allclose(t.w.as_array(), [0.0, 0.0, 1.0, 0.0])


def test_tetrad_rejects_light_like_pair():
    degenerate = ParticleState(0.0, Spinor(1.0, 0.0), Spinor(2.0, 0.0),
                               FourVector(0, 0, 0, 0))
    with pytest.raises(MasslessState):
        tetrad(degenerate)


@given(st.data())
def test_tetrad_is_orthonormal(data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    state = random_massive_state(rng)
    t = tetrad(state)
    m = mass(state)
    dot = lambda a, b: a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z
    for axis in (t.s, t.v, t.w):
        assert dot(axis, axis) == pytest.approx(-1.0, abs=1e-9)
        assert dot(t.p, axis) == pytest.approx(0.0, abs=1e-9 * m)
    assert dot(t.s, t.v) == pytest.approx(0.0, abs=1e-9)
    assert dot(t.s, t.w) == pytest.approx(0.0, abs=1e-9)
    assert dot(t.v, t.w) == pytest.approx(0.0, abs=1e-9)
    assert dot(t.p, t.p) == pytest.approx(m * m, rel=1e-9)


# ---------------------------------------------------------------------------
# stepping accuracy


def test_single_rk4_step_matches_closed_form(rng):
    state = random_massive_state(rng)
    sol = oracle_for(state)
    h = 1e-3
    out = step(state, unit_bz(), K=1.0 / mass(state),
               cfg=IntegratorConfig(step=h))
    pi_ref, eta_ref = sol.spinor_solution(h)
    assert np.abs(out.pi.as_array() - pi_ref).max() < 1e-15
    assert np.abs(out.eta.as_array() - eta_ref).max() < 1e-15


def one_step_error(state, method, h):
    sol = oracle_for(state)
    out = step(state, unit_bz(), K=1.0 / mass(state),
               cfg=IntegratorConfig(step=h, method=method))
    pi_ref, _ = sol.spinor_solution(h)
    return np.abs(out.pi.as_array() - pi_ref).max()


def test_euler_local_error_is_second_order(rng):
    state = random_massive_state(rng)
    ratio = one_step_error(state, "euler", 0.05) / one_step_error(state, "euler", 0.025)
    assert ratio == pytest.approx(4.0, rel=0.15)


def test_rk4_local_error_is_fifth_order(rng):
    state = random_massive_state(rng)
    ratio = one_step_error(state, "rk4", 0.1) / one_step_error(state, "rk4", 0.05)
    assert ratio == pytest.approx(32.0, rel=0.2)


def test_exact_step_matches_closed_form(rng):
    state = random_massive_state(rng)
    sol = oracle_for(state)
    phi = phi_from_EB(np.zeros(3), np.array([0.0, 0.0, 1.0]))
    out = exact_step(state, phi, K=1.0 / mass(state), dt=0.7)
    pi_ref, eta_ref = sol.spinor_solution(0.7)
    assert np.abs(out.pi.as_array() - pi_ref).max() < 1e-14
    assert np.abs(out.eta.as_array() - eta_ref).max() < 1e-14
    assert out.x == state.x  # worldline deliberately untouched


# ---------------------------------------------------------------------------
# full integration


def test_zero_field_is_inert(rng):
    state = random_massive_state(rng)
    field = FieldConfig.constant((0, 0, 0), (0, 0, 0))
    rec = integrate(state, field, K=1.0 / mass(state),
                    cfg=IntegratorConfig(step=1e-3, record_every=50),
                    tau_end=2.0)
    assert rec.mass_residual.max() < 1e-14
    assert rec.ortho_residual.max() < 1e-14
    assert np.abs(rec.ps - rec.ps[0]).max() < 1e-14
    # worldline is straight: x(tau) = x0 + tau p / m
    expected = state.x.as_array() + np.outer(rec.taus, rec.ps[0] / mass(state))
    assert np.abs(rec.xs - expected).max() < 1e-12


def test_integrate_rejects_massless():
    degenerate = ParticleState(0.0, Spinor(1.0, 0.0), Spinor(1.0, 0.0),
                               FourVector(0, 0, 0, 0))
    with pytest.raises(MasslessState):
        integrate(degenerate, unit_bz(), 1.0, IntegratorConfig(), 1.0)


def test_sampling_grid_includes_tail(rng):
    state = random_massive_state(rng)
    rec = integrate(state, unit_bz(), K=1.0 / mass(state),
                    cfg=IntegratorConfig(step=0.01, record_every=7),
                    tau_end=1.0)
    # 100 steps: samples at 0, 7, ..., 98 plus the forced final step
    assert len(rec) == 16
    assert rec.taus[0] == 0.0
    assert rec.taus[-1] == pytest.approx(1.0)
    assert rec.taus[1] == pytest.approx(0.07)


def test_constant_and_potential_paths_agree(rng):
    # the same homogeneous field driven through both integration paths
    state = random_massive_state(rng)
    K = 0.8 / mass(state)
    cfg = IntegratorConfig(step=1e-3, record_every=25)
    const = FieldConfig.constant((0.2, -0.1, 0.05), (0.1, 0.4, 0.9))
    from spindyn.fields import _uniform_potential
    pot = FieldConfig(kind="potential",
                      potential=_uniform_potential((0.2, -0.1, 0.05), (0.1, 0.4, 0.9)),
                      fd_step=1e-4)
    rec_c = integrate(state, const, K, cfg, 1.5)
    rec_p = integrate(state, pot, K, cfg, 1.5)
    assert np.array_equal(rec_c.taus, rec_p.taus)
    assert np.abs(rec_c.pis - rec_p.pis).max() < 1e-9
    assert np.abs(rec_c.xs - rec_p.xs).max() < 1e-9


def test_spinor_momentum_matches_tensor_integrator(rng):
    # crossed constant fields, spinor engine vs the pure four-vector RK4
    state = random_massive_state(rng)
    K = 1.0 / mass(state)
    field = FieldConfig.constant((0.1, 0.0, 0.0), (0.0, 0.0, 1.0))
    h, tau_end = 1e-3, 10.0
    rec = integrate(state, field, K, IntegratorConfig(step=h, record_every=100),
                    tau_end)
    _, ps = tensor_integrate(field.tensor_at(state.x), K,
                             momentum(state).as_array(), h, 10000)
    idx = np.rint(rec.taus / h).astype(int)
    assert np.abs(rec.ps - ps[idx]).max() < 1e-8


def test_eta_follows_pi_propagator(rng):
    # both spinors ride the same linear flow, so the exact propagator built
    # for pi must carry eta too
    state = random_massive_state(rng)
    K = 1.0 / mass(state)
    field = FieldConfig.constant((0.3, 0.0, 0.0), (0.0, 0.0, 0.7))
    rec = integrate(state, field, K, IntegratorConfig(step=1e-3), 2.0)
    C = K * coefficient_matrix(field.phi_at(state.x))
    P = expm_traceless(2.0 * C)
    assert np.abs(rec.etas[-1] - P @ state.eta.as_array()).max() < 1e-10


def test_euler_method_drifts_mildly(rng):
    state = random_massive_state(rng)
    rec = integrate(state, unit_bz(), K=1.0 / mass(state),
                    cfg=IntegratorConfig(step=1e-3, method="euler",
                                         record_every=100),
                    tau_end=1.0)
    drift = rec.mass_residual.max()
    assert 1e-9 < drift < 1e-2


def test_mass_conserved_by_rk4(rng):
    state = random_massive_state(rng)
    field = FieldConfig.constant((0.2, 0.4, -0.3), (0.5, -0.1, 0.8))
    rec = integrate(state, field, K=1.0 / mass(state),
                    cfg=IntegratorConfig(step=1e-3, record_every=100),
                    tau_end=5.0)
    assert rec.mass_residual.max() < 1e-10
    assert rec.ortho_residual.max() < 1e-9


# ---------------------------------------------------------------------------
# record assembly


def test_build_record_flags_injected_error(rng):
    state = random_massive_state(rng)
    rec = integrate(state, unit_bz(), K=1.0 / mass(state),
                    cfg=IntegratorConfig(step=1e-3, record_every=10), tau_end=1.0)
    pis = rec.pis.copy()
    pis[len(pis) // 2 :] *= 1.002
    bad = build_record(rec.taus, pis, rec.etas, rec.xs, mass_ref=rec.mass_ref)
    assert bad.mass_residual.max() > 1e-4
    assert bad.ortho_residual.max() > 1e-4


def test_build_record_mass_reference_override(rng):
    state = random_massive_state(rng)
    rec = integrate(state, unit_bz(), K=1.0 / mass(state),
                    cfg=IntegratorConfig(step=1e-2), tau_end=0.5)
    other = build_record(rec.taus, rec.pis, rec.etas, rec.xs,
                         mass_ref=2.0 * rec.mass_ref)
    assert other.mass_residual.max() == pytest.approx(0.5, abs=1e-10)


def test_build_record_rejects_massless():
    zeros = np.zeros((3, 2), dtype=complex)
    with pytest.raises(MasslessState):
        build_record([0.0, 0.1, 0.2], zeros, zeros, np.zeros((3, 4)))


def test_record_state_round_trip(rng):
    state = random_massive_state(rng)
    rec = integrate(state, unit_bz(), K=1.0 / mass(state),
                    cfg=IntegratorConfig(step=1e-2), tau_end=0.3)
    first = rec.state_at(0)
    assert first.pi == state.pi and first.eta == state.eta
    assert rec.final_state.tau == pytest.approx(0.3)


# ---------------------------------------------------------------------------
# force-law residual helper


def test_force_law_residual_small_for_frame_vectors(rng):
    state = random_massive_state(rng)
    field = FieldConfig.constant((0.3, 0.0, 0.0), (0.0, 0.0, 0.7))
    K = 1.0 / mass(state)
    for coeffs in [(1, 0, 0, 0), (0, 1, 0, 0), (0.5, -1.0, 2.0, 0.25)]:
        assert evolve_fourvector_check(state, field, K, coeffs) < 1e-5
