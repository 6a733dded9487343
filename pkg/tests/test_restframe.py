"""Rest-frame structure: boosts, moduli/phase pattern, null split,
canonical gauge, and the spin matrices."""
import numpy as np
import pytest

from spindyn import (
    ConfigError,
    FourVector,
    MasslessState,
    NotAtRest,
    NotTimelike,
    ParticleState,
    RestFrameState,
    SQRT2,
    Spinor,
    boost_to_rest,
    canonical_rest_state,
    check_phase_relation,
    mass,
    minkowski_dot,
    momentum,
    null_split,
    pauli_form,
    polarization_check,
    rest_boost,
    rest_frame_s_components,
    spin_operator,
    spinors_from_momentum,
    tetrad,
    transform_fourvector,
)

from conftest import random_massive_state


def phased(phases):
    """Unit-modulus spinor pair with prescribed component phases
    (arg pi0, arg eta0, arg pi1, arg eta1)."""
    p0, e0, p1, e1 = phases
    return Spinor(np.exp(1j * p0), np.exp(1j * p1)), Spinor(np.exp(1j * e0),
                                                            np.exp(1j * e1))


# ---------------------------------------------------------------------------
# boosting to rest


def test_rest_boost_of_rest_vector_is_identity():
    U = rest_boost(FourVector(3.0, 0.0, 0.0, 0.0))
    assert np.allclose(U, np.eye(2))


def test_rest_boost_kills_spatial_momentum():
    p = FourVector(2.0, 0.5, -0.8, 1.1)
    U = rest_boost(p)
    brought = transform_fourvector(U, p)
    m = np.sqrt(minkowski_dot(p, p))
    assert np.linalg.norm(brought.spatial()) < 1e-12 * m
    assert brought.t == pytest.approx(m)


@pytest.mark.parametrize(
    "p",
    [
        FourVector(1.0, 1.0, 0.0, 0.0),     # null
        FourVector(1.0, 2.0, 0.0, 0.0),     # spacelike
        FourVector(-2.0, 0.0, 0.0, 0.0),    # past-pointing
    ],
)
def test_rest_boost_requires_future_timelike(p):
    with pytest.raises(MasslessState):
        rest_boost(p)


def test_boost_to_rest_random_states(rng):
    for _ in range(20):
        state = random_massive_state(rng)
        at_rest = boost_to_rest(state)
        m = mass(state)
        assert mass(at_rest) == pytest.approx(m, rel=1e-12)
        assert np.linalg.norm(momentum(at_rest).spatial()) < 1e-10 * m
        assert at_rest.tau == state.tau and at_rest.x == state.x


def test_rest_frame_moduli_swap(rng):
    for _ in range(20):
        rest = RestFrameState.from_state(boost_to_rest(random_massive_state(rng)))
        assert rest.moduli_residual < 1e-10
        assert rest.phase_residual < 1e-10
        assert rest.pi_moduli[0] == pytest.approx(rest.eta_moduli[1], rel=1e-9)
        assert rest.pi_moduli[1] == pytest.approx(rest.eta_moduli[0], rel=1e-9)


def test_rest_frame_state_rejects_moving(rng):
    state = random_massive_state(rng)
    if np.linalg.norm(momentum(state).spatial()) < 0.1 * mass(state):
        state = ParticleState(0.0, Spinor(2.0, 0.1), state.eta, state.x)
    with pytest.raises(NotAtRest):
        RestFrameState.from_state(state)


# ---------------------------------------------------------------------------
# the phase relation on its own


def test_phase_relation_simple_example():
    pi, eta = phased((0.0, 0.0, 0.0, -np.pi))
    assert check_phase_relation(pi, eta) == pytest.approx(0.0, abs=1e-12)


def test_phase_relation_shifted_example():
    pi, eta = phased((0.3, 0.1, 1.2, 1.0 - np.pi))
    assert check_phase_relation(pi, eta) == pytest.approx(0.0, abs=1e-12)


def test_phase_relation_violated_at_zero_phases():
    pi, eta = phased((0.0, 0.0, 0.0, 0.0))
    assert check_phase_relation(pi, eta) == pytest.approx(np.pi)


def test_phase_relation_vacuous_when_component_vanishes():
    # spin on the z axis: the cross term is absent, nothing to constrain
    assert check_phase_relation(Spinor(1.3, 0.0), Spinor(0.0, 1.3)) == 0.0
    assert check_phase_relation(Spinor(0.0, 0.7), Spinor(0.7, 0.0)) == 0.0


# ---------------------------------------------------------------------------
# null split


def test_null_split_canonical():
    m = 2.0
    a = np.sqrt(m / SQRT2)
    state = ParticleState(0.0, Spinor(a, 0.0), Spinor(0.0, a),
                          FourVector(0, 0, 0, 0))
    split = null_split(state)
    assert np.allclose(split.p_pi.as_array(), [1.0, 0.0, 0.0, 1.0], atol=1e-12)
    assert np.allclose(split.p_eta.as_array(), [1.0, 0.0, 0.0, -1.0], atol=1e-12)
    assert split.omega == pytest.approx(1.0)


def test_null_split_structure_random(rng):
    for _ in range(15):
        state = boost_to_rest(random_massive_state(rng))
        m = mass(state)
        split = null_split(state)
        # each half is null with energy m/2; spatial parts cancel
        assert abs(minkowski_dot(split.p_pi, split.p_pi)) < 1e-10 * m * m
        assert abs(minkowski_dot(split.p_eta, split.p_eta)) < 1e-10 * m * m
        assert split.p_pi.t == pytest.approx(m / 2.0, rel=1e-9)
        assert split.p_eta.t == pytest.approx(m / 2.0, rel=1e-9)
        assert np.allclose(split.p_pi.spatial(), -split.p_eta.spatial(),
                           atol=1e-10 * m)
        assert split.omega == pytest.approx(m / 2.0, rel=1e-9)
        total = split.p_pi.as_array() + split.p_eta.as_array()
        assert np.allclose(total, momentum(state).as_array(), atol=1e-10 * m)


def test_null_split_requires_rest(rng):
    state = random_massive_state(rng)
    if np.linalg.norm(momentum(state).spatial()) < 0.1 * mass(state):
        state = ParticleState(0.0, Spinor(2.0, 0.3), state.eta, state.x)
    with pytest.raises(NotAtRest):
        null_split(state)


def test_spin_axis_parallel_to_pi_half(rng):
    for _ in range(15):
        state = boost_to_rest(random_massive_state(rng))
        svec = tetrad(state).s.spatial()
        k = null_split(state).p_pi.spatial()
        assert np.linalg.norm(np.cross(svec, k)) < 1e-9 * np.linalg.norm(k)
        assert np.dot(svec, k) > 0.0


# ---------------------------------------------------------------------------
# spin components from moduli and phases


def test_s_components_match_tetrad(rng):
    for _ in range(15):
        state = boost_to_rest(random_massive_state(rng))
        from_data = rest_frame_s_components(state)
        from_bilinears = tetrad(state).s
        assert np.allclose(from_data.as_array(), from_bilinears.as_array(),
                           atol=1e-9)


def test_s_is_v_cross_w_at_rest(rng):
    for _ in range(15):
        t = tetrad(boost_to_rest(random_massive_state(rng)))
        assert np.allclose(t.s.spatial(),
                           np.cross(t.v.spatial(), t.w.spatial()), atol=1e-9)


# ---------------------------------------------------------------------------
# polarization residuals


def test_polarization_clean_for_physical_rest_states(rng):
    for _ in range(10):
        res = polarization_check(boost_to_rest(random_massive_state(rng)))
        assert set(res) == {"null-norm", "null-dot-v", "null-dot-w",
                            "v-dot-w", "spatial-orthogonality"}
        assert max(res.values()) < 1e-10


def test_polarization_detects_phase_violation():
    # moduli swapped but all phases zero: not a rest state; the four
    # identities still hold while the spatial entry blows up
    pi = Spinor(1.1, 0.6)
    eta = Spinor(0.6, 1.1)
    state = ParticleState(0.0, pi, eta, FourVector(0, 0, 0, 0))
    res = polarization_check(state, strict=False)
    assert res["null-norm"] < 1e-12
    assert res["null-dot-v"] < 1e-12
    assert res["null-dot-w"] < 1e-12
    assert res["v-dot-w"] < 1e-12
    assert res["spatial-orthogonality"] > 0.1


def test_polarization_strict_rejects_moving_state():
    state = ParticleState(0.0, Spinor(1.1, 0.6), Spinor(0.6, 1.1),
                          FourVector(0, 0, 0, 0))
    with pytest.raises(NotAtRest):
        polarization_check(state)


# ---------------------------------------------------------------------------
# canonical gauge and spin matrices


def test_canonical_rest_state_shape(rng):
    for _ in range(10):
        state = random_massive_state(rng)
        canon = canonical_rest_state(state)
        m = mass(state)
        a = np.sqrt(m / SQRT2)
        assert canon.pi.c0 == pytest.approx(a, rel=1e-9)
        assert abs(canon.pi.c1) < 1e-9 * a
        assert abs(canon.eta.c0) < 1e-9 * a
        assert canon.eta.c1 == pytest.approx(a, rel=1e-9)
        # gauge fixing strips the imaginary parts entirely
        assert abs(canon.pi.c0.imag) < 1e-9 * a
        assert abs(canon.eta.c1.imag) < 1e-9 * a


def test_pauli_form_canonical_patterns(rng):
    state = random_massive_state(rng)
    hs, hv, hw = pauli_form(state, canonical=True)
    inv = 1.0 / SQRT2
    assert np.abs(hs - inv * np.diag([1.0, -1.0])).max() < 1e-12
    assert np.abs(hv - inv * np.array([[0, 1], [1, 0]])).max() < 1e-12
    assert np.abs(hw - inv * np.array([[0, 1j], [-1j, 0]])).max() < 1e-12


def test_pauli_form_requires_rest_without_canonical(rng):
    state = random_massive_state(rng)
    if np.linalg.norm(momentum(state).spatial()) < 0.1 * mass(state):
        state = ParticleState(0.0, Spinor(2.0, 0.3), state.eta, state.x)
    with pytest.raises(NotAtRest):
        pauli_form(state)


def test_spin_operator_commutators_close_cyclically(rng):
    state = random_massive_state(rng)
    S = spin_operator(state, canonical=True)
    factor = -1j / SQRT2
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        comm = S[a] @ S[b] - S[b] @ S[a]
        assert np.abs(comm - factor * S[c]).max() < 1e-12


def test_spin_operator_eigenvalues(rng):
    state = random_massive_state(rng)
    for M in spin_operator(state, canonical=True):
        eig = np.sort(np.linalg.eigvalsh(M))
        assert np.allclose(eig, [-0.5 / SQRT2, 0.5 / SQRT2], atol=1e-12)


# ---------------------------------------------------------------------------
# building states from momentum data


def test_spinors_from_momentum_canonical():
    pi, eta = spinors_from_momentum(FourVector(1.0, 0.0, 0.0, 0.0))
    a = np.sqrt(1.0 / SQRT2)
    assert pi.c0 == pytest.approx(a) and pi.c1 == 0.0
    assert eta.c0 == 0.0 and eta.c1 == pytest.approx(a)


def test_spinors_from_momentum_x_axis_spin():
    pi, eta = spinors_from_momentum(FourVector(1.0, 0.0, 0.0, 0.0),
                                    spin_axis=(1.0, 0.0, 0.0))
    state = ParticleState(0.0, pi, eta, FourVector(0, 0, 0, 0))
    assert np.allclose(tetrad(state).s.as_array(), [0.0, 1.0, 0.0, 0.0],
                       atol=1e-12)


def test_spinors_from_momentum_reproduces_p(rng):
    for _ in range(15):
        m = rng.uniform(0.5, 3.0)
        sp = rng.normal(size=3)
        p = FourVector(float(np.sqrt(m * m + sp @ sp)), *sp)
        axis = tuple(rng.normal(size=3))
        pi, eta = spinors_from_momentum(p, spin_axis=axis)
        state = ParticleState(0.0, pi, eta, FourVector(0, 0, 0, 0))
        assert np.allclose(momentum(state).as_array(), p.as_array(),
                           atol=1e-10 * m)
        assert mass(state) == pytest.approx(m, rel=1e-10)


def test_spinors_from_momentum_spin_axis_survives_round_trip(rng):
    for _ in range(10):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        sp = rng.normal(size=3)
        p = FourVector(float(np.sqrt(1.0 + sp @ sp)), *sp)
        pi, eta = spinors_from_momentum(p, spin_axis=tuple(axis))
        back = boost_to_rest(ParticleState(0.0, pi, eta, FourVector(0, 0, 0, 0)))
        assert np.allclose(tetrad(back).s.spatial(), axis, atol=1e-9)


def test_spinors_from_momentum_phase_rotates_transverse_axes():
    p = FourVector(1.0, 0.0, 0.0, 0.0)
    base = spinors_from_momentum(p)
    rot = spinors_from_momentum(p, phase=0.3)
    s0 = ParticleState(0.0, *base, FourVector(0, 0, 0, 0))
    s1 = ParticleState(0.0, *rot, FourVector(0, 0, 0, 0))
    t0, t1 = tetrad(s0), tetrad(s1)
    assert np.allclose(t0.s.as_array(), t1.s.as_array(), atol=1e-12)
    # v picks up a rotation by 2 * phase about the spin axis
    angle = np.arctan2(np.dot(np.cross(t0.v.spatial(), t1.v.spatial()),
                              t0.s.spatial()),
                       np.dot(t0.v.spatial(), t1.v.spatial()))
    assert abs(abs(angle) - 0.6) < 1e-12


@pytest.mark.parametrize(
    "p",
    [FourVector(1.0, 1.0, 0.0, 0.0), FourVector(0.5, 1.0, 0.0, 0.0),
     FourVector(-1.0, 0.0, 0.0, 0.0)],
)
def test_spinors_from_momentum_rejects_nontimelike(p):
    with pytest.raises(NotTimelike):
        spinors_from_momentum(p)


def test_spinors_from_momentum_rejects_zero_axis():
    with pytest.raises(ConfigError, match="spin_axis"):
        spinors_from_momentum(FourVector(1.0, 0.0, 0.0, 0.0),
                              spin_axis=(0.0, 0.0, 0.0))


def test_antiparallel_spin_axis():
    # exercises the half-turn branch of the axis rotation
    pi, eta = spinors_from_momentum(FourVector(1.0, 0.0, 0.0, 0.0),
                                    spin_axis=(0.0, 0.0, -1.0))
    state = ParticleState(0.0, pi, eta, FourVector(0, 0, 0, 0))
    assert np.allclose(tetrad(state).s.as_array(), [0, 0, 0, -1.0], atol=1e-12)
