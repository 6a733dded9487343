"""Invariant suite run by the `verify` subcommand.

Each check integrates or inspects one scenario and reports a residual
against a tolerance.  The frame-condition tolerances (unit norms and
orthogonality of s, v, w, p) default to 1e-9 and can be widened or
tightened through the SPINDYN_TOL environment variable; the remaining
tolerances are fixed properties of the algorithms (integrator order,
finite-difference floors, closed-form comparisons).

The optional perturbation mode rescales pi by (1 + eps) halfway through
the run and rebuilds all trajectory residuals against the original mass,
demonstrating that the suite actually detects a corrupted evolution.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .config import Scenario
from .dynamics import (
    IntegratorConfig,
    ParticleState,
    build_record,
    coefficient_matrix,
    evolve_fourvector_check,
    integrate,
    momentum,
    plan_steps,
)
from .errors import ConfigError
from .fields import apply_bigF, bigF_from_phi, phi_from_EB, phi_from_generators
from .oracle import ConstantBScenario, tensor_integrate
from .restframe import RestFrameState, boost_to_rest, polarization_check
from .spinors import Spinor

DEFAULT_FRAME_TOL = 1e-9


def frame_tolerance() -> float:
    """Tolerance for the ten frame conditions; SPINDYN_TOL overrides."""
    raw = os.environ.get("SPINDYN_TOL")
    if raw is None:
        return DEFAULT_FRAME_TOL
    try:
        value = float(raw)
    except ValueError as exc:
        raise ConfigError(f"SPINDYN_TOL must be a number, got {raw!r}") from exc
    if value <= 0.0:
        raise ConfigError(f"SPINDYN_TOL must be positive, got {value}")
    return value


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool

    @staticmethod
    def of(name: str, residual: float, tolerance: float) -> "CheckResult":
        residual = float(residual)
        return CheckResult(name, residual, float(tolerance), residual <= tolerance)


@dataclass(frozen=True)
class InvariantReport:
    results: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> list[dict]:
        return [
            {"check": r.name, "residual": r.residual,
             "tolerance": r.tolerance, "pass": r.passed}
            for r in self.results
        ]

    def render(self) -> str:
        width = max(len(r.name) for r in self.results)
        lines = [f"{'check'.ljust(width)}  {'residual':>12}  {'tolerance':>12}  status"]
        for r in self.results:
            status = "pass" if r.passed else "FAIL"
            lines.append(
                f"{r.name.ljust(width)}  {r.residual:>12.3e}  {r.tolerance:>12.3e}  {status}"
            )
        n_fail = sum(not r.passed for r in self.results)
        tail = "all checks passed" if n_fail == 0 else f"{n_fail} check(s) FAILED"
        lines.append(f"{len(self.results)} checks: {tail}")
        return "\n".join(lines)


def _pure_bz(scn: Scenario) -> float | None:
    """Field strength b if the scenario is a nonzero constant B = (0,0,b)
    with E = 0 and a charged particle, else None."""
    if not scn.field.is_constant or scn.charge == 0.0:
        return None
    e, b = scn.field.em.e, scn.field.em.b
    if any(c != 0.0 for c in e) or b[0] != 0.0 or b[1] != 0.0 or b[2] == 0.0:
        return None
    return b[2]


def _integrate_scenario(scn: Scenario, perturb: float | None):
    if perturb is None:
        return integrate(scn.initial, scn.field, scn.K, scn.integrator, scn.tau_end)
    h = scn.integrator.step
    n_total = plan_steps(scn.tau_end - scn.initial.tau, h)
    n_half = max(1, n_total // 2)
    rec1 = integrate(scn.initial, scn.field, scn.K, scn.integrator,
                     scn.initial.tau + (n_half + 0.5) * h)
    mid = rec1.final_state
    bumped = ParticleState(
        tau=mid.tau,
        pi=Spinor(mid.pi.c0 * (1.0 + perturb), mid.pi.c1 * (1.0 + perturb)),
        eta=mid.eta,
        x=mid.x,
    )
    rec2 = integrate(bumped, scn.field, scn.K, scn.integrator,
                     scn.initial.tau + (n_total + 0.5) * h)
    return build_record(
        np.concatenate([rec1.taus[:-1], rec2.taus]),
        np.concatenate([rec1.pis[:-1], rec2.pis]),
        np.concatenate([rec1.etas[:-1], rec2.etas]),
        np.concatenate([rec1.xs[:-1], rec2.xs]),
        mass_ref=rec1.mass_ref,
    )


def _frame_checks(rec, tol: float) -> list[CheckResult]:
    taus, ss, vs, ws, ps = rec.taus, rec.ss, rec.vs, rec.ws, rec.ps

    def dots(a, b):
        return a[:, 0] * b[:, 0] - np.einsum("ki,ki->k", a[:, 1:], b[:, 1:])

    m2 = rec.mass_ref**2
    pairs = [
        ("norm-s", np.abs(dots(ss, ss) + 1.0).max(), tol),
        ("norm-v", np.abs(dots(vs, vs) + 1.0).max(), tol),
        ("norm-w", np.abs(dots(ws, ws) + 1.0).max(), tol),
        ("ortho-s-v", np.abs(dots(ss, vs)).max(), tol),
        ("ortho-s-w", np.abs(dots(ss, ws)).max(), tol),
        ("ortho-v-w", np.abs(dots(vs, ws)).max(), tol),
        ("ortho-p-s", np.abs(dots(ps, ss)).max() / rec.mass_ref, tol),
        ("ortho-p-v", np.abs(dots(ps, vs)).max() / rec.mass_ref, tol),
        ("ortho-p-w", np.abs(dots(ps, ws)).max() / rec.mass_ref, tol),
        ("mass-shell", (np.abs(dots(ps, ps) - m2) / m2).max(), tol),
    ]
    return [CheckResult.of(n, r, t) for n, r, t in pairs]


def _double_valued_checks(scn: Scenario, b: float) -> list[CheckResult]:
    oracle = ConstantBScenario(
        charge=scn.charge, b=b, mass=scn.mass,
        pi0=(scn.initial.pi.c0, scn.initial.pi.c1),
        eta0=(scn.initial.eta.c0, scn.initial.eta.c1),
        x0=tuple(scn.initial.x.as_array()),
    )
    full = oracle.spinor_period
    # even step count landing exactly on both the vector and spinor periods
    n = 2 * max(int(round(0.5 * full / scn.integrator.step)), 2000)
    cfg = IntegratorConfig(step=full / n, method=scn.integrator.method,
                           record_every=n // 2)
    rec = integrate(scn.initial, scn.field, scn.K, cfg, scn.initial.tau + full)

    s0 = np.concatenate([rec.pis[0], rec.etas[0]])
    s_half = np.concatenate([rec.pis[1], rec.etas[1]])
    s_full = np.concatenate([rec.pis[2], rec.etas[2]])
    scale = np.abs(s0).max()
    frame0 = np.stack([rec.ps[0], rec.ss[0], rec.vs[0], rec.ws[0]])
    frame_half = np.stack([rec.ps[1], rec.ss[1], rec.vs[1], rec.ws[1]])
    fscale = np.abs(frame0).max()
    return [
        CheckResult.of("double-valued-vectors",
                       np.abs(frame_half - frame0).max() / fscale, 1e-10),
        CheckResult.of("double-valued-flip",
                       np.abs(s_half + s0).max() / scale, 1e-10),
        CheckResult.of("double-valued-spinors",
                       np.abs(s_full - s0).max() / scale, 1e-10),
    ]


def run_invariant_suite(scn: Scenario, perturb: float | None = None) -> InvariantReport:
    """Run every applicable check for the scenario and collect the report.

    Universal checks cover conservation laws, the frame conditions, both
    field-construction routes, the bilinear derivative identity, the
    four-vector force law, and the rest-frame structure of the final
    state.  Constant-field scenarios additionally get the independent
    tensor-form cross-check, and a pure z-axis magnetic field unlocks the
    closed-form, constancy, and double-cover comparisons.
    """
    tol = frame_tolerance()
    rec = _integrate_scenario(scn, perturb)
    results: list[CheckResult] = []

    results.append(CheckResult.of("mass-conservation", rec.mass_residual.max(), 1e-10))
    results.extend(_frame_checks(rec, tol))

    # both phi constructions agree at the initial point
    if scn.field.is_constant:
        e, b = scn.field.em.e, scn.field.em.b
        phi0 = phi_from_EB(e, b)
        gap = np.abs(phi0 - phi_from_generators(e, b)).max()
        results.append(CheckResult.of("construction-equivalence", gap, 1e-14))
    else:
        phi0 = scn.field.phi_at(scn.initial.x)

    F_low = scn.field.tensor_at(scn.initial.x)
    results.append(CheckResult.of("tensor-antisymmetry",
                                  np.abs(F_low + F_low.T).max(), 1e-12))

    # d(p matrix)/dtau via the coefficient matrix vs the rank-four contraction
    C = scn.K * coefficient_matrix(phi0)
    pi0 = scn.initial.pi.as_array()
    eta0 = scn.initial.eta.as_array()
    H = np.outer(pi0, pi0.conj()) + np.outer(eta0, eta0.conj())
    route1 = C @ H + H @ C.conj().T
    route2 = scn.K * apply_bigF(bigF_from_phi(phi0), H)
    scale = max(1.0, float(np.abs(route1).max()))
    results.append(CheckResult.of("bilinear-derivative",
                                  np.abs(route1 - route2).max() / scale, 1e-12))

    span = min(2.0, scn.tau_end - scn.initial.tau)
    results.append(CheckResult.of(
        "evolution-p",
        evolve_fourvector_check(scn.initial, scn.field, scn.K, (1, 0, 0, 0), span),
        1e-6))
    results.append(CheckResult.of(
        "evolution-s",
        evolve_fourvector_check(scn.initial, scn.field, scn.K, (0, 1, 0, 0), span),
        1e-6))

    final = rec.final_state
    at_rest = boost_to_rest(final)
    structure = RestFrameState.from_state(at_rest)
    results.append(CheckResult.of(
        "rest-frame-structure",
        max(structure.moduli_residual, structure.phase_residual), 1e-10))
    pol = polarization_check(at_rest)
    identities = max(pol["null-norm"], pol["null-dot-v"], pol["null-dot-w"], pol["v-dot-w"])
    results.append(CheckResult.of("polarization-identities", identities, 1e-10))
    results.append(CheckResult.of("spatial-orthogonality",
                                  pol["spatial-orthogonality"], tol))

    if scn.field.is_constant:
        n_cmp = plan_steps(scn.tau_end - scn.initial.tau, scn.integrator.step)
        _, ps_tensor = tensor_integrate(
            scn.field.tensor_at(scn.initial.x), scn.K,
            momentum(scn.initial).as_array(), scn.integrator.step, n_cmp)
        gap = np.abs(rec.ps[-1] - ps_tensor[-1]).max() / scn.mass
        results.append(CheckResult.of("spinor-vs-tensor", gap, 1e-8))

    bz = _pure_bz(scn)
    if bz is not None:
        oracle = ConstantBScenario(
            charge=scn.charge, b=bz, mass=scn.mass,
            pi0=(scn.initial.pi.c0, scn.initial.pi.c1),
            eta0=(scn.initial.eta.c0, scn.initial.eta.c1),
            x0=tuple(scn.initial.x.as_array()),
        )
        tau_fin = float(rec.taus[-1] - scn.initial.tau)
        pi_exp, eta_exp = oracle.spinor_solution(tau_fin)
        got = np.concatenate([rec.pis[-1], rec.etas[-1]])
        want = np.concatenate([pi_exp, eta_exp])
        results.append(CheckResult.of(
            "closed-form-spinors",
            np.abs(got - want).max() / np.abs(want).max(), 1e-8))
        results.append(CheckResult.of(
            "closed-form-worldline",
            np.abs(rec.xs[-1] - oracle.worldline_solution(tau_fin)).max(), 1e-8))
        p0 = rec.ps[:, 0]
        results.append(CheckResult.of(
            "energy-constancy", np.abs(p0 - p0[0]).max() / p0[0], 1e-10))
        results.append(CheckResult.of(
            "pz-constancy", np.abs(rec.ps[:, 3] - rec.ps[0, 3]).max() / scn.mass, 1e-10))
        results.extend(_double_valued_checks(scn, bz))

    return InvariantReport(tuple(results))
