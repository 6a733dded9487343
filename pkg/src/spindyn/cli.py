"""Command-line interface.

Subcommands:
  simulate    integrate a scenario and write the sampled trajectory as CSV
  verify      run the invariant suite and report pass/fail per check
  rest-frame  boost the initial state to rest and print its structure
  precession  fit the spin rotation rate in a uniform z-axis magnetic field

Exit codes: 0 success (all checks passed), 1 a verification or comparison
failed, 2 configuration or usage error, 3 the request does not apply to
the scenario (wrong field kind, massless state, degenerate fit).

The SPINDYN_TOL environment variable overrides the default 1e-9 tolerance
used for the frame-condition checks in `verify`.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .checks import run_invariant_suite
from .config import Scenario, load_scenario, shipped_names
from .dynamics import TrajectoryRecord, integrate
from .errors import ConfigError, SpindynError
from .kernels import BACKEND
from .oracle import fit_precession
from .restframe import (
    RestFrameState,
    boost_to_rest,
    canonical_rest_state,
    null_split,
    pauli_form,
    polarization_check,
    rest_frame_s_components,
    spin_operator,
)

CSV_HEADER = ("tau,E,px,py,pz,s0,s1,s2,s3,v0,v1,v2,v3,w0,w1,w2,w3,"
              "x0,x1,x2,x3,mass_residual,max_ortho_residual")


def _write_csv(path: str, rec: TrajectoryRecord) -> None:
    """Write the trajectory atomically: full temp file, then rename."""
    rows = np.column_stack([
        rec.taus, rec.ps, rec.ss, rec.vs, rec.ws, rec.xs,
        rec.mass_residual, rec.ortho_residual,
    ])
    tmp = f"{path}.tmp-{os.getpid()}"
    try:
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(CSV_HEADER + "\n")
            for row in rows:
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _vec(v) -> str:
    return "(" + ", ".join(f"{c:+.12g}" for c in np.asarray(v)) + ")"


def _cmd_simulate(args) -> int:
    scn = load_scenario(args.config)
    rec = integrate(scn.initial, scn.field, scn.K, scn.integrator, scn.tau_end)
    _write_csv(args.out, rec)
    print(f"wrote {len(rec)} samples to {args.out} (backend: {BACKEND})")
    print(f"final tau {rec.taus[-1]:.12g}, worst mass residual {rec.mass_residual.max():.3e}, "
          f"worst frame residual {rec.ortho_residual.max():.3e}")
    return 0


def _cmd_verify(args) -> int:
    scn = load_scenario(args.config)
    report = run_invariant_suite(scn, perturb=args.perturb)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.render())
    return 0 if report.all_passed else 1


def _cmd_rest_frame(args) -> int:
    scn = load_scenario(args.config)
    rest = boost_to_rest(scn.initial)
    state = RestFrameState.from_state(rest)
    split = null_split(rest)
    s_from_components = rest_frame_s_components(rest)
    pol = polarization_check(rest)
    canonical = canonical_rest_state(scn.initial)

    print(f"mass                 = {state.mass:.12g}")
    print(f"rest pi              = ({state.pi.c0:.12g}, {state.pi.c1:.12g})")
    print(f"rest eta             = ({state.eta.c0:.12g}, {state.eta.c1:.12g})")
    print(f"pi moduli            = ({state.pi_moduli[0]:.12g}, {state.pi_moduli[1]:.12g})")
    print(f"eta moduli           = ({state.eta_moduli[0]:.12g}, {state.eta_moduli[1]:.12g})")
    print(f"pi phases            = ({state.pi_phases[0]:+.12g}, {state.pi_phases[1]:+.12g})")
    print(f"eta phases           = ({state.eta_phases[0]:+.12g}, {state.eta_phases[1]:+.12g})")
    print(f"moduli residual      = {state.moduli_residual:.3e}")
    print(f"phase residual       = {state.phase_residual:.3e}")
    print(f"null half (pi)       = {_vec(split.p_pi.as_array())}")
    print(f"null half (eta)      = {_vec(split.p_eta.as_array())}")
    print(f"omega                = {split.omega:.12g}")
    print(f"spin axis            = {_vec(s_from_components.as_array()[1:])}")
    for name, value in pol.items():
        print(f"polarization {name:<22} = {value:.3e}")
    print(f"canonical pi         = ({canonical.pi.c0:.12g}, {canonical.pi.c1:.12g})")
    print(f"canonical eta        = ({canonical.eta.c0:.12g}, {canonical.eta.c1:.12g})")
    for name, mat in zip(("s", "v", "w"), pauli_form(rest, canonical=True)):
        row0 = f"[{mat[0, 0]:.6g}, {mat[0, 1]:.6g}]"
        row1 = f"[{mat[1, 0]:.6g}, {mat[1, 1]:.6g}]"
        print(f"matrix of {name}          = {row0} {row1}")
    eigs = np.linalg.eigvalsh(spin_operator(rest, canonical=True)[0])
    print(f"spin eigenvalues     = ({eigs[0]:+.12g}, {eigs[1]:+.12g})")
    return 0


def _cmd_precession(args) -> int:
    scn = load_scenario(args.config)
    if not scn.field.is_constant:
        print("precession fit needs a constant field", file=sys.stderr)
        return 3
    e, b = scn.field.em.e, scn.field.em.b
    if any(c != 0.0 for c in e) or b[0] != 0.0 or b[1] != 0.0 or b[2] == 0.0 \
            or scn.charge == 0.0:
        print("precession fit needs a charged particle in a nonzero z-axis "
              "magnetic field with no electric field", file=sys.stderr)
        return 3
    expected = scn.charge * b[2] / scn.mass
    spacing = scn.integrator.step * scn.integrator.record_every
    if spacing >= 0.5 * np.pi / abs(expected):
        print(f"samples every {spacing:.3g} in proper time alias a rotation "
              f"rate of {expected:.3g}; reduce step * record_every", file=sys.stderr)
        return 3

    rec = integrate(scn.initial, scn.field, scn.K, scn.integrator, scn.tau_end)
    worst = 0.0
    fitted_any = False
    series_by_name = (("p", rec.ps), ("s", rec.ss), ("v", rec.vs), ("w", rec.ws))
    for label, series in series_by_name:
        amplitude = float(np.hypot(series[0, 1], series[0, 2]))
        if amplitude < 1e-12:
            print(f"{label}: no transverse component to fit")
            continue
        fit = fit_precession(rec.taus, series[:, 1], series[:, 2])
        ccw = -fit.frequency  # fit convention is clockwise-positive
        gap = abs(ccw - expected) / abs(expected)
        worst = max(worst, gap)
        fitted_any = True
        print(f"{label}: rate {ccw:+.12g} (expected {expected:+.12g}), "
              f"amplitude {fit.amplitude:.12g}, rms residual {fit.rms_residual:.3e}, "
              f"relative gap {gap:.3e}")
    if not fitted_any:
        print("nothing to fit: every frame vector is aligned with the "
              "field axis", file=sys.stderr)
        return 3
    return 0 if worst <= 1e-6 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spindyn",
        description="Integrate spinor-form charged-particle dynamics and "
                    "check its invariants.",
        epilog=f"shipped scenarios: {', '.join(shipped_names())}; "
               "SPINDYN_TOL overrides the frame-condition tolerance (default 1e-9)",
    )
    parser.add_argument("--version", action="version", version=f"spindyn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config(p):
        p.add_argument("--config", required=True,
                       help="scenario JSON file, or the name of a shipped scenario")

    p = sub.add_parser("simulate", help="integrate and write the trajectory as CSV")
    add_config(p)
    p.add_argument("--out", required=True, help="output CSV path (written atomically)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("verify", help="run the invariant suite")
    add_config(p)
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.add_argument("--perturb", type=float, default=None, metavar="EPS",
                   help="scale pi by (1 + EPS) halfway through, to confirm "
                        "the suite catches a corrupted run")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("rest-frame", help="print the rest-frame structure of "
                                          "the initial state")
    add_config(p)
    p.set_defaults(func=_cmd_rest_frame)

    p = sub.add_parser("precession", help="fit the rotation rate against q B / m")
    add_config(p)
    p.set_defaults(func=_cmd_precession)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help and usage errors
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SpindynError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
