"""Scenario definition and JSON loading.

A scenario bundles everything one run needs: particle constants, the
field, the initial state, integrator settings, and the proper-time span.
The JSON schema is

    {
      "particle":   {"charge": q, "mass": m},
      "field":      {"kind": "constant", "E": [...], "B": [...]}
                  | {"kind": "potential", "potential": {"name": ..., <params>},
                     "fd_step": h},
      "initial":    {"kind": "spinors", "pi": [c, c], "eta": [c, c], "x": [...]}
                  | {"kind": "momentum", "p": [...], "spin_axis": [...],
                     "phase": a, "x": [...]},
      "integrator": {"step": h, "method": "rk4" | "euler", "record_every": n},
      "tau_end":    T
    }

Complex entries c are written [re, im] (a bare number means a real value).
The declared mass must match the mass carried by the initial state to one
part in 1e8; inconsistent files are rejected rather than silently
renormalized.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .dynamics import IntegratorConfig, ParticleState, mass as state_mass
from .errors import ConfigError
from .fields import EMField, FieldConfig, build_potential
from .restframe import spinors_from_momentum
from .spinors import FourVector, Spinor

MASS_CONSISTENCY_TOL = 1e-8


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}")
    return float(value)


def _vector(value, n: int, where: str) -> tuple[float, ...]:
    if not isinstance(value, (list, tuple)) or len(value) != n:
        raise ConfigError(f"{where} must be a list of {n} numbers, got {value!r}")
    return tuple(_number(c, f"{where}[{i}]") for i, c in enumerate(value))


def _complex(value, where: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(_number(value[0], f"{where}[0]"), _number(value[1], f"{where}[1]"))
    raise ConfigError(f"{where} must be a number or [re, im] pair, got {value!r}")


def _spinor(value, where: str) -> Spinor:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigError(f"{where} must hold two complex components, got {value!r}")
    return Spinor(_complex(value[0], f"{where}[0]"), _complex(value[1], f"{where}[1]"))


def _section(data: dict, key: str) -> dict:
    if key not in data:
        raise ConfigError(f"scenario is missing the {key!r} section")
    if not isinstance(data[key], dict):
        raise ConfigError(f"{key} must be an object, got {data[key]!r}")
    return data[key]


@dataclass(frozen=True)
class Scenario:
    """Validated, ready-to-run description of one simulation."""

    charge: float
    mass: float
    field: FieldConfig
    initial: ParticleState
    integrator: IntegratorConfig
    tau_end: float
    initial_spec: dict

    @property
    def K(self) -> float:
        """Charge-to-mass ratio entering the equations of motion."""
        return self.charge / self.mass

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        if not isinstance(data, dict):
            raise ConfigError(f"scenario must be a JSON object, got {type(data).__name__}")

        particle = _section(data, "particle")
        charge = _number(particle.get("charge", 0.0), "particle.charge")
        if "mass" not in particle:
            raise ConfigError("particle.mass is required")
        m = _number(particle["mass"], "particle.mass")
        if m <= 0.0:
            raise ConfigError(f"particle.mass must be positive, got {m}")

        fld = _build_field(_section(data, "field"))
        init_spec = _section(data, "initial")
        initial = _build_initial(init_spec, m)

        integ = data.get("integrator", {})
        if not isinstance(integ, dict):
            raise ConfigError(f"integrator must be an object, got {integ!r}")
        integrator = IntegratorConfig(
            step=_number(integ.get("step", 1e-3), "integrator.step"),
            method=integ.get("method", "rk4"),
            record_every=int(_number(integ.get("record_every", 1), "integrator.record_every")),
        )

        if "tau_end" not in data:
            raise ConfigError("tau_end is required")
        tau_end = _number(data["tau_end"], "tau_end")
        if tau_end <= initial.tau:
            raise ConfigError(f"tau_end must exceed the initial tau {initial.tau}, got {tau_end}")

        carried = state_mass(initial)
        if abs(carried - m) > MASS_CONSISTENCY_TOL * m:
            raise ConfigError(
                f"initial state carries mass {carried:.12g} but particle.mass is {m:.12g}"
            )
        return cls(charge=charge, mass=m, field=fld, initial=initial,
                   integrator=integrator, tau_end=tau_end, initial_spec=dict(init_spec))

    def to_dict(self) -> dict:
        return {
            "particle": {"charge": self.charge, "mass": self.mass},
            "field": dict(self.field.spec),
            "initial": dict(self.initial_spec),
            "integrator": {
                "step": self.integrator.step,
                "method": self.integrator.method,
                "record_every": self.integrator.record_every,
            },
            "tau_end": self.tau_end,
        }


def _build_field(spec: dict) -> FieldConfig:
    kind = spec.get("kind", "constant")
    if kind == "constant":
        E = _vector(spec.get("E", [0.0, 0.0, 0.0]), 3, "field.E")
        B = _vector(spec.get("B", [0.0, 0.0, 0.0]), 3, "field.B")
        return FieldConfig(kind="constant", em=EMField(E, B),
                           spec={"kind": "constant", "E": list(E), "B": list(B)})
    if kind == "potential":
        sub = spec.get("potential")
        if not isinstance(sub, dict):
            raise ConfigError("field.potential must be an object for potential fields")
        fd_step = _number(spec.get("fd_step", 1e-4), "field.fd_step")
        if fd_step <= 0.0:
            raise ConfigError(f"field.fd_step must be positive, got {fd_step}")
        return FieldConfig(kind="potential", potential=build_potential(sub),
                           fd_step=fd_step, spec=dict(spec))
    raise ConfigError(f"field.kind must be 'constant' or 'potential', got {kind!r}")


def _build_initial(spec: dict, m: float) -> ParticleState:
    kind = spec.get("kind")
    x = FourVector.from_array(np.asarray(
        _vector(spec.get("x", [0.0, 0.0, 0.0, 0.0]), 4, "initial.x")))
    tau = _number(spec.get("tau", 0.0), "initial.tau")
    if kind == "spinors":
        for key in ("pi", "eta"):
            if key not in spec:
                raise ConfigError(f"initial.{key} is required for kind 'spinors'")
        return ParticleState(tau=tau, pi=_spinor(spec["pi"], "initial.pi"),
                             eta=_spinor(spec["eta"], "initial.eta"), x=x)
    if kind == "momentum":
        if "p" not in spec:
            raise ConfigError("initial.p is required for kind 'momentum'")
        p = FourVector.from_array(np.asarray(_vector(spec["p"], 4, "initial.p")))
        axis = _vector(spec.get("spin_axis", [0.0, 0.0, 1.0]), 3, "initial.spin_axis")
        phase = _number(spec.get("phase", 0.0), "initial.phase")
        pi, eta = spinors_from_momentum(p, axis, phase)
        return ParticleState(tau=tau, pi=pi, eta=eta, x=x)
    raise ConfigError(f"initial.kind must be 'spinors' or 'momentum', got {kind!r}")


def shipped_names() -> list[str]:
    """Names of the scenario files distributed with the package."""
    base = resources.files("spindyn").joinpath("scenarios")
    return sorted(p.name[:-5] for p in base.iterdir() if p.name.endswith(".json"))


def load_scenario(source: str) -> Scenario:
    """Load a scenario from a JSON file path or a shipped scenario name."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{source}: invalid JSON ({exc})") from exc
        return Scenario.from_dict(data)
    candidate = resources.files("spindyn").joinpath("scenarios", f"{source}.json")
    if candidate.is_file():
        data = json.loads(candidate.read_text(encoding="utf-8"))
        return Scenario.from_dict(data)
    raise ConfigError(
        f"{source!r} is neither a file nor a shipped scenario; shipped: {shipped_names()}"
    )
