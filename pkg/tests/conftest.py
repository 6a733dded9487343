"""Shared fixtures and the acceptance-summary hook.

Any test in test_acceptance.py gets one PASS/FAIL line in the terminal
summary, so the criteria can be eyeballed without scrolling the full run.
"""
import numpy as np
import pytest
from hypothesis import settings

from spindyn import FourVector, ParticleState, Spinor, mass

settings.register_profile("spindyn", deadline=None, max_examples=100)
settings.load_profile("spindyn")


@pytest.fixture
def rng():
    return np.random.default_rng(20260819)


def random_massive_state(rng, tau=0.0):
    """Random spinor pair, rejection-sampled away from the light cone."""
    while True:
        vals = rng.normal(size=8)
        pi = Spinor(complex(vals[0], vals[1]), complex(vals[2], vals[3]))
        eta = Spinor(complex(vals[4], vals[5]), complex(vals[6], vals[7]))
        state = ParticleState(tau, pi, eta, FourVector(0.0, 0.0, 0.0, 0.0))
        if mass(state) > 0.3:
            return state


@pytest.fixture
def make_state():
    return random_massive_state


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            if getattr(rep, "when", "call") not in ("call", None) and outcome != "error":
                continue
            name = nodeid.split("::")[-1]
            rows.append((name, "PASS" if outcome == "passed" else "FAIL"))
    if not rows:
        return
    rows.sort()
    tr = terminalreporter
    tr.write_sep("-", "acceptance criteria")
    for name, verdict in rows:
        label = name.removeprefix("test_criterion_")
        num, _, slug = label.partition("_")
        tr.write_line(f"criterion {num:>2}  {slug.replace('_', ' '):<52} {verdict}")
