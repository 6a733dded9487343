"""Throughput comparison of the constant-field stepping kernels.

Runs the same integration through the compiled backend and the pure
Python fallback, reports steps per second for each, and checks that the
two produce bit-identical samples.  Usage:

    python3 benchmarks/bench_kernels.py [--steps N] [--repeats R]
"""
import argparse
import time

import numpy as np

from spindyn import FourVector, coefficient_matrix, phi_from_EB, spinors_from_momentum
from spindyn import _kernels_py

try:
    from spindyn import _kernels_c
except ImportError:
    _kernels_c = None


def run(impl, args, n_steps, record_every):
    pi, eta, x, cmat, mass0, h = args
    return impl.integrate_constant(pi, eta, x, cmat, mass0, h,
                                   n_steps, record_every)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=200_000)
    ap.add_argument("--record-every", type=int, default=1_000)
    ap.add_argument("--repeats", type=int, default=3)
    ns = ap.parse_args()

    p = FourVector(np.sqrt(1.0 + 0.75**2 + 0.3**2), 0.75, 0.0, 0.3)
    pi, eta = spinors_from_momentum(p, (1.0, 0.0, 1.0))
    cmat = 1.0 * coefficient_matrix(phi_from_EB([0.3, 0.0, 0.0], [0.0, 0.0, 1.0]))
    args = (pi.as_array(), eta.as_array(),
            np.zeros(4), cmat, 1.0, 1e-3)

    impls = [("python", _kernels_py)]
    if _kernels_c is not None:
        impls.append(("cython", _kernels_c))
    else:
        print("compiled backend not importable; benchmarking fallback only")

    outputs, rates = {}, {}
    for name, impl in impls:
        best = np.inf
        for _ in range(ns.repeats):
            t0 = time.perf_counter()
            outputs[name] = run(impl, args, ns.steps, ns.record_every)
            best = min(best, time.perf_counter() - t0)
        rates[name] = ns.steps / best
        print(f"{name:>8}: {best:8.4f} s  ({rates[name]:12,.0f} steps/s)")

    if len(impls) == 2:
        gaps = [np.abs(a - b).max()
                for a, b in zip(outputs["python"], outputs["cython"])]
        print(f"backend agreement: max gap {max(float(g) for g in gaps):.3g}")
        print(f"speedup: {rates['cython'] / rates['python']:.1f}x")


if __name__ == "__main__":
    main()
