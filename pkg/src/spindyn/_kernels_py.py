"""Pure-Python stepping kernel for constant fields.

Reference implementation of the hot loop: fixed-step RK4 (or Euler) on the
combined state (pi, eta, x) with a constant spinor coefficient matrix.  The
compiled kernel in _kernels_c.pyx implements the identical scheme; tests
hold the two to close agreement.  Scalar arithmetic is deliberate - small
fixed-size state, so array machinery would only add overhead here.
"""
from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

_SQRT2 = 2.0 ** 0.5


def _record_indices(n_steps: int, record_every: int) -> np.ndarray:
    idx = list(range(0, n_steps + 1, record_every))
    if idx[-1] != n_steps:
        idx.append(n_steps)
    return np.asarray(idx, dtype=np.int64)


def integrate_constant(pi, eta, x, cmat, mass0, h, n_steps, record_every, euler=False):
    """Advance n_steps of size h and return samples at the record indices.

    pi, eta: length-2 complex sequences; x: length-4 floats; cmat: 2x2
    complex coefficient matrix C with d(xi)/dtau = C xi (charge-to-mass
    ratio already folded into C by the caller); mass0: conserved invariant
    mass used for the worldline equation dx/dtau = p / mass0.

    Returns (indices, spinors, xs): step indices (int64, starting at 0),
    spinor samples as complex rows (pi0, pi1, eta0, eta1), and worldline
    samples as float rows (t, x, y, z).
    """
    idx = _record_indices(int(n_steps), int(record_every))
    n_rec = len(idx)
    spinors = np.empty((n_rec, 4), dtype=complex)
    xs = np.empty((n_rec, 4), dtype=float)

    c00, c01 = complex(cmat[0][0]), complex(cmat[0][1])
    c10, c11 = complex(cmat[1][0]), complex(cmat[1][1])
    p0, p1 = complex(pi[0]), complex(pi[1])
    e0, e1 = complex(eta[0]), complex(eta[1])
    x0, x1, x2, x3 = (float(c) for c in x)
    h = float(h)
    inv_m = 1.0 / float(mass0)

    def momentum(a0, a1, b0, b1):
        m00 = (a0.real * a0.real + a0.imag * a0.imag
               + b0.real * b0.real + b0.imag * b0.imag)
        m11 = (a1.real * a1.real + a1.imag * a1.imag
               + b1.real * b1.real + b1.imag * b1.imag)
        cross = a0 * a1.conjugate() + b0 * b1.conjugate()
        return ((m00 + m11) / _SQRT2, _SQRT2 * cross.real,
                _SQRT2 * cross.imag, (m00 - m11) / _SQRT2)

    rec = 0
    next_rec = int(idx[0])
    for k in range(n_steps + 1):
        if k == next_rec:
            spinors[rec] = (p0, p1, e0, e1)
            xs[rec] = (x0, x1, x2, x3)
            rec += 1
            next_rec = int(idx[rec]) if rec < n_rec else -1
        if k == n_steps:
            break

        if euler:
            pt0, pt1, pt2, pt3 = momentum(p0, p1, e0, e1)
            # tuple assignment: the right side sees only pre-step values
            p0, p1 = p0 + h * (c00 * p0 + c01 * p1), p1 + h * (c10 * p0 + c11 * p1)
            e0, e1 = e0 + h * (c00 * e0 + c01 * e1), e1 + h * (c10 * e0 + c11 * e1)
            x0 += h * pt0 * inv_m
            x1 += h * pt1 * inv_m
            x2 += h * pt2 * inv_m
            x3 += h * pt3 * inv_m
            continue

        # classical RK4, stages written out
        # stage 1
        kp0a = c00 * p0 + c01 * p1
        kp1a = c10 * p0 + c11 * p1
        ke0a = c00 * e0 + c01 * e1
        ke1a = c10 * e0 + c11 * e1
        kxa = momentum(p0, p1, e0, e1)
        # stage 2
        q0 = p0 + 0.5 * h * kp0a
        q1 = p1 + 0.5 * h * kp1a
        f0 = e0 + 0.5 * h * ke0a
        f1 = e1 + 0.5 * h * ke1a
        kp0b = c00 * q0 + c01 * q1
        kp1b = c10 * q0 + c11 * q1
        ke0b = c00 * f0 + c01 * f1
        ke1b = c10 * f0 + c11 * f1
        kxb = momentum(q0, q1, f0, f1)
        # stage 3
        q0 = p0 + 0.5 * h * kp0b
        q1 = p1 + 0.5 * h * kp1b
        f0 = e0 + 0.5 * h * ke0b
        f1 = e1 + 0.5 * h * ke1b
        kp0c = c00 * q0 + c01 * q1
        kp1c = c10 * q0 + c11 * q1
        ke0c = c00 * f0 + c01 * f1
        ke1c = c10 * f0 + c11 * f1
        kxc = momentum(q0, q1, f0, f1)
        # stage 4
        q0 = p0 + h * kp0c
        q1 = p1 + h * kp1c
        f0 = e0 + h * ke0c
        f1 = e1 + h * ke1c
        kp0d = c00 * q0 + c01 * q1
        kp1d = c10 * q0 + c11 * q1
        ke0d = c00 * f0 + c01 * f1
        ke1d = c10 * f0 + c11 * f1
        kxd = momentum(q0, q1, f0, f1)

        w = h / 6.0
        p0 = p0 + w * (kp0a + 2.0 * (kp0b + kp0c) + kp0d)
        p1 = p1 + w * (kp1a + 2.0 * (kp1b + kp1c) + kp1d)
        e0 = e0 + w * (ke0a + 2.0 * (ke0b + ke0c) + ke0d)
        e1 = e1 + w * (ke1a + 2.0 * (ke1b + ke1c) + ke1d)
        x0 += w * (kxa[0] + 2.0 * (kxb[0] + kxc[0]) + kxd[0]) * inv_m
        x1 += w * (kxa[1] + 2.0 * (kxb[1] + kxc[1]) + kxd[1]) * inv_m
        x2 += w * (kxa[2] + 2.0 * (kxb[2] + kxc[2]) + kxd[2]) * inv_m
        x3 += w * (kxa[3] + 2.0 * (kxb[3] + kxc[3]) + kxd[3]) * inv_m

    return idx, spinors, xs
