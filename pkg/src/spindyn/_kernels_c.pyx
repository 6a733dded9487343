# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled stepping kernel for constant fields.

Same scheme, same call signature, same recording layout as _kernels_py;
only the speed differs.  Keep the two in lockstep when editing.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

BACKEND_NAME = "cython"

ctypedef double complex cplx

cdef double SQRT2 = sqrt(2.0)


cdef inline void _momentum(cplx a0, cplx a1, cplx b0, cplx b1, double* out) nogil:
    cdef double m00 = (a0.real * a0.real + a0.imag * a0.imag
                       + b0.real * b0.real + b0.imag * b0.imag)
    cdef double m11 = (a1.real * a1.real + a1.imag * a1.imag
                       + b1.real * b1.real + b1.imag * b1.imag)
    cdef cplx cross = a0 * a1.conjugate() + b0 * b1.conjugate()
    out[0] = (m00 + m11) / SQRT2
    out[1] = SQRT2 * cross.real
    out[2] = SQRT2 * cross.imag
    out[3] = (m00 - m11) / SQRT2


def integrate_constant(pi, eta, x, cmat, mass0, h, n_steps, record_every, euler=False):
    """See _kernels_py.integrate_constant; identical contract."""
    cdef long n = int(n_steps)
    cdef long every = int(record_every)

    idx_list = list(range(0, n + 1, every))
    # wraparound is off, so no negative indexing here
    if idx_list[len(idx_list) - 1] != n:
        idx_list.append(n)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] idx = np.asarray(idx_list, dtype=np.int64)
    cdef long n_rec = idx.shape[0]

    cdef cnp.ndarray[cnp.complex128_t, ndim=2] spinors = np.empty((n_rec, 4), dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] xs = np.empty((n_rec, 4), dtype=np.float64)

    cdef cplx c00 = complex(cmat[0][0]), c01 = complex(cmat[0][1])
    cdef cplx c10 = complex(cmat[1][0]), c11 = complex(cmat[1][1])
    cdef cplx p0 = complex(pi[0]), p1 = complex(pi[1])
    cdef cplx e0 = complex(eta[0]), e1 = complex(eta[1])
    cdef double x0 = float(x[0]), x1 = float(x[1]), x2 = float(x[2]), x3 = float(x[3])
    cdef double hh = float(h)
    cdef double inv_m = 1.0 / float(mass0)
    cdef bint use_euler = bool(euler)

    cdef long rec = 0
    cdef long next_rec = idx[0]
    cdef long k
    cdef double w
    cdef cplx kp0a, kp1a, ke0a, ke1a, kp0b, kp1b, ke0b, ke1b
    cdef cplx kp0c, kp1c, ke0c, ke1c, kp0d, kp1d, ke0d, ke1d
    cdef cplx q0, q1, f0, f1, np0, np1
    cdef double kxa[4]
    cdef double kxb[4]
    cdef double kxc[4]
    cdef double kxd[4]

    for k in range(n + 1):
        if k == next_rec:
            spinors[rec, 0] = p0
            spinors[rec, 1] = p1
            spinors[rec, 2] = e0
            spinors[rec, 3] = e1
            xs[rec, 0] = x0
            xs[rec, 1] = x1
            xs[rec, 2] = x2
            xs[rec, 3] = x3
            rec += 1
            next_rec = idx[rec] if rec < n_rec else -1
        if k == n:
            break

        if use_euler:
            _momentum(p0, p1, e0, e1, kxa)
            np0 = p0 + hh * (c00 * p0 + c01 * p1)
            np1 = p1 + hh * (c10 * p0 + c11 * p1)
            p0 = np0
            p1 = np1
            np0 = e0 + hh * (c00 * e0 + c01 * e1)
            np1 = e1 + hh * (c10 * e0 + c11 * e1)
            e0 = np0
            e1 = np1
            x0 += hh * kxa[0] * inv_m
            x1 += hh * kxa[1] * inv_m
            x2 += hh * kxa[2] * inv_m
            x3 += hh * kxa[3] * inv_m
            continue

        # stage 1
        kp0a = c00 * p0 + c01 * p1
        kp1a = c10 * p0 + c11 * p1
        ke0a = c00 * e0 + c01 * e1
        ke1a = c10 * e0 + c11 * e1
        _momentum(p0, p1, e0, e1, kxa)
        # stage 2
        q0 = p0 + 0.5 * hh * kp0a
        q1 = p1 + 0.5 * hh * kp1a
        f0 = e0 + 0.5 * hh * ke0a
        f1 = e1 + 0.5 * hh * ke1a
        kp0b = c00 * q0 + c01 * q1
        kp1b = c10 * q0 + c11 * q1
        ke0b = c00 * f0 + c01 * f1
        ke1b = c10 * f0 + c11 * f1
        _momentum(q0, q1, f0, f1, kxb)
        # stage 3
        q0 = p0 + 0.5 * hh * kp0b
        q1 = p1 + 0.5 * hh * kp1b
        f0 = e0 + 0.5 * hh * ke0b
        f1 = e1 + 0.5 * hh * ke1b
        kp0c = c00 * q0 + c01 * q1
        kp1c = c10 * q0 + c11 * q1
        ke0c = c00 * f0 + c01 * f1
        ke1c = c10 * f0 + c11 * f1
        _momentum(q0, q1, f0, f1, kxc)
        # stage 4
        q0 = p0 + hh * kp0c
        q1 = p1 + hh * kp1c
        f0 = e0 + hh * ke0c
        f1 = e1 + hh * ke1c
        kp0d = c00 * q0 + c01 * q1
        kp1d = c10 * q0 + c11 * q1
        ke0d = c00 * f0 + c01 * f1
        ke1d = c10 * f0 + c11 * f1
        _momentum(q0, q1, f0, f1, kxd)

        w = hh / 6.0
        p0 = p0 + w * (kp0a + 2.0 * (kp0b + kp0c) + kp0d)
        p1 = p1 + w * (kp1a + 2.0 * (kp1b + kp1c) + kp1d)
        e0 = e0 + w * (ke0a + 2.0 * (ke0b + ke0c) + ke0d)
        e1 = e1 + w * (ke1a + 2.0 * (ke1b + ke1c) + ke1d)
        x0 += w * (kxa[0] + 2.0 * (kxb[0] + kxc[0]) + kxd[0]) * inv_m
        x1 += w * (kxa[1] + 2.0 * (kxb[1] + kxc[1]) + kxd[1]) * inv_m
        x2 += w * (kxa[2] + 2.0 * (kxb[2] + kxc[2]) + kxd[2]) * inv_m
        x3 += w * (kxa[3] + 2.0 * (kxb[3] + kxc[3]) + kxd[3]) * inv_m

    return idx, spinors, xs
