"""Two-component spinor algebra and the spinor/four-vector dictionary.

Conventions, fixed once here and relied on everywhere else:

* Metric signature (+, -, -, -).
* The antisymmetric spinor metric has eps_01 = eps^01 = +1.  Indices are
  lowered by contracting on the left slot, xi_A = xi^B eps_BA, which gives
  (xi_0, xi_1) = (-xi^1, xi^0), and raised with the inverse map.
* The scalar contraction is a^A b_A = a^1 b^0 - a^0 b^1 (antisymmetric).
* A four-vector v = (t, x, y, z) maps to the Hermitian matrix H with
      sqrt(2) H = [[t + z, x + i y], [x - i y, t - z]],
  so det H = (v.v) / 2.  Note the y axis couples through -sigma_2; the
  rotation and boost constructors below compensate so that they act
  right-handedly on the physical axes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonHermitian

SQRT2 = float(np.sqrt(2.0))

# eps^{AB} and eps_{AB} share these components.
EPSILON = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)

# Basis adapted to the Hermitian map above: conjugation by exp(i t/2 n.SIGMA_MAP)
# rotates physical vectors right-handedly about n.  The -SIGMA_2 entry absorbs
# the handedness of the component dictionary.
SIGMA_MAP = np.array([SIGMA_1, -SIGMA_2, SIGMA_3])


@dataclass(frozen=True)
class Spinor:
    """Upper-index two-spinor xi^A = (c0, c1)."""

    c0: complex
    c1: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.c0, self.c1], dtype=complex)

    @classmethod
    def from_array(cls, a) -> "Spinor":
        return cls(complex(a[0]), complex(a[1]))


@dataclass(frozen=True)
class DualSpinor:
    """Lower-index two-spinor xi_A = (c0, c1)."""

    c0: complex
    c1: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.c0, self.c1], dtype=complex)


@dataclass(frozen=True)
class FourVector:
    t: float
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y, self.z], dtype=float)

    @classmethod
    def from_array(cls, a) -> "FourVector":
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def spatial(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


# Spin basis pair: contract(basis_i(), basis_o()) = -1.
def basis_o() -> Spinor:
    return Spinor(0.0, 1.0)


def basis_i() -> Spinor:
    return Spinor(1.0, 0.0)


def lower(s: Spinor) -> DualSpinor:
    """xi_A = xi^B eps_BA, i.e. (xi_0, xi_1) = (-xi^1, xi^0)."""
    return DualSpinor(-s.c1, s.c0)


def raise_(d: DualSpinor) -> Spinor:
    """Inverse of lower(): xi^A = eps^AB xi_B = (xi_1, -xi_0)."""
    return Spinor(d.c1, -d.c0)


def contract(a: Spinor, b: Spinor) -> complex:
    """a^A b_A = a^1 b^0 - a^0 b^1."""
    return a.c1 * b.c0 - a.c0 * b.c1


def outer(a: Spinor, b: Spinor) -> np.ndarray:
    """Bilinear a^A conj(b)^A' as a 2x2 complex matrix indexed [A, A']."""
    return np.outer(a.as_array(), b.as_array().conj())


def hermitian_of(v: FourVector) -> np.ndarray:
    """Hermitian matrix H^{AA'} of a four-vector; det H = (v.v)/2."""
    t, x, y, z = v.t, v.x, v.y, v.z
    return np.array(
        [[t + z, x + 1j * y], [x - 1j * y, t - z]], dtype=complex
    ) / SQRT2


def fourvector_of(H: np.ndarray, tol: float = 1e-10) -> FourVector:
    """Invert hermitian_of.  Raises NonHermitian if H strays from H^dagger.

    The tolerance is absolute on matrix entries; callers hitting it have an
    upstream algebra bug, not a rounding problem.
    """
    H = np.asarray(H, dtype=complex)
    residue = float(np.abs(H - H.conj().T).max())
    if residue > tol:
        raise NonHermitian(f"matrix deviates from Hermitian by {residue:.3e}")
    t = (H[0, 0] + H[1, 1]).real / SQRT2
    z = (H[0, 0] - H[1, 1]).real / SQRT2
    x = SQRT2 * H[0, 1].real
    y = SQRT2 * H[0, 1].imag
    return FourVector(t, x, y, z)


def minkowski_dot(a: FourVector, b: FourVector) -> float:
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z


def minkowski_norm(v: FourVector) -> float:
    """Squared interval v.v with signature (+,-,-,-)."""
    return minkowski_dot(v, v)


@dataclass(frozen=True)
class Sl2cGenerator:
    """Infinitesimal transformation parameters per unit evolution step.

    omega holds the boost-like parts, theta the rotation-like parts; the
    complex combination used in the generator matrix is (omega + i theta)/2.
    """

    omega: tuple[float, float, float]
    theta: tuple[float, float, float]


def generator_matrix(g: Sl2cGenerator) -> np.ndarray:
    """Traceless 2x2 generator with entries

        [[da3, da1 + i da2], [da1 - i da2, -da3]],  da = (omega + i theta)/2.

    Layout note: row index is the lower (contracted) slot, column the upper,
    so this is the transpose of the usual Pauli expansion da.sigma.
    """
    da = 0.5 * (np.asarray(g.omega, dtype=float) + 1j * np.asarray(g.theta, dtype=float))
    return np.array(
        [[da[2], da[0] + 1j * da[1]], [da[0] - 1j * da[1], -da[2]]],
        dtype=complex,
    )


def expm_traceless(A: np.ndarray) -> np.ndarray:
    """Matrix exponential of a traceless 2x2 matrix, in closed form.

    Uses A^2 = -det(A) I: exp(A) = cosh(r) I + (sinh(r)/r) A, r^2 = -det A.
    """
    A = np.asarray(A, dtype=complex)
    r = np.sqrt(complex(A[0, 0] * A[0, 0] + A[0, 1] * A[1, 0]))
    if abs(r) < 1e-60:
        return np.eye(2, dtype=complex) + A
    return np.cosh(r) * np.eye(2, dtype=complex) + (np.sinh(r) / r) * A


def sl2c_rotation(axis, angle: float) -> np.ndarray:
    """SL(2,C) element rotating four-vectors by `angle` about the unit `axis`,
    right-handed in physical coordinates."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    return expm_traceless(0.5j * angle * np.einsum("i,ijk->jk", n, SIGMA_MAP))


def sl2c_boost(direction, rapidity: float) -> np.ndarray:
    """SL(2,C) pure boost: a rest state acquires momentum m*sinh(rapidity)
    along the unit `direction`."""
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    return expm_traceless(0.5 * rapidity * np.einsum("i,ijk->jk", n, SIGMA_MAP))


def transform_spinor(U: np.ndarray, s: Spinor) -> Spinor:
    return Spinor.from_array(np.asarray(U, dtype=complex) @ s.as_array())


def transform_fourvector(U: np.ndarray, v: FourVector) -> FourVector:
    U = np.asarray(U, dtype=complex)
    return fourvector_of(U @ hermitian_of(v) @ U.conj().T)
