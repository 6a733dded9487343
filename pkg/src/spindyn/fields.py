"""Electromagnetic field in spinor form.

The central object is the symmetric field spinor phi^{AB}, built either
directly from the E and B three-vectors or by epsilon-contraction of a
generator matrix with boost part E and rotation part B.  Both routes must
agree to machine precision; tests enforce it.

The rank-four object F^{AA'BB'} = eps^{AB} conj(phi)^{A'B'} + eps^{A'B'} phi^{AB}
acts on index-lowered momentum matrices.  Its four-tensor form is never
hand-coded: tensor_from_bigF pushes the four basis vectors through the
spinor map and reads off the matrix, so the tensor route is derived from
the spinor route by construction.

Sign conventions downstream of this module: with the lowering rule fixed in
`spinors`, a positive charge in a uniform B = B zhat sees its transverse
momentum rotate counterclockwise (d/dtau (px + i py) = +i (qB/m)(px + i py)).
The electric sector matches the textbook force law (d p_x / dtau =
(q/m) E_x p^t for E along x).  The magnetic sense is opposite to the usual
textbook orientation; it is what the algebra of this formulation produces,
and the verification suite pins it against the independent tensor oracle.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, NonReal
from .spinors import (
    EPSILON,
    METRIC,
    FourVector,
    Sl2cGenerator,
    fourvector_of,
    generator_matrix,
    hermitian_of,
)


@dataclass(frozen=True)
class EMField:
    """Uniform electric and magnetic three-vectors."""

    e: tuple[float, float, float]
    b: tuple[float, float, float]

    def e_vec(self) -> np.ndarray:
        return np.asarray(self.e, dtype=float)

    def b_vec(self) -> np.ndarray:
        return np.asarray(self.b, dtype=float)


def phi_from_EB(E, B) -> np.ndarray:
    """Symmetric field spinor from field components.

    phi^{00} = -[(Ex + By) - i(Ey - Bx)]/2
    phi^{01} = phi^{10} = (Ez + i Bz)/2
    phi^{11} = +[(Ex - By) + i(Ey + Bx)]/2
    """
    Ex, Ey, Ez = (float(c) for c in E)
    Bx, By, Bz = (float(c) for c in B)
    p00 = -0.5 * ((Ex + By) - 1j * (Ey - Bx))
    p01 = 0.5 * (Ez + 1j * Bz)
    p11 = 0.5 * ((Ex - By) + 1j * (Ey + Bx))
    return np.array([[p00, p01], [p01, p11]], dtype=complex)


def phi_from_generators(eps, beta) -> np.ndarray:
    """Field spinor by epsilon-contraction of the generator matrix:
    phi^{AB} = -eps^{AC} G_C^B with G built from (eps + i beta)/2.

    Independent construction route; must match phi_from_EB(eps, beta).
    """
    G = generator_matrix(Sl2cGenerator(tuple(float(c) for c in eps),
                                       tuple(float(c) for c in beta)))
    return -EPSILON @ G


def require_symmetric(phi: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    phi = np.asarray(phi, dtype=complex)
    if abs(phi[0, 1] - phi[1, 0]) > tol:
        raise ValueError(f"field spinor must be symmetric; off-diagonal gap {abs(phi[0,1]-phi[1,0]):.3e}")
    return phi


def bigF_from_phi(phi: np.ndarray) -> np.ndarray:
    """Rank-four field object F[A, A', B, B'] =
    eps^{AB} conj(phi)^{A'B'} + eps^{A'B'} phi^{AB}."""
    phi = require_symmetric(phi)
    pc = phi.conj()
    return (
        np.einsum("ab,cd->acbd", EPSILON, pc)
        + np.einsum("cd,ab->acbd", EPSILON, phi)
    )


def lower_hermitian(H: np.ndarray) -> np.ndarray:
    """Lower both indices of a matrix-form four-vector:
    H_{BB'} = eps_{CB} eps_{C'B'} H^{CC'}; swaps the diagonal and negates
    the off-diagonal entries."""
    return np.array(
        [[H[1, 1], -H[1, 0]], [-H[0, 1], H[0, 0]]], dtype=complex
    )


def apply_bigF(F4: np.ndarray, K_herm: np.ndarray) -> np.ndarray:
    """Contract F^{AA'BB'} with the index-lowered matrix of k, returning the
    matrix form of dk/dtau (up to the charge-to-mass factor)."""
    return np.einsum("abcd,cd->ab", np.asarray(F4), lower_hermitian(np.asarray(K_herm)))


def tensor_from_bigF(F4: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Fully lowered antisymmetric tensor F_{ab} equivalent to F4.

    Derived operationally: each basis vector is pushed through apply_bigF
    and converted back, giving the mixed matrix F^a_b; the metric then
    lowers the first index.  Raises NonReal if any pushed-through matrix
    acquires a non-Hermitian residue above `tol`.
    """
    mixed = np.zeros((4, 4))
    for b in range(4):
        e = np.zeros(4)
        e[b] = 1.0
        out = apply_bigF(F4, hermitian_of(FourVector.from_array(e)))
        residue = float(np.abs(out - out.conj().T).max())
        if residue > tol:
            raise NonReal(f"non-Hermitian residue {residue:.3e} while extracting tensor column {b}")
        mixed[:, b] = fourvector_of(out).as_array()
    return METRIC @ mixed


def mixed_from_lowered(F_low: np.ndarray) -> np.ndarray:
    """Raise the first index: F^a_b = g^{ac} F_{cb}.  This is the matrix
    that acts on contravariant momentum components in the force law."""
    return METRIC @ np.asarray(F_low, dtype=float)


def eb_from_tensor(F_low: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Read E and B back out of the lowered tensor (inverse of the
    constant-field construction chain).

    The component map matches the spinor-side construction, where the
    y axis enters through the conjugated Pauli matrix; that flips the
    sign of the two y readings relative to the textbook layout.
    """
    F = np.asarray(F_low, dtype=float)
    E = np.array([F[0, 1], -F[0, 2], F[0, 3]])
    B = np.array([F[2, 3], F[1, 3], F[1, 2]])
    return E, B


def field_from_potential(A, x: FourVector, fd_step: float = 1e-4) -> np.ndarray:
    """Lowered tensor F_{ab} = d_a A_b - d_b A_a at the event x, from the
    covariant potential callback A(x four-array) -> four components.

    Derivatives are central finite differences with step `fd_step`; exact
    (to roundoff) for potentials at most quadratic in the coordinates.
    """
    x0 = x.as_array()
    grad = np.zeros((4, 4))  # grad[a, b] = d_a A_b
    for a in range(4):
        dx = np.zeros(4)
        dx[a] = fd_step
        Ap = np.asarray(A(x0 + dx), dtype=float)
        Am = np.asarray(A(x0 - dx), dtype=float)
        grad[a] = (Ap - Am) / (2.0 * fd_step)
    return grad - grad.T


# ---------------------------------------------------------------------------
# Named potentials available to scenario configuration files.


def _uniform_potential(E, B):
    # Mirror the y components so the derivative tensor reads back as the
    # requested (E, B) under eb_from_tensor; see that function's note.
    Em = np.asarray(E, dtype=float) * np.array([1.0, -1.0, 1.0])
    Bm = np.asarray(B, dtype=float) * np.array([1.0, -1.0, 1.0])

    def A(x):
        r = np.asarray(x, dtype=float)[1:]
        # A_t = -E.r reproduces the electric block; the symmetric gauge
        # A_i = -(1/2) eps_ijk r_j B_k reproduces the magnetic block.
        return np.array([-float(Em @ r), *(-0.5 * np.cross(r, Bm))])

    return A


def _magnetic_gradient_potential(B0: float, gradient: float):
    def A(x):
        r = np.asarray(x, dtype=float)
        # B_z = B0 + gradient * x, from A_y = B0 x + gradient x^2 / 2.
        return np.array([0.0, 0.0, B0 * r[1] + 0.5 * gradient * r[1] ** 2, 0.0])

    return A


POTENTIALS = {
    "uniform": (_uniform_potential, ("E", "B")),
    "magnetic_gradient": (_magnetic_gradient_potential, ("B0", "gradient")),
}


def build_potential(spec: dict):
    """Resolve a potential spec {"name": ..., <params>} from a config file."""
    if "name" not in spec:
        raise ConfigError("field.potential.name is required for potential fields")
    name = spec["name"]
    if name not in POTENTIALS:
        raise ConfigError(
            f"field.potential.name {name!r} is not one of {sorted(POTENTIALS)}"
        )
    builder, params = POTENTIALS[name]
    missing = [p for p in params if p not in spec]
    if missing:
        raise ConfigError(f"field.potential missing parameter(s) {missing} for {name!r}")
    return builder(*(spec[p] for p in params))


@dataclass
class FieldConfig:
    """Field seen by the integrator.

    kind "constant": uniform EMField, phi fixed for the whole run.
    kind "potential": covariant potential callback; the tensor is obtained
    by finite differences at the current worldline point and converted to
    (E, B) and then to phi, so the particle samples the local field.
    """

    kind: str
    em: EMField | None = None
    potential: object = None
    fd_step: float = 1e-4
    spec: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("constant", "potential"):
            raise ConfigError(f"field.kind must be 'constant' or 'potential', got {self.kind!r}")
        if self.kind == "constant" and self.em is None:
            raise ConfigError("field.kind 'constant' requires E and B")
        if self.kind == "potential" and self.potential is None:
            raise ConfigError("field.kind 'potential' requires a potential")
        self._phi_const = (
            phi_from_EB(self.em.e, self.em.b) if self.kind == "constant" else None
        )

    @property
    def is_constant(self) -> bool:
        return self.kind == "constant"

    def phi_at(self, x: FourVector) -> np.ndarray:
        if self._phi_const is not None:
            return self._phi_const
        E, B = eb_from_tensor(field_from_potential(self.potential, x, self.fd_step))
        return phi_from_EB(E, B)

    def tensor_at(self, x: FourVector) -> np.ndarray:
        """Lowered F_{ab} at x.  For constant fields this goes through the
        full spinor chain so that both dynamical routes share one source."""
        if self._phi_const is not None:
            return tensor_from_bigF(bigF_from_phi(self._phi_const))
        return field_from_potential(self.potential, x, self.fd_step)

    @staticmethod
    def constant(E, B) -> "FieldConfig":
        em = EMField(tuple(float(c) for c in E), tuple(float(c) for c in B))
        return FieldConfig(kind="constant", em=em, spec={"kind": "constant", "E": list(em.e), "B": list(em.b)})
