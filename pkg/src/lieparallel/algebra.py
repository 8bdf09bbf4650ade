"""Lie algebra of a matrix group with a left-invariant metric.

Algebra elements are handled as coordinate vectors in an orthonormal basis;
matrices are only a view obtained with :func:`coords_to_matrix`.
"""
from dataclasses import dataclass, field

import numpy as np

SPAN_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class LieGroupStructure:
    """Orthonormal basis of a matrix Lie algebra and its structure constants.

    ``structure_constants[i, j, k]`` is the ``e_k`` coordinate of ``[e_i, e_j]``.
    ``kind`` selects the closed-form exp/log in :mod:`lieparallel.group`.
    """

    kind: str
    basis: np.ndarray
    beta: float = 1.0
    structure_constants: np.ndarray = field(init=False, repr=False)
    _dual: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        basis = np.array(self.basis, dtype=float)
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        flat = basis.reshape(len(basis), -1)
        # rows of the pseudo-inverse give the coordinate functionals
        dual = np.linalg.pinv(flat)
        dual.setflags(write=False)
        object.__setattr__(self, "_dual", dual)
        brackets = np.einsum("iab,jbc->ijac", basis, basis)
        brackets = brackets - brackets.transpose(1, 0, 2, 3)
        n, m = self.dim, self.matrix_size
        consts = brackets.reshape(n * n, m * m) @ dual
        consts = consts.reshape(n, n, n)
        consts[np.abs(consts) < 1e-15] = 0.0
        consts.setflags(write=False)
        object.__setattr__(self, "structure_constants", consts)

    @property
    def dim(self):
        return self.basis.shape[0]

    @property
    def matrix_size(self):
        return self.basis.shape[1]

    def unit(self, i):
        """Coordinates of the basis vector ``e_i`` (zero-based)."""
        x = np.zeros(self.dim)
        x[i] = 1.0
        return x


def _hat(w):
    return np.array([[0.0, -w[2], w[1]], [w[2], 0.0, -w[0]], [-w[1], w[0], 0.0]])


def build_se3_structure(beta=1.0):
    """Structure of se(3) with metric diag(1, 1, 1, beta, 1, 1).

    The rotation generators carry a 1/sqrt(2) factor and the x-translation a
    1/sqrt(beta) factor, so the basis is orthonormal and the metric is the
    identity in these coordinates.
    """
    beta = float(beta)
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    basis = np.zeros((6, 4, 4))
    for i in range(3):
        basis[i, :3, :3] = _hat(np.eye(3)[i]) / np.sqrt(2.0)
    basis[3, 0, 3] = 1.0 / np.sqrt(beta)
    basis[4, 1, 3] = 1.0
    basis[5, 2, 3] = 1.0
    return LieGroupStructure("se3", basis, beta)


def build_so3_structure():
    """Structure of so(3) with its bi-invariant metric."""
    basis = np.array([_hat(e) for e in np.eye(3)]) / np.sqrt(2.0)
    return LieGroupStructure("so3", basis, 1.0)


def _check(s, *vectors):
    for v in vectors:
        if np.shape(v) != (s.dim,):
            raise ValueError(f"expected a vector of length {s.dim}, got shape {np.shape(v)}")


def coords_to_matrix(s, x):
    _check(s, x)
    return np.tensordot(x, s.basis, axes=1)


def matrix_to_coords(s, m):
    """Project a matrix onto the algebra; raise if it is not in the span."""
    m = np.asarray(m, dtype=float)
    if m.shape != (s.matrix_size, s.matrix_size):
        raise ValueError(f"expected a {s.matrix_size}x{s.matrix_size} matrix, got {m.shape}")
    x = m.reshape(-1) @ s._dual
    residual = np.linalg.norm(m - np.tensordot(x, s.basis, axes=1))
    if residual > SPAN_TOL:
        raise ValueError(f"matrix is not in the Lie algebra (residual {residual:.3e})")
    return x


def bracket(s, x, y):
    _check(s, x, y)
    return np.einsum("i,j,ijk->k", x, y, s.structure_constants)


def inner(s, x, y):
    _check(s, x, y)
    return float(np.dot(x, y))


def norm(s, x):
    return np.sqrt(inner(s, x, x))


def ad_star(s, a, b):
    """Metric dual of ad: <ad_star(a, b), c> = <b, [a, c]> for every c."""
    _check(s, a, b)
    return np.einsum("i,j,ikj->k", a, b, s.structure_constants)


def connection_alpha(s, x, y):
    """Levi-Civita covariant derivative of left-invariant fields at the identity."""
    return 0.5 * (bracket(s, x, y) - ad_star(s, x, y) - ad_star(s, y, x))
