"""Matrix group operations for SO(3) and SE(3) in homogeneous form."""
import numpy as np
from scipy.linalg import expm, polar

from .algebra import coords_to_matrix, matrix_to_coords

SMALL_ANGLE = 1e-4
BRANCH_MARGIN = 1e-6


def identity(s):
    return np.eye(s.matrix_size)


def compose(a, b):
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"cannot compose elements of shapes {a.shape} and {b.shape}")
    return a @ b


def inverse(g):
    g = np.asarray(g)
    out = np.zeros_like(g, dtype=float)
    rt = g[:3, :3].T
    out[:3, :3] = rt
    if g.shape[0] == 4:
        out[:3, 3] = -rt @ g[:3, 3]
        out[3, 3] = 1.0
    return out


def make_se3(rotation, translation):
    g = np.eye(4)
    g[:3, :3] = rotation
    g[:3, 3] = translation
    return g


def _hat(w):
    return np.array([[0.0, -w[2], w[1]], [w[2], 0.0, -w[0]], [-w[1], w[0], 0.0]])


def _vee(m):
    return np.array([m[2, 1], m[0, 2], m[1, 0]])


def _rodrigues_coeffs(theta):
    """A = sin t / t, B = (1 - cos t) / t^2, C = (t - sin t) / t^3."""
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0, 0.5 - t2 / 24.0 + t2 * t2 / 720.0, 1.0 / 6.0 - t2 / 120.0
    return (np.sin(theta) / theta, (1.0 - np.cos(theta)) / theta**2,
            (theta - np.sin(theta)) / theta**3)


def _exp_rotation(w):
    theta = np.linalg.norm(w)
    a, b, c = _rodrigues_coeffs(theta)
    W = _hat(w)
    W2 = W @ W
    return np.eye(3) + a * W + b * W2, np.eye(3) + b * W + c * W2


def _log_rotation(R):
    cos = np.clip(0.5 * (np.trace(R) - 1.0), -1.0, 1.0)
    theta = np.arccos(cos)
    if theta >= np.pi - BRANCH_MARGIN:
        raise ValueError(f"rotation angle {theta:.6f} is too close to pi for the principal logarithm")
    if theta < SMALL_ANGLE:
        factor = 0.5 + theta**2 / 12.0
    else:
        factor = 0.5 * theta / np.sin(theta)
    return factor * _vee(R - R.T)


def rotation_angle(g):
    R = np.asarray(g)[:3, :3]
    return float(np.arccos(np.clip(0.5 * (np.trace(R) - 1.0), -1.0, 1.0)))


def group_exp(s, x):
    """Matrix exponential of an algebra element (one-parameter subgroup at t=1)."""
    m = coords_to_matrix(s, x)
    if s.kind == "so3":
        return _exp_rotation(_vee(m))[0]
    if s.kind == "se3":
        R, V = _exp_rotation(_vee(m[:3, :3]))
        return make_se3(R, V @ m[:3, 3])
    return expm(m)


def group_log(s, g):
    """Principal logarithm, inverse of :func:`group_exp`."""
    g = np.asarray(g, dtype=float)
    if s.kind not in ("so3", "se3"):
        raise NotImplementedError(f"no closed-form logarithm for group kind {s.kind!r}")
    w = _log_rotation(g[:3, :3])
    m = np.zeros((s.matrix_size, s.matrix_size))
    m[:3, :3] = _hat(w)
    if s.kind == "se3":
        theta = np.linalg.norm(w)
        W = _hat(w)
        if theta < SMALL_ANGLE:
            coef = 1.0 / 12.0 + theta**2 / 720.0
        else:
            coef = (1.0 - 0.5 * theta * np.sin(theta) / (1.0 - np.cos(theta))) / theta**2
        V_inv = np.eye(3) - 0.5 * W + coef * W @ W
        m[:3, 3] = V_inv @ g[:3, 3]
    return matrix_to_coords(s, m)


def maurer_cartan(s, g, v):
    """Pull a tangent matrix at ``g`` back to the algebra: coords of g^-1 v."""
    return matrix_to_coords(s, inverse(g) @ np.asarray(v))


def left_translate(s, g, x):
    """Push an algebra element to the tangent space at ``g``: g x."""
    return np.asarray(g) @ coords_to_matrix(s, x)


def project_to_group(g):
    """Snap the rotation block to the nearest rotation matrix."""
    g = np.array(g, dtype=float)
    u, _ = polar(g[:3, :3])
    if np.linalg.det(u) < 0:
        raise ValueError("rotation block has negative determinant")
    g[:3, :3] = u
    if g.shape[0] == 4:
        g[3] = (0.0, 0.0, 0.0, 1.0)
    return g


def is_valid(s, g, tol=1e-9):
    g = np.asarray(g)
    if g.shape != (s.matrix_size, s.matrix_size):
        return False
    R = g[:3, :3]
    ok = np.allclose(R.T @ R, np.eye(3), atol=tol) and abs(np.linalg.det(R) - 1.0) < tol
    if s.kind == "se3":
        ok = ok and np.allclose(g[3], (0.0, 0.0, 0.0, 1.0), atol=tol)
    return bool(ok)
