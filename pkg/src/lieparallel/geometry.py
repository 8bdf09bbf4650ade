"""Geodesics and parallel transport from the reduced equations in the algebra.

A geodesic is described by its position ``g`` and its left-angular velocity
``omega = g^-1 dg/dt`` which follows ``d omega/dt = ad_star(omega, omega)``.
A vector field ``Y = g zeta`` is parallel along the curve iff
``d zeta/dt = -connection_alpha(omega, zeta)``.
"""
import enum
from typing import NamedTuple, Optional

import numpy as np

from . import group
from .algebra import ad_star, bracket, connection_alpha, coords_to_matrix, norm


class NonConvergence(RuntimeError):
    """Raised when the shooting solver for the logarithm fails."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class Scheme(enum.Enum):
    """Explicit Runge-Kutta schemes.

    RK2 and RK4 treat the position through its matrix entries. RKMK4 is the
    Munthe-Kaas variant of RK4 that keeps the position on the group; it is
    offered for long integrations and is not used by the benchmark.
    """

    RK2 = "rk2"
    RK4 = "rk4"
    RKMK4 = "rkmk4"

    @property
    def tableau(self):
        return _TABLEAUS[self]

    @property
    def order(self):
        return 2 if self is Scheme.RK2 else 4


_RK4 = ([[], [0.5], [0.0, 0.5], [0.0, 0.0, 1.0]], [1 / 6, 1 / 3, 1 / 3, 1 / 6])
_TABLEAUS = {
    Scheme.RK2: ([[], [0.5]], [0.0, 1.0]),
    Scheme.RK4: _RK4,
    Scheme.RKMK4: _RK4,
}


class GeodesicState(NamedTuple):
    position: np.ndarray
    velocity: np.ndarray


class TransportState(NamedTuple):
    geodesic: GeodesicState
    zeta: np.ndarray


def _scheme(scheme):
    return scheme if isinstance(scheme, Scheme) else Scheme(str(scheme).lower())


def geodesic_rhs(s, state):
    g, w = state
    return GeodesicState(group.left_translate(s, g, w), ad_star(s, w, w))


def transport_rhs(s, omega, zeta):
    return -connection_alpha(s, omega, zeta)


def _dexpinv_right(s, u, v):
    # g = g0 exp(u) with g^-1 dg/dt = v gives du/dt = v + [u, v]/2 + [u, [u, v]]/12 + ...;
    # the truncation suffices for fourth order
    uv = bracket(s, u, v)
    return v + 0.5 * uv + bracket(s, u, uv) / 12.0


def _step(s, g, w, z, h, scheme):
    """One explicit RK step of the coupled (position, velocity, transported) system."""
    a, b = scheme.tableau
    lie = scheme is Scheme.RKMK4
    kg, kw, kz = [], [], []
    for i, row in enumerate(a):
        wi = w + h * sum(c * k for c, k in zip(row, kw)) if i else w
        zi = None
        if z is not None:
            zi = z + h * sum(c * k for c, k in zip(row, kz)) if i else z
        if lie:
            theta = h * sum(c * k for c, k in zip(row, kg)) if i else np.zeros_like(w)
            kg.append(_dexpinv_right(s, theta, wi))
        else:
            gi = g + h * sum(c * k for c, k in zip(row, kg)) if i else g
            kg.append(gi @ coords_to_matrix(s, wi))
        kw.append(ad_star(s, wi, wi))
        if z is not None:
            kz.append(-connection_alpha(s, wi, zi))
    dg = h * sum(c * k for c, k in zip(b, kg) if c)
    g_new = g @ group.group_exp(s, dg) if lie else g + dg
    w_new = w + h * sum(c * k for c, k in zip(b, kw) if c)
    z_new = None if z is None else z + h * sum(c * k for c, k in zip(b, kz) if c)
    return g_new, w_new, z_new


def _integrate(s, g, w, z, t_end, n_steps, scheme, project_every=None):
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    scheme = _scheme(scheme)
    g = np.array(g, dtype=float)
    w = np.array(w, dtype=float)
    z = None if z is None else np.array(z, dtype=float)
    if not np.any(w):
        return g, w, z
    h = t_end / n_steps
    for k in range(1, n_steps + 1):
        g, w, z = _step(s, g, w, z, h, scheme)
        if project_every and k % project_every == 0:
            g = group.project_to_group(g)
    return g, w, z


def integrate_geodesic(s, initial, t_end=1.0, n_steps=100, scheme=Scheme.RK4, project_every=None):
    """Fixed-step integration of the Euler-Poincare geodesic equation."""
    g, w, _ = _integrate(s, initial[0], initial[1], None, t_end, n_steps, scheme, project_every)
    return GeodesicState(g, w)


def riemannian_exp(s, base, v, n_steps=100, scheme=Scheme.RK4):
    """Endpoint at t=1 of the geodesic from ``base`` with left-angular velocity ``v``."""
    return integrate_geodesic(s, (base, v), 1.0, n_steps, scheme).position


def riemannian_log(s, base, target, n_steps=100, scheme=Scheme.RK4, tol=1e-10, max_iter=50,
                   fd_step=1e-6, step_tol=1e-13):
    """Initial velocity of the geodesic from ``base`` to ``target`` by shooting.

    Damped Gauss-Newton on ``riemannian_exp(base, v) - target`` with a central
    finite-difference Jacobian, started from the group logarithm.

    A few-step RK exponential leaves the group by a tiny amount, so targets
    produced by another such exponential may be off its image. The solver
    then stops at the least-squares point, detected by a Gauss-Newton step
    shorter than ``step_tol``.
    """
    base = np.asarray(base, dtype=float)
    target = np.asarray(target, dtype=float)
    rel = group.inverse(base) @ target
    angle = group.rotation_angle(rel)
    if angle >= np.pi - 0.1:
        raise ValueError(f"target too far from base (relative rotation angle {angle:.4f})")

    def residual(v):
        return (riemannian_exp(s, base, v, n_steps, scheme) - target).ravel()

    v = group.group_log(s, rel)
    r = residual(v)
    err = np.linalg.norm(r)
    for _ in range(max_iter):
        if err <= tol:
            return v
        jac = np.empty((r.size, s.dim))
        for i in range(s.dim):
            dv = np.zeros(s.dim)
            dv[i] = fd_step
            jac[:, i] = (residual(v + dv) - residual(v - dv)) / (2 * fd_step)
        step = np.linalg.lstsq(jac, -r, rcond=None)[0]
        if np.linalg.norm(step) <= step_tol * max(1.0, np.linalg.norm(v)):
            return v
        t = 1.0
        while t > 1e-4:
            v_try = v + t * step
            r_try = residual(v_try)
            err_try = np.linalg.norm(r_try)
            if err_try < err:
                break
            t *= 0.5
        else:
            raise NonConvergence(f"line search stalled at residual {err:.3e}", err)
        v, r, err = v_try, r_try, err_try
    if err <= tol:
        return v
    raise NonConvergence(f"no convergence after {max_iter} iterations (residual {err:.3e})", err)


def parallel_transport_geodesic(s, base, direction, zeta0, n_steps=100, scheme=Scheme.RK4):
    """Transport ``zeta0`` along the geodesic from ``base`` with velocity ``direction``.

    Returns the endpoint and the transported vector in left-trivialized
    coordinates; the ambient vector is ``left_translate(s, endpoint, zeta)``.
    """
    g, _, z = _integrate(s, base, direction, zeta0, 1.0, n_steps, scheme)
    return g, z


def transport_geodesic_full(s, base, direction, zeta0, n_steps=100, scheme=Scheme.RK4, t_end=1.0):
    """Like :func:`parallel_transport_geodesic` but returns the whole state at ``t_end``."""
    g, w, z = _integrate(s, base, direction, zeta0, t_end, n_steps, scheme)
    return TransportState(GeodesicState(g, w), z)


def parallel_transport_curve(s, curve, zeta0, scheme=Scheme.RK4, t_end=1.0):
    """Transport ``zeta0`` along a sampled curve.

    ``curve`` is a sequence of ``(position, omega)`` pairs at uniform times
    on ``[0, t_end]``; omega is interpolated linearly between samples.
    Only the velocities enter the reduced equation.
    """
    if len(curve) < 2:
        raise ValueError("a curve needs at least two samples")
    scheme = _scheme(scheme)
    a, b = scheme.tableau
    nodes = [sum(row) for row in a]
    omegas = np.array([np.asarray(w, dtype=float) for _, w in curve])
    h = t_end / (len(curve) - 1)
    z = np.array(zeta0, dtype=float)
    for w0, w1 in zip(omegas[:-1], omegas[1:]):
        ks = []
        for row, c in zip(a, nodes):
            zi = z + h * sum(coef * k for coef, k in zip(row, ks))
            ks.append(-connection_alpha(s, (1 - c) * w0 + c * w1, zi))
        z = z + h * sum(coef * k for coef, k in zip(b, ks))
    return z


def pole_ladder(s, base, direction, zeta0, n_rungs, n_steps=1, log_tol=1e-13, scale=None):
    """Pole ladder transport of ``zeta0`` along the geodesic ``t -> exp_base(t direction)``.

    Every exponential is a single RK4 step and every logarithm is a shooting
    problem built on the same one-step exponential.
    """
    if n_rungs < 1:
        raise ValueError("n_rungs must be at least 1")
    zeta0 = np.asarray(zeta0, dtype=float)
    size = norm(s, zeta0)
    if size == 0 or not np.any(direction):
        return zeta0.copy()
    if scale is None:
        scale = float(np.clip(1.0 / (size * n_rungs), 1e-3, 1.0))
    h = 1.0 / n_rungs
    x = np.array(base, dtype=float)
    w = np.array(direction, dtype=float)
    v = zeta0.copy()

    def exp(p, u):
        return riemannian_exp(s, p, u, n_steps, Scheme.RK4)

    def log(p, q):
        return riemannian_log(s, p, q, n_steps, Scheme.RK4, tol=log_tol)

    for _ in range(n_rungs):
        mid = exp(x, 0.5 * h * w)
        x_next, w_next, _ = _integrate(s, x, w, None, h, n_steps, Scheme.RK4)
        q = exp(x, scale * v)
        q_sym = exp(mid, -log(mid, q))
        v = -log(x_next, q_sym) / scale
        x, w = x_next, w_next
    return v
