"""
Geodesics, logarithm and parallel transport
===========================================

Shoot a geodesic with the reduced equation, recover its initial velocity by
shooting, and transport a vector along it.
"""

import numpy as np

from lieparallel import (Scheme, build_se3_structure, inner, parallel_transport_geodesic,
                         riemannian_exp, riemannian_log, transport_geodesic_full)
from lieparallel.group import left_translate

s = build_se3_structure(beta=1.5)
rng = np.random.default_rng(1)
base = np.eye(4)
v = rng.uniform(-1, 1, 6)

end = riemannian_exp(s, base, v, n_steps=100, scheme=Scheme.RK4)
print(end.round(4))

# the logarithm inverts the exponential up to the shooting tolerance
print(np.abs(riemannian_log(s, base, end, n_steps=100) - v).max())

###############################################################################
# Transport a vector; its norm and its angle with the velocity are preserved
zeta0 = rng.uniform(-1, 1, 6)
state = transport_geodesic_full(s, base, v, zeta0, n_steps=200)
print(inner(s, state.zeta, state.zeta) - inner(s, zeta0, zeta0))
print(inner(s, state.zeta, state.geodesic.velocity) - inner(s, zeta0, v))

# the transported tangent vector at the endpoint, as a 4x4 matrix
g1, zeta1 = parallel_transport_geodesic(s, base, v, zeta0, n_steps=200)
print(left_translate(s, g1, zeta1).round(4))
