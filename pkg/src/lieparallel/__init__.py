"""Geodesics and parallel transport on matrix Lie groups with left-invariant metrics."""
from .algebra import (LieGroupStructure, ad_star, bracket, build_se3_structure,
                      build_so3_structure, connection_alpha, coords_to_matrix, inner,
                      matrix_to_coords, norm)
from .geometry import (GeodesicState, NonConvergence, Scheme, TransportState, geodesic_rhs,
                       integrate_geodesic, parallel_transport_curve, parallel_transport_geodesic,
                       pole_ladder, riemannian_exp, riemannian_log, transport_geodesic_full,
                       transport_rhs)

__version__ = "0.1.0"
