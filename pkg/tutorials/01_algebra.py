"""
The Lie algebra of SE(3) with an anisotropic metric
====================================================

Build the orthonormal basis for a given anisotropy, look at the structure
constants and at the connection form of the left-invariant metric.
"""

import numpy as np

from lieparallel import bracket, build_se3_structure, connection_alpha

s = build_se3_structure(beta=2.0)
e = s.unit

# basis matrices are a view; algebra elements are coordinate vectors
print(s.basis[3])

# nonzero structure constants C[i, j, k] = <[e_i, e_j], e_k>
C = s.structure_constants
for i, j, k in zip(*np.nonzero(C)):
    if i < j:
        print(f"C_{i + 1}{j + 1}^{k + 1} = {C[i, j, k]: .6f}")

###############################################################################
# The connection is torsion free: alpha(x, y) - alpha(y, x) = [x, y]
x, y = np.random.default_rng(0).normal(size=(2, 6))
print(connection_alpha(s, x, y) - connection_alpha(s, y, x) - bracket(s, x, y))

# For beta != 1 the connection mixes rotations and the anisotropic translation
print(connection_alpha(s, e(1), e(3)))
