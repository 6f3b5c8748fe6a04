"""
*-linear versus Hermitian-preserving over the reals
===================================================

A map with real entries can send every symmetric matrix to a symmetric
matrix and still fail to be *-linear.  The small 2 x 2 -> 3 x 3 map below is
such a case: its Choi matrix is not symmetric.
"""

import numpy as np

from hillrep.hill import minimal_rank
from hillrep.linmap import apply, from_function, is_hermitian_preserving, is_star_linear


def f(K):
    return np.diag([K[0, 0] + K[0, 1], K[1, 0] + K[1, 1], 0])


lmap = from_function(f, n=3, q=2)
C = lmap.choi().M
print("Choi matrix:\n", C.real.astype(int))
print("Choi symmetric:", np.array_equal(C, C.T))

print("is_star_linear:", is_star_linear(lmap))
print("symmetric in, symmetric out (real field):", is_hermitian_preserving(lmap, field="real"))
print("Hermitian in, Hermitian out (complex field):", is_hermitian_preserving(lmap, field="complex"))

# The map even sends a non-symmetric real matrix to a symmetric one.
K = np.array([[1.0, 2.0], [3.0, 4.0]])
print("f(K) =\n", apply(lmap, K).real)

# The Choi rank is still defined, but no Hill representation is built.
print("rank of the Choi matrix:", minimal_rank(lmap))
