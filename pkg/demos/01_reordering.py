"""
The block reordering map
========================

The reordering sends every n x q block S_ij of a block matrix to one column
of the output, as vec(S_ij).  It only moves entries around, so it can be
undone exactly.
"""

import numpy as np

from hillrep.reorder import BlockShape, reorder, reorder_inverse
from hillrep.tensorops import vec

# A 2 x 2 grid of 2 x 3 blocks, with entries that name their own position.
shape = BlockShape(n=2, q=3, p=2, r=2)
S = np.arange(1, 25).reshape(4, 6).astype(float)
print("S =\n", S.real)

R = reorder(S, shape)
print("reorder(S) =\n", R.real)

# Column j*p + i holds vec of block (i, j).
print("column 1 equals vec(S_10):", np.array_equal(R[:, 1], vec(S[2:4, 0:3])))

# Undoing the reordering is exact, not merely close.
print("round trip exact:", np.array_equal(reorder_inverse(R, shape), S))

# Kronecker products become rank-one outer products of vectorizations.
rng = np.random.default_rng(0)
A, B = rng.standard_normal((2, 2)), rng.standard_normal((2, 3))
print("reorder(A kron B) == vec(B) vec(A)^T:",
      np.allclose(reorder(np.kron(A, B), shape), np.outer(vec(B), vec(A))))
