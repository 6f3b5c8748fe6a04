"""
Building a minimal Hill representation
======================================

Every *-linear map V -> L(V) can be written as

    L(V) = sum_{k,l} H[k, l] A_l V A_k^*

with m = rank(Choi) matrices A_k and a Hermitian invertible m x m Hill
matrix H.  Here we build one for the transpose map and one for a random map.
"""

import numpy as np

from hillrep.hill import apply_hill, hill, reconstruct, representation_residuals
from hillrep.linmap import random_star_linear, transpose_map

# The transpose map on 2 x 2 matrices needs four terms.
rep = hill(transpose_map(2), strategy="blocks")
print("picked blocks:", rep.basis.picks)
print("A_k:")
for A in rep.As:
    print(A.real.astype(int))
print("H =\n", rep.H.real.astype(int))
V = np.array([[1.0, 2.0], [3.0, 4.0]])
print("apply_hill(V) =\n", apply_hill(rep, V).real)

# A random *-linear map 3 x 3 -> 2 x 2 with a Choi matrix of rank 4.
lmap = random_star_linear(n=2, q=3, rank=4, seed=11)
for strategy in ("blocks", "qr"):
    rep = hill(lmap, strategy)
    res = representation_residuals(lmap, rep)
    print(f"{strategy:6s} m={rep.m}  reconstruction={res['L_rel']:.1e}  "
          f"H Hermitian={res['H_hermitian']:.1e}  eig(H)={np.round(np.linalg.eigvalsh(rep.H), 3)}")

# The matricization is recovered as sum_{k,l} H_kl conj(A_k) kron A_l.
print("max |L - reconstruct| =", np.max(np.abs(reconstruct(rep).L - lmap.L)))
