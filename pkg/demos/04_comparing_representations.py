"""
Comparing two minimal representations
=====================================

Two minimal Hill representations of one map are linked by an invertible
matrix Phi with H = Phi H' Phi^*.  The Blocks and QR strategies give
different A_k and H for the same map; compare() recovers Phi and checks all
the relations between them.
"""

import numpy as np

from hillrep.hill import compare, hill, hill_from_A
from hillrep.linmap import identity_map, random_star_linear

lmap = random_star_linear(n=3, q=2, rank=3, seed=5)
blocks, qr = hill(lmap, "blocks"), hill(lmap, "qr")
bridge = compare(blocks, qr)
print("Phi =\n", np.round(bridge.Phi, 4))
for name, value in sorted(bridge.residuals.items()):
    print(f"  {name:18s} {value:.1e}")

# Swapping the arguments inverts Phi.
back = compare(qr, blocks)
print("Phi(A,B) Phi(B,A) = I:", np.allclose(bridge.Phi @ back.Phi, np.eye(3)))

# Scaling: the identity map written with A_1 = 2 I needs H' = [1/4].
a = hill(identity_map(2))
b = hill_from_A(identity_map(2), [2 * np.eye(2)])
print("H =", a.H.real, " H' =", b.H.real, " Phi =", compare(a, b).Phi.real)
