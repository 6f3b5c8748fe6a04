"""
Block structure mirrors entry structure
=======================================

For a *-linear map the entries of the matricization satisfy
ell[i, j, k, l] = conj(ell[k, l, i, j]).  So a pattern among the blocks
L_ij (zeros, Toeplitz repetition, ...) holds exactly when the same pattern
holds inside every block.
"""

import numpy as np

from hillrep.hill import hill
from hillrep.linmap import random_star_linear
from hillrep.structure import (
    analyze_structure,
    hill_from_blocks_entries,
    random_structured_star_linear,
    standard_patterns,
)

pats = standard_patterns(3, 3)
lmap = random_structured_star_linear(3, 3, [pats["toeplitz"]], seed=1)
print("block L_01 =\n", np.round(lmap.block(0, 1), 3))
print("block L_12 =\n", np.round(lmap.block(1, 2), 3))
print("each block is itself Toeplitz:", np.isclose(lmap.block(0, 1)[0, 0], lmap.block(0, 1)[1, 1]))

report = analyze_structure(lmap)
print("block-level patterns:", sorted(report.block_patterns))
print("entry-level patterns:", sorted(report.entry_patterns))

# An unstructured map shows no patterns at either level.
print("random map patterns:", sorted(analyze_structure(random_star_linear(3, 3, 6, seed=2)).block_patterns))

# With picked blocks as the basis, H is read straight off the entries of L.
rep = hill(lmap, "blocks")
H = hill_from_blocks_entries(lmap, rep.basis.picks)
print("picks:", rep.basis.picks)
print("entry-read H equals constructed H bit for bit:", np.array_equal(H, rep.H))
