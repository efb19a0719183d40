"""Generalized Reed-Solomon codes: generator matrices, canonical keys and duality."""

import numpy as np

from grscount import GF, INF, GrsParams, code_key, grs_generator
from grscount.grscore import dual_params, grs_key, is_grs_dim3
from grscount.linalg import is_mds, matmul

F = GF(7)

# a [6,3] GRS code over GF(7): evaluation points t (INF allowed) and column multipliers d
p = GrsParams(3, (0, 1, 2, 3, 4, INF), (1, 1, 2, 3, 1, 5))
G = grs_generator(F, p)
print("generator matrix:")
print(G)
print("MDS:", is_mds(F, G))

# the canonical key is the reduced row echelon form, so row operations do not change it
key = code_key(F, G)
print("key (RREF):")
print(key.matrix())
A = np.array([[1, 2, 0], [0, 1, 3], [4, 0, 1]], dtype=np.uint8)  # invertible over GF(7)
assert code_key(F, matmul(F, A, G)) == key
print("same key after a change of basis: True")

# different parameters can give the same code: shifting every t by a constant is one example
shifted = GrsParams(3, tuple(x if x is INF else (x + 1) % 7 for x in p.t), p.d)
print("shifted t gives", "the same" if grs_key(F, shifted) == key else "a different", "code")

# the dual of a GRS code is GRS on the same points with new multipliers
dp = dual_params(F, p)
H = grs_generator(F, dp)
print("dual multipliers:", dp.d)
print("G H^T = 0:", not matmul(F, G, H.T).any())

# for k = 3, being GRS means the columns lie on a conic
print("recognised as GRS:", is_grs_dim3(F, key))
