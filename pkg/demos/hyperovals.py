"""Hyperovals in PG(2,8), hyperconic codes of length 10, and what puncturing them leaves."""

import random
from fractions import Fraction
from math import factorial

from grscount import GF
from grscount import census, formulas, geom
from grscount.grscore import hyperconic_generator, puncture
from grscount.linalg import code_key

F = GF(8)

# every hyperoval of PG(2,8) is a conic plus its nucleus
h = geom.hyperoval_census(F)
print(f"hyperovals: {h.count} (through the unit frame: {h.through_frame}), all hyperconic: {h.all_hyperconic}")

# a [10,3] hyperconic code: conic columns with the nucleus inserted
params = census.random_hyperconic(F, random.Random(1))
G = hyperconic_generator(F, params)
print("generator matrix:")
print(G)
print("hyperconic codes of length 10:", formulas.gamma_grs_hyper(8))

# removing r coordinates gives an MDS code of length 10 - r; each one arises
# from exactly r! (q-1)^r choices of the removed columns
key = code_key(F, G)
for r in (1, 2, 3):
    short = puncture(F, key, r)
    print(f"r={r}: fiber size {census.fiber_size(F, short.matrix(), r)}, "
          f"expected {factorial(r) * 7**r}")

# hence MDS(10-r) / GRS(10-r) = (q+2)/r
for r in (1, 2, 3):
    n = 10 - r
    ratio = Fraction(formulas.gamma_mds3(n, 8), formulas.gamma_grs(3, n, 8))
    print(f"n={n}: MDS/GRS = {ratio}")
