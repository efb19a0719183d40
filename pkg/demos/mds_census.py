"""MDS codes of dimension 3 by brute force, set against the GRS codes among them."""

import time

from grscount import GF
from grscount import census, formulas

# an MDS [n,3] code is an n-arc in PG(2,q) with scalings; the GRS ones lie on a conic
print(" q  n            MDS            GRS   MDS/GRS")
for q, n in [(5, 6), (7, 6), (8, 6), (7, 7)]:
    F = GF(q)
    start = time.perf_counter()
    mds = census.count_mds_bruteforce(F, 3, n)
    grs = census.enumerate_grs(F, 3, n)[0]
    assert mds == formulas.gamma_mds3(n, q) and grs == formulas.gamma_grs(3, n, q)
    print(f"{q:2d} {n:2d} {mds:14d} {grs:14d} {mds / grs:9.3f}   ({time.perf_counter() - start:.1f}s)")

# classify arc by arc: a 6-arc gives a GRS code exactly when it lies on a conic
mds, grs = census.count_grs_among_mds_dim3(GF(7), 6)
print(f"\nq=7, n=6: {mds} MDS codes, {grs} of them GRS")

# the closed-form table, with GRS and MDS columns side by side
print("\n q  n             GRS             MDS")
for q, n, g, m in formulas.table1_formula_rows():
    print(f"{q:2d} {n:2d} {g:15d} {m:15d}")
