"""Conics in PG(2,q), their nuclei in characteristic 2, and fitting a normal rational curve."""

from grscount import GF
from grscount import geom
from grscount.grscore import fit_nrc, grs_generator, nrc_point_set
from grscount.linalg import matmul

F = GF(8)

# five points with no three collinear fix a unique conic
five = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)]
conic = geom.conic_through_five(F, five)
print("conic coefficients (x^2, y^2, z^2, xy, yz, xz):", conic.coeffs)
pts = conic.points(F)
print(f"{len(pts)} points (q+1 = {F.q + 1})")

# in even characteristic every tangent line passes through one extra point, the nucleus
N = geom.nucleus(F, conic)
print("nucleus:", N)
tangents = {geom.tangent_line(F, conic, p) for p in pts}
print("tangent lines through the nucleus:",
      all(F.sum(F.mul(a, b) for a, b in zip(line, N)) == 0 for line in tangents))

# conic plus nucleus is a hyperoval: q+2 points, no three collinear
oval = list(pts) + [N]
print("hyperoval:", geom.is_arc(F, oval) and len(oval) == F.q + 2)
print("hyperconic:", geom.is_hyperconic(F, oval))

# the same five points are the image of a normal rational curve, fitted explicitly
R, params = fit_nrc(F, five)
print("evaluation points:", params.t)
print("multipliers:", params.d)
cols = matmul(F, R, grs_generator(F, params))
print("fitted columns match the points:",
      [geom.normalize(F, c) for c in cols.T.tolist()] == [geom.normalize(F, p) for p in five])
print("curve equals the conic:", nrc_point_set(F, R, 3) == frozenset(pts))
