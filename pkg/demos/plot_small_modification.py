"""
The small modification as a kernel computation
==============================================

For d >= 2 the hypersurface Y is the degeneracy locus of a matrix M, and its
small modification Y' is cut out by the 3x3 minors of a second matrix N.
Points move between them by taking kernels.
"""

from p1cox import RationalPoint, build_matrices, cox_equation, forward_map, inverse_map
from p1cox import GradingGroup, make_ring

Z = GradingGroup(1)
Q = make_ring(("T1", "T2", "T3", "T4", "T5"), [Z.degree((1,))] * 5, ["T1*T2 + T3*T4 + T5^2"])
eq = cox_equation([Q.parse(s) for s in ("T1^3", "T2^3", "T5^3")], Q, ("T6", "T7"))
mats = build_matrices(eq)

print("det M =", mats.det_M())
print("minors of N:", [str(m) for m in mats.minors_N()])

# z = (1, -1, 1, 1, 0) lies on the quadric, and (0:1) is a root of f there
pt = RationalPoint((1, -1, 1, 1, 0), (0, 1))
img = forward_map(mats, pt)
print(pt, "->", img)
print(img, "->", inverse_map(mats, img))

###############################################################################
# Where the map is undefined
# --------------------------
# When every coefficient vanishes at z, M has rank d - 1 and the kernel is
# two-dimensional.
from p1cox import IndeterminacyLocus

try:
    forward_map(mats, RationalPoint((0, 0, 1, 0, 0), (1, 1)))
except IndeterminacyLocus as exc:
    print("undefined:", exc, "locus", exc.locus)
