"""
Effective, movable and nef cones
================================

For a general hypersurface of bidegree (d, L) in P^1 x Z with dim Z = m, the
three cones depend only on how d compares with 1 and with m.
"""

from p1cox import cones

for d, m in [(1, 3), (2, 3), (3, 3), (2, 4), (4, 4)]:
    print(cones(d, m).to_text())
    print()
