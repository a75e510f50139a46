"""
The Cox ring of a hypersurface in P^1 x Q
=========================================

Q is the smooth quadric threefold, whose Cox ring is Q[T1..T5] modulo the
single relation T1*T2 + T3*T4 + T5^2.  We cut out a hypersurface of bidegree
(2, 3) in P^1 x Q and write down its Cox ring.
"""

from p1cox import GradingGroup, build_presentation, check_hypotheses, expand_cox_equation, make_ring
from p1cox import Ring

Z = GradingGroup(1)
Q = make_ring(("T1", "T2", "T3", "T4", "T5"), [Z.degree((1,))] * 5, ["T1*T2 + T3*T4 + T5^2"])

# T6, T7 are the coordinates of P^1; the equation is read off in the signed
# form f_0*T6^2 - f_1*T6*T7 + f_2*T7^2
amb = Ring(Q.ring.names + ("T6", "T7"))
f = amb.parse("T1^3*T6^2 - T2^3*T6*T7 + T5^3*T7^2")
eq = expand_cox_equation(f, Q, ("T6", "T7"))
print("coefficients:", [str(c) for c in eq.coefficients])

# f_0, f_1, f_2 must form a regular sequence modulo the quadric
report = check_hypotheses(eq, Q)
print(report.to_text())

# two new generators S1, S2 of degree (-1, 3) and three new relations
P = build_presentation(eq)
print()
print(P.to_text())
