"""Coefficientwise verification of q-series identities.

Both sides are expanded as power series in q with polynomial coefficients in
the free parameters and compared up to a truncation order.  A false identity
reports the first order at which the sides differ.
"""

from gammaeval import expr as ex
from gammaeval import qseries as Q

for name in sorted(Q.BUILTIN_IDENTITIES):
    print(Q.verify_builtin(name, order=40).report())

print("\nFirst terms of the a-family sum:")
print("  ", Q.qsum(ex.parse(Q.BUILTIN_IDENTITIES["q-chern"][0]), 6))

print("\nSwapping d/b for b/d in one product breaks the b -> q/b symmetry of the sum:")
lhs = Q.BUILTIN_IDENTITIES["q-cc21"][0]
wrong = "poch(q*b*d; q^2; inf)*poch(q^2*b/d; q^2; inf)/poch(q*d; q; inf)"
print(Q.verify_q_identity(lhs, wrong, 20, name="swapped").report())

print("\nThe sum also obeys a first-order q-difference relation in a, visible as a vanishing defect:")
defect = Q.telescoping_defect(Q.BUILTIN_IDENTITIES["q-chern"][0], 30, "a*q^2",
                              "(1 - a*q)*(1 - a^3*q^3)", "(1 - a^2*q)*(1 - a^2*q^3)")
print("  ", defect)
