"""Creative telescoping in the shift parameter.

Zeilberger's algorithm finds a recurrence in t for F(t) = sum_n A(t, n)
together with a rational certificate; the certificate identity is checked in
exact arithmetic, so the recurrence is proved, not just observed.
"""

from fractions import Fraction

from gammaeval.telescoping import HyperTermFamily, certificate_residue, numeric_shadow, zeilberger

G = HyperTermFamily(["1/2", "t", "1-t"], ["1", "1/2+t"], "1/4")
run = zeilberger(G)
rec = run.recurrence
print(f"G(t) = 3F2(1/2, t, 1-t; 1, t+1/2 | 1/4) satisfies an order-{run.order} recurrence")
print(f"(orders {list(run.infeasible_orders)} have no solution):")
for p, s in zip(rec.coefficients, rec.shifts):
    print(f"  [{p}] * G(t{s:+d})")
print("certificate residue:", certificate_residue(G, rec))
for t, res, ok in numeric_shadow(G, rec, points=(Fraction(3, 2), Fraction(5, 2), Fraction(7, 3))):
    print(f"  numeric check t={t}: relative residual {float(res):.2e}")

g1, g2 = G.sum_value(1), G.sum_value(2)
print(f"\nTerminating values: G(1) = {g1}, G(2) = {g2}.")
print("At t = 1 the recurrence reads p0(1) G(2) + p1(1) G(1) = 0:",
      rec.coefficients[0].evaluate({"t": 1}) * g2 + rec.coefficients[1].evaluate({"t": 1}) * g1)
print("A relation with t(4t-1)(4t+1) and -(2t+1)(10t^2-10t+3) would need 15*G(2) = 9*G(1):",
      15 * g2, "vs", 9 * g1)

print("\nTwo 3F2 families at z = 2 also drop to order 2:")
for up, low in ((["1/3", "t", "-1/3+2t"], ["2/3", "1/2+t"]), (["2/3", "t", "-2/3+2t"], ["4/3", "1/2+t"])):
    term = HyperTermFamily(up, low, "2")
    r = zeilberger(term)
    print(f"  upper {up}: order {r.order}, certificate exact: {certificate_residue(term, r.recurrence).is_zero()}")
