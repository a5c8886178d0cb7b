"""Walk from a shift vector to certified gamma closed forms.

A shift (k, l, m) moves the parameters of 2F1(a, b; c | z) along a line.  The
decomposition F(beta + gamma) = R F(beta) + Q F'(beta) collapses to a pure
first-order relation wherever Q vanishes along the whole line; those lines
and their arguments z0 are the admissible families.
"""

from gammaeval.admissibility import admissibility_polynomial, solve
from gammaeval.gamma_synthesis import synthesize

shift = "2,2,1"
poly = admissibility_polynomial(shift)
print(f"Q along the line a+2t, b+2t, c+t vanishes iff these {poly.degree + 1} coefficients do:")
for i, coeff in enumerate(poly.coefficients):
    print(f"  t^{i}: {coeff}")

families = solve(shift).families
print(f"\n{len(families)} admissible families for {shift}:")
for fam in families:
    print("  ", fam)

print("\nGamma closed forms, each certified at 200 bits:")
for fam in families:
    ev = synthesize(fam, prec=200)
    print("  ", ev.render())
    print("     worst residual:", ev.certification.to_json()["worst"])

print("\nThe same search finds arguments 1/5 and 4/5 along steeper shifts:")
for shift in ("-1,-1,4", "1,1,6"):
    for fam in solve(shift).families[:2]:
        print("  ", synthesize(fam).render())
