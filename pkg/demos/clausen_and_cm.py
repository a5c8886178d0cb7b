"""Squares of 2F1 evaluations and complex-multiplication constants.

Clausen's formula turns 2F1(a, b; a+b+1/2 | z)^2 into a single 3F2.  Applied
to an admissible family at z0 = 1/4 it yields a 3F2 evaluation whose
specialization t = -1/4 is a classical constant.
"""

from fractions import Fraction

from gammaeval import corpus
from gammaeval.admissibility import solve
from gammaeval.gamma_synthesis import clausen_square, synthesize
from gammaeval.numerics import certify, numeric_value

quarter = next(f for f in solve("-1,3,2").families if f.z0 == Fraction(1, 4) and f.base[1] == 1)
ev = synthesize(quarter)
print("Admissible family:", quarter)
print("  ", ev.render())

square = clausen_square(ev)
print("\nClausen square:")
print("  ", square.render())
cert = certify(square, points=[0, Fraction(1, 4), Fraction(1, 2), 1], prec=200)
print(cert.report())

const = corpus.load("cf-3f2-quarter")
print("\nAt t = -1/4 the square becomes", const.render())
print("   series:      ", numeric_value(const.lhs, prec=120))
print("   closed form: ", numeric_value(const.rhs, prec=120))
print("   square(-1/4):", numeric_value(square.rhs, {"t": Fraction(-1, 4)}, prec=120))

print("\nProducts of Gamma(j/N)^legendre(j, N):")
for name in ("cm-64", "cm-43"):
    rec = corpus.load(name)
    print(f"  {rec.render()}")
    print("   ", certify(rec, prec=200).report().splitlines()[0].strip())
