"""Linear forms ``const + slope*t`` used as hypergeometric parameters."""

from dataclasses import dataclass
from fractions import Fraction

from .polynomial import Polynomial


@dataclass(frozen=True)
class LinearForm:
    const: Fraction
    slope: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "const", Fraction(self.const))
        object.__setattr__(self, "slope", Fraction(self.slope))

    @classmethod
    def parse(cls, text):
        from .expr import parse_linear_form

        return parse_linear_form(text)

    def poly(self, var="t"):
        return Polynomial(self.const) + Polynomial.var(var) * self.slope

    def at(self, t):
        return self.const + self.slope * Fraction(t)

    def shifted(self, steps):
        """The form at ``t + steps``."""
        return LinearForm(self.const + self.slope * steps, self.slope)

    def __add__(self, other):
        if isinstance(other, LinearForm):
            return LinearForm(self.const + other.const, self.slope + other.slope)
        return LinearForm(self.const + Fraction(other), self.slope)

    __radd__ = __add__

    def __mul__(self, k):
        k = Fraction(k)
        return LinearForm(self.const * k, self.slope * k)

    __rmul__ = __mul__

    def __str__(self):
        if self.slope == 0:
            return _frac(self.const)
        if self.slope == 1:
            head = "t"
        elif self.slope == -1:
            head = "-t"
        elif self.slope.denominator == 1:
            head = f"{self.slope}t"
        else:
            head = f"({self.slope})t"
        if self.const == 0:
            return head
        sign = "+" if self.const > 0 else "-"
        return f"{head}{sign}{_frac(abs(self.const))}"


def _frac(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def as_form(x):
    if isinstance(x, LinearForm):
        return x
    if isinstance(x, str):
        return LinearForm.parse(x)
    return LinearForm(Fraction(x))
