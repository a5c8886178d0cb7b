"""Linear recurrences in t with polynomial coefficients."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from .polynomial import ONE, ZERO, Polynomial, gcd
from .rational import RationalFunction


def content_free(coeffs, inhomogeneity=None):
    """Divide out the common polynomial factor and fix the overall sign.

    The first nonzero coefficient ends up integer-primitive with a positive
    leading coefficient.  Returns the list, or ``(list, inhomogeneity)`` when
    an inhomogeneous term is passed.
    """
    coeffs = [c if isinstance(c, Polynomial) else Polynomial(c) for c in coeffs]
    g = reduce(gcd, coeffs, ZERO)
    if g.is_zero():
        raise ValueError("all coefficients vanish")
    if inhomogeneity is not None and not inhomogeneity.is_zero():
        scale = RationalFunction(g)
    else:
        scale = None
    out = [c.exquo(g) for c in coeffs]
    lead = next(c for c in out if not c.is_zero())
    unit = lead.rational_content()
    if lead.leading_coefficient() < 0:
        unit = -unit
    out = [c * (1 / unit) for c in out]
    if inhomogeneity is None:
        return out
    if scale is not None:
        inhomogeneity = inhomogeneity / (scale * unit)
    return out, inhomogeneity


@dataclass(frozen=True)
class Certificate:
    """``B(t, n) = multiplier(t, n) * A(t + base_shift, n)``."""

    multiplier: RationalFunction
    base_shift: int = 0


@dataclass(frozen=True)
class Recurrence:
    """``sum_i coefficients[i](t) * F(t + shifts[i]) = inhomogeneity(t)``.

    For order two the shifts are ``(1, 0, -1)``, i.e.
    ``p0 F(t+1) + p1 F(t) + p2 F(t-1)``.
    """

    coefficients: tuple
    shifts: tuple
    inhomogeneity: RationalFunction = None
    certificate: Certificate = None
    provenance: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        object.__setattr__(self, "shifts", tuple(self.shifts))
        if len(self.coefficients) != len(self.shifts):
            raise ValueError("one coefficient per shift")
        if self.coefficients[0].is_zero() and self.coefficients[-1].is_zero():
            raise ValueError("leading and trailing coefficients both vanish")

    @property
    def order(self):
        return max(self.shifts) - min(self.shifts)

    def is_homogeneous(self):
        return self.inhomogeneity is None or self.inhomogeneity.is_zero()

    def ratio(self):
        """``F(t+1)/F(t)`` for a first-order relation."""
        nonzero = [(s, p) for s, p in zip(self.shifts, self.coefficients) if not p.is_zero()]
        if len(nonzero) != 2 or nonzero[0][0] - nonzero[1][0] != 1:
            raise ValueError("not an effective first-order recurrence")
        (s0, p0), (s1, p1) = nonzero
        r = -RationalFunction(p1, p0)
        if s1 != 0:
            r = r.substitute({"t": RationalFunction.var("t") - s1})
        return r

    def residual(self, values, t):
        """Evaluate ``sum p_i(t) F(t + s_i) - inhomogeneity(t)`` from a callable F."""
        t = Fraction(t)
        total = 0
        for p, s in zip(self.coefficients, self.shifts):
            pv = p.evaluate({"t": t})
            if pv:
                total = total + values(t + s) * pv
        if not self.is_homogeneous():
            total = total - self.inhomogeneity.evaluate({"t": t})
        return total

    def equivalent(self, other):
        """Same operator up to an overall rational-function factor."""
        if self.shifts != other.shifts:
            return False
        mine = [RationalFunction(p) for p in self.coefficients]
        theirs = [RationalFunction(p) for p in other.coefficients]
        pivot = next(i for i, p in enumerate(mine) if not p.is_zero())
        if theirs[pivot].is_zero():
            return False
        return all(m / mine[pivot] == o / theirs[pivot] for m, o in zip(mine, theirs))

    def __str__(self):
        parts = []
        for p, s in zip(self.coefficients, self.shifts):
            if p.is_zero():
                continue
            arg = "t" if s == 0 else (f"t+{s}" if s > 0 else f"t{s}")
            parts.append(f"({p})*F({arg})")
        lhs = " + ".join(parts)
        rhs = "0" if self.is_homogeneous() else str(self.inhomogeneity)
        return f"{lhs} = {rhs}"


__all__ = ["Recurrence", "Certificate", "content_free", "ONE"]
