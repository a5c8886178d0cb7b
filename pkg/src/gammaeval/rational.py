"""Normalised rational functions over Q and linear factorisation in one variable."""

from fractions import Fraction

from .polynomial import (
    ONE,
    VARIABLES,
    ZERO,
    NonLinearRemainder,
    Polynomial,
    ZeroDenominator,
    gcd,
    rational_roots,
    squarefree_decomposition,
)


class RationalFunction:
    """Quotient ``num/den`` with gcd(num, den) = 1 and a monic denominator.

    "Monic" refers to the grlex order of :mod:`gammaeval.polynomial`, so the
    representation is canonical and equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE, *, _normalized=False):
        if not isinstance(num, Polynomial):
            num = Polynomial(num)
        if not isinstance(den, Polynomial):
            den = Polynomial(den)
        if not _normalized:
            num, den = _normalize_pair(num, den)
        self.num = num
        self.den = den

    @classmethod
    def var(cls, name):
        return cls(Polynomial.var(name), ONE, _normalized=True)

    @classmethod
    def const(cls, value):
        return cls(Polynomial(value), ONE, _normalized=True)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other, ONE, _normalized=True)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(Polynomial(other), ONE, _normalized=True)
        return NotImplemented

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self):
        return self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value() / self.den.constant_value()

    def variables(self):
        vs = set(self.num.variables()) | set(self.den.variables())
        return tuple(v for v in ("a", "b", "c", "z", "t", "d", "n") if v in vs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        if self.den.is_constant() and other.den.is_constant():
            return RationalFunction(
                self.num * other.den.constant_value() + other.num * self.den.constant_value(),
                self.den * other.den.constant_value(),
            )
        g = gcd(self.den, other.den)
        d1 = self.den.exquo(g)
        d2 = other.den.exquo(g)
        num = self.num * d2 + other.num * d1
        if num.is_zero():
            return ZERO_RF
        # any common factor of num and the full denominator divides g
        h = gcd(num, g)
        if not h.is_constant():
            num = num.exquo(h)
            g = g.exquo(h)
        return _finish(num, d1 * d2 * g)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return ZERO_RF
        g1 = gcd(self.num, other.den)
        g2 = gcd(other.num, self.den)
        n1 = self.num if g1.is_constant() else self.num.exquo(g1)
        d2 = other.den if g1.is_constant() else other.den.exquo(g1)
        n2 = other.num if g2.is_constant() else other.num.exquo(g2)
        d1 = self.den if g2.is_constant() else self.den.exquo(g2)
        return _finish(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDenominator("inverse of zero")
        return _finish(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise ValueError("integer powers only")
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, _normalized=True)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def diff(self, var):
        num = self.num.diff(var) * self.den - self.num * self.den.diff(var)
        return RationalFunction(num, self.den * self.den)

    def substitute(self, bindings):
        return substitute(self, bindings)

    def evaluate(self, values):
        den = self.den.evaluate(values)
        if den == 0:
            raise ZeroDenominator(f"denominator {self.den} vanishes at {values}")
        return self.num.evaluate(values) / den

    def shift(self, var, amount):
        """``f(var + amount)``; translation keeps num and den coprime, so no gcd is needed."""
        if not amount:
            return self
        return _finish(self.num.shift(var, amount), self.den.shift(var, amount))

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        n = str(self.num)
        if len(self.num) > 1 or "/" in n:
            n = f"({n})"
        d = str(self.den)
        if len(self.den) > 1 or not self.den.is_monomial() or "*" in d or "/" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RationalFunction('{self}')"


def _finish(num, den):
    """Make the denominator monic (inputs already coprime)."""
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    if num.is_zero():
        return ZERO_RF
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num = num * inv
        den = den * inv
    return RationalFunction(num, den, _normalized=True)


def _normalize_pair(num, den):
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    if num.is_zero():
        return ZERO, ONE
    g = gcd(num, den)
    if not g.is_constant():
        num = num.exquo(g)
        den = den.exquo(g)
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num = num * inv
        den = den * inv
    return num, den


ZERO_RF = RationalFunction(ZERO, ONE, _normalized=True)
ONE_RF = RationalFunction(ONE, ONE, _normalized=True)


def normalize(num, den):
    """Build the canonical RationalFunction for ``num/den``."""
    return RationalFunction(num, den)


def _as_rf(x):
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction(x)


def substitute(f, bindings):
    """Simultaneous substitution into a RationalFunction, re-normalised.

    ``bindings`` maps variable names to RationalFunction / Polynomial /
    rational values.  Raises ZeroDenominator when the substituted
    denominator vanishes identically.
    """
    f = _as_rf(f)
    if not bindings:
        return f
    vals = {v: _as_rf(x) for v, x in bindings.items()}
    if all(x.den == ONE for x in vals.values()):
        polys = {v: x.num for v, x in vals.items()}
        num = f.num.substitute(polys)
        den = f.den.substitute(polys)
        if den.is_zero():
            raise ZeroDenominator(f"substitution {bindings} annihilates the denominator {f.den}")
        return RationalFunction(num, den)
    num = _subst_poly(f.num, vals)
    den = _subst_poly(f.den, vals)
    if den.is_zero():
        raise ZeroDenominator(f"substitution {bindings} annihilates the denominator {f.den}")
    return num / den


def _subst_poly(p, vals):
    total = ZERO_RF
    groups = {}
    for e, c in p.items():
        key = tuple(k if VARIABLES[i] in vals else 0 for i, k in enumerate(e))
        rest = tuple(0 if VARIABLES[i] in vals else k for i, k in enumerate(e))
        groups.setdefault(key, {})[rest] = c
    cache = {}
    for key, rest in groups.items():
        term = RationalFunction(Polynomial(rest), ONE, _normalized=True)
        for i, k in enumerate(key):
            if k:
                v = VARIABLES[i]
                if (v, k) not in cache:
                    cache[(v, k)] = vals[v] ** k
                term = term * cache[(v, k)]
        total = total + term
    return total


def factor_linear(f, var):
    """Factor ``f = constant * prod(var + alpha) / prod(var + delta)``.

    Returns ``(constant, alphas, deltas)`` with alphas and deltas as sorted
    lists (multiplicities repeated).  Raises NonLinearRemainder if an
    irreducible factor of degree >= 2 is left over.
    """
    f = _as_rf(f)
    num_const, alphas, num_rest = _linear_part(f.num, var)
    den_const, deltas, den_rest = _linear_part(f.den, var)
    if num_rest or den_rest:
        raise NonLinearRemainder(
            f"{f} has non-linear irreducible factors over Q", remainder=(num_rest, den_rest)
        )
    return num_const / den_const, sorted(alphas), sorted(deltas)


def _linear_part(p, var):
    coeffs = p.univariate_coefficients(var)
    lead = coeffs[-1]
    roots = rational_roots(p, var) if len(coeffs) > 1 else []
    rest = len(coeffs) - 1 - len(roots)
    if rest:
        leftover = p
        for r in roots:
            leftover = leftover.exquo(Polynomial.var(var) - r)
        return lead, [-r for r in roots], leftover
    return lead, [-r for r in roots], None


def recompose_linear(constant, alphas, deltas, var):
    x = Polynomial.var(var)
    num = Polynomial(constant)
    for a in alphas:
        num = num * (x + a)
    den = ONE
    for d in deltas:
        den = den * (x + d)
    return RationalFunction(num, den)


__all__ = [
    "RationalFunction",
    "ZERO_RF",
    "ONE_RF",
    "normalize",
    "substitute",
    "factor_linear",
    "recompose_linear",
    "squarefree_decomposition",
]
