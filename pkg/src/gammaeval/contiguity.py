"""Transfer matrices for integer shifts of the parameters of 2F1(a, b; c | z).

A transfer matrix ``M`` for a shift ``(k, l, m)`` satisfies

    (F, F')(a+k, b+l, c+m) = M(a, b, c, z) @ (F, F')(a, b, c)

with ``F' = dF/dz``.  Its first row is the pair ``(R, Q)`` of the
decomposition ``F(beta + gamma) = R F(beta) + Q F'(beta)``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .forms import LinearForm, as_form
from .polynomial import Polynomial, gcd
from .rational import ONE_RF, ZERO_RF, RationalFunction, substitute
from .recurrence import Recurrence, content_free

a, b, c, z = (RationalFunction.var(v) for v in "abcz")
t = RationalFunction.var("t")

MAX_SHIFT = 8


class DegenerateElimination(ArithmeticError):
    pass


@dataclass(frozen=True)
class ShiftVector:
    k: int
    l: int
    m: int

    def __post_init__(self):
        for v in (self.k, self.l, self.m):
            if not isinstance(v, int):
                raise TypeError("shift components must be integers")
            if abs(v) > MAX_SHIFT:
                raise ValueError(f"shift component {v} exceeds the bound {MAX_SHIFT}")

    @classmethod
    def parse(cls, text):
        parts = [int(p) for p in str(text).replace(" ", "").split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected k,l,m; got {text!r}")
        return cls(*parts)

    def __iter__(self):
        return iter((self.k, self.l, self.m))

    def __add__(self, other):
        return ShiftVector(self.k + other.k, self.l + other.l, self.m + other.m)

    def is_zero(self):
        return self.k == self.l == self.m == 0

    def __str__(self):
        return f"({self.k},{self.l},{self.m})"


def as_shift(x):
    if isinstance(x, ShiftVector):
        return x
    if isinstance(x, str):
        return ShiftVector.parse(x)
    return ShiftVector(*x)


@dataclass(frozen=True)
class ParamVector:
    """Parameters ``a, b, c`` as linear forms in ``t``."""

    a: LinearForm
    b: LinearForm
    c: LinearForm

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, as_form(getattr(self, name)))

    @classmethod
    def family(cls, base, shift):
        """``beta0 + t*gamma`` from rational base values."""
        shift = as_shift(shift)
        return cls(*(LinearForm(Fraction(x0), k) for x0, k in zip(base, shift)))

    def at(self, t):
        return (self.a.at(t), self.b.at(t), self.c.at(t))

    def bindings(self):
        return {"a": self.a.poly(), "b": self.b.poly(), "c": self.c.poly()}

    def slopes(self):
        return (self.a.slope, self.b.slope, self.c.slope)

    def __str__(self):
        return f"(a={self.a}, b={self.b}, c={self.c})"


@dataclass(frozen=True)
class TransferMatrix:
    m11: RationalFunction
    m12: RationalFunction
    m21: RationalFunction
    m22: RationalFunction

    @classmethod
    def identity(cls):
        return cls(ONE_RF, ZERO_RF, ZERO_RF, ONE_RF)

    def rows(self):
        return ((self.m11, self.m12), (self.m21, self.m22))

    def __matmul__(self, other):
        return TransferMatrix(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    def inverse(self):
        d = self.det()
        if d.is_zero():
            raise ZeroDivisionError("singular transfer matrix")
        return TransferMatrix(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d)

    def substitute(self, bindings):
        return TransferMatrix(*(substitute(e, bindings) for e in (self.m11, self.m12, self.m21, self.m22)))

    def apply(self, f, fp):
        return (self.m11 * f + self.m12 * fp, self.m21 * f + self.m22 * fp)

    def is_identity(self):
        return self == TransferMatrix.identity()


@dataclass(frozen=True)
class ContiguousDecomposition:
    shift: ShiftVector
    R: RationalFunction
    Q: RationalFunction


def second_row(r, q):
    """Differentiate ``r F + q F'`` in z and eliminate F'' with the 2F1 equation.

    z(1-z) F'' = -(c - (a+b+1) z) F' + a b F.
    """
    zz = z * (1 - z)
    f_coeff = r.diff("z") + q * a * b / zz
    fp_coeff = r + q.diff("z") - q * (c - (a + b + 1) * z) / zz
    return f_coeff, fp_coeff


def _from_first_row(r, q):
    return TransferMatrix(r, q, *second_row(r, q))


@lru_cache(maxsize=None)
def _up(param):
    if param == "a":
        return _from_first_row(ONE_RF, z / a)
    if param == "b":
        return _from_first_row(ONE_RF, z / b)
    # the basic c-relation lowers c: F(c-1) = F + z/(c-1) F'
    return _from_first_row(ONE_RF, z / (c - 1))


@lru_cache(maxsize=None)
def elementary_matrix(param, direction):
    """Transfer matrix for a single +1 / -1 step of ``param`` in {a, b, c}."""
    if param not in ("a", "b", "c") or direction not in (1, -1):
        raise ValueError("param must be one of a, b, c and direction +1 or -1")
    var = RationalFunction.var(param)
    if param in ("a", "b"):
        if direction == 1:
            return _up(param)
        # inverse of the up-step taken from param-1
        return _up(param).substitute({param: var - 1}).inverse()
    if direction == -1:
        return _up("c")
    return _up("c").substitute({"c": var + 1}).inverse()


def _steps(shift):
    for param, n in zip("abc", shift):
        sign = 1 if n > 0 else -1
        for _ in range(abs(n)):
            yield param, sign


@lru_cache(maxsize=None)
def _shift_matrix(k, l, m):
    M = TransferMatrix.identity()
    offset = {"a": 0, "b": 0, "c": 0}
    for param, sign in _steps((k, l, m)):
        E = elementary_matrix(param, sign)
        moved = {p: RationalFunction.var(p) + off for p, off in offset.items() if off}
        if moved:
            E = E.substitute(moved)
        M = E @ M
        offset[param] += sign
    return M


def shift_matrix(shift):
    """Ordered product of elementary matrices: a-steps, then b-steps, then c-steps."""
    shift = as_shift(shift)
    return _shift_matrix(shift.k, shift.l, shift.m)


def decomposition(shift):
    shift = as_shift(shift)
    M = shift_matrix(shift)
    return ContiguousDecomposition(shift, M.m11, M.m12)


def family_matrix(shift, family, z_value=None):
    """``M_gamma(beta0 + t gamma, z)`` as a matrix of rational functions in t."""
    shift = as_shift(shift)
    bindings = dict(family.bindings())
    if z_value is not None:
        bindings["z"] = Fraction(z_value)
    return shift_matrix(shift).substitute(bindings)


def order2_recurrence(shift, family, z_value=None):
    """Eliminate F' between consecutive one-step transfer relations.

    Returns a :class:`Recurrence` ``p0 F(t+1) + p1 F(t) + p2 F(t-1) = 0``
    where ``F(t) = 2F1(family(t) | z)``.  When Q vanishes identically along
    the family the relation collapses to ``p0 F(t+1) + p1 F(t) = 0``.
    """
    shift = as_shift(shift)
    if tuple(family.slopes()) != tuple(Fraction(x) for x in shift):
        raise ValueError(f"family {family} does not move along {shift}")
    M = family_matrix(shift, family, z_value)
    R, Q = M.m11, M.m12
    if Q.is_zero():
        p0, p1 = R.den, -R.num
        coeffs = content_free([p0, p1])
        return Recurrence(coeffs, (1, 0), provenance=("contiguity", f"shift {shift}", "Q vanishes"))
    prev = M.substitute({"t": t - 1})
    Rm, Qm, Um = prev.m11, prev.m12, prev.m22
    if Qm.is_zero():
        raise DegenerateElimination("Q(t-1) vanishes while Q(t) does not")
    detm = prev.det()
    # Qm F(t+1) - (R Qm + Q Um) F(t) + Q det(t-1) F(t-1) = 0
    c0 = Qm
    c1 = -(R * Qm + Q * Um)
    c2 = Q * detm
    coeffs = _clear_denominators([c0, c1, c2])
    return Recurrence(content_free(coeffs), (1, 0, -1), provenance=("contiguity", f"shift {shift}", "F' eliminated"))


def _clear_denominators(rfs):
    den = Polynomial(1)
    for r in rfs:
        den = den * r.den.exquo(gcd(den, r.den))
    return [r.num * den.exquo(r.den) for r in rfs]
