"""Arbitrary-precision evaluation: gamma, pi, 2F1-type sums and expression trees.

Floating values are ``mpmath.mpf`` numbers.  Every routine takes a target
precision in bits and does its own guard-bit bookkeeping; results are
returned at (at least) that precision.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mpf

from . import expr as ex


class PoleAtNonPositiveInteger(ArithmeticError):
    pass


class Divergent(ArithmeticError):
    pass


class LowerParamPole(ArithmeticError):
    pass


class NotPrime(ValueError):
    pass


class NotEvaluable(ValueError):
    pass


DEFAULT_PREC = 200


def decimal_digits(prec):
    return int(prec * math.log10(2))


def certify_tolerance(prec):
    """Agreement required before a numeric identity counts as certified."""
    return mpf(10) ** (-(decimal_digits(prec) - 10))


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


# ---------------------------------------------------------------------------
# pi


@lru_cache(maxsize=16)
def _pi_fixed(bits):
    """``floor(pi * 2**bits)`` (up to a few ulps) from Machin's formula."""
    guard = 20
    one = 1 << (bits + guard)

    def arctan_inv(x):
        total = term = one // x
        x2 = x * x
        k = 1
        while term:
            term //= x2
            k += 2
            total += -(term // k) if (k // 2) % 2 else term // k
        return total

    value = 4 * (4 * arctan_inv(5) - arctan_inv(239))
    return value >> guard


def pi(prec=DEFAULT_PREC):
    bits = prec + 10
    with mpmath.workprec(bits):
        return mpmath.ldexp(mpf(_pi_fixed(bits)), -bits)


# ---------------------------------------------------------------------------
# gamma (Spouge)


@lru_cache(maxsize=16)
def _spouge_coefficients(a, wp):
    with mpmath.workprec(wp):
        coeffs = [mpmath.sqrt(2 * pi(wp))]
        fact = mpf(1)
        for k in range(1, a):
            if k > 1:
                fact *= k - 1
            sign = 1 if k % 2 == 1 else -1
            x = mpf(a - k)
            coeffs.append(sign * x ** (k - mpf(1) / 2) * mpmath.exp(x) / fact)
        return coeffs


def _spouge_parameters(prec):
    # relative error is below a^(-1/2) (2 pi)^(-(a + 1/2))
    a = int(math.ceil((prec + 12) * math.log(2) / math.log(2 * math.pi))) + 1
    # the alternating coefficient sum cancels roughly 2.9 a bits
    wp = prec + int(3 * a) + 40
    return a, wp


def _gamma_shifted(x, prec):
    """Gamma(x + 1) for x > 0 at working precision."""
    a, wp = _spouge_parameters(prec)
    coeffs = _spouge_coefficients(a, wp)
    with mpmath.workprec(wp):
        x = _to_mpf(x)
        s = coeffs[0]
        for k in range(1, a):
            s += coeffs[k] / (x + k)
        base = x + a
        return base ** (x + mpf(1) / 2) * mpmath.exp(-base) * s


def gamma(x, prec=DEFAULT_PREC):
    """Gamma at a rational (or mpf) argument."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        if x.denominator == 1 and x <= 0:
            raise PoleAtNonPositiveInteger(f"gamma has a pole at {x}")
        if x.denominator == 1 and x <= 40:
            return mpf(math.factorial(int(x) - 1))
    else:
        x = mpf(x)
        if x <= 0 and x == int(x):
            raise PoleAtNonPositiveInteger(f"gamma has a pole at {x}")
    a, wp = _spouge_parameters(prec)
    with mpmath.workprec(wp):
        if x < Fraction(1, 2):
            # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
            p = pi(wp)
            xs = _to_mpf(x)
            val = p / (mpmath.sin(p * xs) * _gamma_shifted(1 - x, prec) / _to_mpf(1 - x))
        else:
            val = _gamma_shifted(x, prec) / _to_mpf(x)
        return +val


def log_gamma(x, prec=DEFAULT_PREC):
    """log|Gamma(x)|."""
    with mpmath.workprec(prec + 20):
        return mpmath.log(abs(gamma(x, prec + 20)))


# ---------------------------------------------------------------------------
# generalized hypergeometric sums


def _nonpositive_integer(x):
    return x.denominator == 1 and x <= 0


def hyper_value(upper, lower, z, prec=DEFAULT_PREC):
    """``pFq(upper; lower | z)`` with rational parameters and argument.

    Terminating sums come back as an exact ``Fraction``; otherwise an ``mpf``
    whose relative error is below ``2**(10 - prec)``, certified by a tail
    bound on the term ratio.
    """
    upper = [Fraction(u) for u in upper]
    lower = [Fraction(l) for l in lower]
    z = Fraction(z)
    stops = [-int(u) for u in upper if _nonpositive_integer(u)]
    cutoff = min(stops) if stops else None
    for l in lower:
        if _nonpositive_integer(l) and (cutoff is None or cutoff > -l):
            raise LowerParamPole(f"lower parameter {l} hits a pole before the sum terminates")
    if cutoff is not None or z == 0:
        n_terms = 0 if z == 0 else cutoff
        total = term = Fraction(1)
        for n in range(n_terms):
            num = z
            for u in upper:
                num *= u + n
            den = Fraction(n + 1)
            for l in lower:
                den *= l + n
            term = term * num / den
            total += term
        return total
    excess = len(upper) - len(lower) - 1
    if excess > 0 or (excess == 0 and abs(z) >= 1):
        raise Divergent(f"non-terminating series diverges at z = {z}")
    return _hyper_series(upper, lower, z, prec)


def _ratio_bound(upper, lower, z, n):
    """Upper bound for |term(m+1)/term(m)| valid for every m >= n."""
    lows = list(lower) + [Fraction(1)]
    bound = abs(float(z))
    for i, u in enumerate(upper):
        l = lows[i]
        gap = n - abs(float(l))
        if gap <= 0:
            return math.inf
        bound *= 1 + abs(float(u - l)) / gap
    for l in lows[len(upper):]:
        gap = n - abs(float(l))
        if gap <= 0:
            return math.inf
        bound /= gap
    return bound


def _hyper_series(upper, lower, z, prec, extra=0):
    wp = prec + 40 + extra
    one = 1 << wp
    total = term = one
    biggest = abs(term)
    n = 0
    while True:
        num = z.numerator
        den = z.denominator * (n + 1)
        for u in upper:
            q = u + n
            num *= q.numerator
            den *= q.denominator
        for l in lower:
            q = l + n
            num *= q.denominator
            den *= q.numerator
        if den < 0:
            num, den = -num, -den
        term = (term * num) // den if term * num >= 0 else -((-term * num) // den)
        total += term
        biggest = max(biggest, abs(term))
        n += 1
        bound = _ratio_bound(upper, lower, z, n)
        if bound < 1:
            tail = abs(term) * bound / (1 - bound)
            if total and tail * (1 << (prec + 12)) <= abs(total):
                break
            if not term and not total:
                break
        if n > 10 ** 7:
            raise Divergent("series did not settle")
    # precision lost to cancellation; retry once with enough guard bits
    lost = biggest.bit_length() - max(abs(total).bit_length(), 1) + n.bit_length()
    if lost > 36 + extra:
        return _hyper_series(upper, lower, z, prec, extra=lost + 10)
    with mpmath.workprec(prec + 20):
        return mpmath.ldexp(mpf(total), -wp)


# ---------------------------------------------------------------------------
# number-theoretic helpers


def is_prime(n):
    if n < 2:
        return False
    for p in range(2, int(math.isqrt(n)) + 1):
        if n % p == 0:
            return False
    return True


def legendre(j, p):
    """Legendre symbol (j/p) for an odd prime p, via Euler's criterion."""
    if not is_prime(p) or p == 2:
        raise NotPrime(f"{p} is not an odd prime")
    r = pow(j % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def cm_product(n, prec=DEFAULT_PREC):
    """``prod_{j=1}^{n-1} Gamma(j/n)^(legendre(j, n))``."""
    wp = prec + 20
    with mpmath.workprec(wp):
        out = mpf(1)
        for j in range(1, n):
            s = legendre(j, n)
            if s:
                g = gamma(Fraction(j, n), wp)
                out = out * g if s > 0 else out / g
        return +out


def rational_power(base, exponent, prec=DEFAULT_PREC):
    """``base ** exponent`` for rationals; exact when the result is rational."""
    base, exponent = Fraction(base), Fraction(exponent)
    if exponent.denominator == 1:
        if base == 0 and exponent < 0:
            raise ZeroDivisionError("0 to a negative power")
        return base ** int(exponent)
    exact = _exact_root(base, exponent)
    if exact is not None:
        return exact
    if base < 0:
        raise NotEvaluable(f"{base}^{exponent} is not real")
    with mpmath.workprec(prec + 20):
        return mpmath.power(_to_mpf(base), _to_mpf(exponent))


def _integer_root(n, k):
    if n < 0:
        return None
    r = round(n ** (1.0 / k)) if n < 2 ** 1000 else int(mpmath.nthroot(n, k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == n:
            return cand
    return None


def _exact_root(base, exponent):
    k = exponent.denominator
    if base < 0:
        if k % 2 == 0:
            return None
        inner = _exact_root(-base, exponent)
        return None if inner is None else -inner if exponent.numerator % 2 else inner
    num = _integer_root(base.numerator, k)
    den = _integer_root(base.denominator, k)
    if num is None or den is None:
        return None
    root = Fraction(num, den)
    if root == 0 and exponent < 0:
        raise ZeroDivisionError("0 to a negative power")
    return root ** exponent.numerator


# ---------------------------------------------------------------------------
# expression evaluation


class _Inexact(Exception):
    pass


def exact_value(e, env=None):
    """Evaluate to a Fraction, or raise NotEvaluable if irrational/transcendental."""
    try:
        return _exact(ex.parse(e), _env(env))
    except _Inexact as err:
        raise NotEvaluable(str(err)) from None


def _env(env):
    return {k: Fraction(v) for k, v in (env or {}).items()}


class _GammaMonomial:
    """``rational * prod Gamma(f)^e`` with every ``f`` in (0, 1).

    Products of gamma values at rationals differing by integers reduce to
    Pochhammer factors, so gamma quotients at integer steps stay exact.
    """

    __slots__ = ("rational", "gammas")

    def __init__(self, rational, gammas=None):
        self.rational = Fraction(rational)
        self.gammas = {k: v for k, v in (gammas or {}).items() if v}

    @classmethod
    def gamma(cls, x):
        if x.denominator == 1:
            if x <= 0:
                raise PoleAtNonPositiveInteger(f"gamma has a pole at {x}")
            return cls(math.factorial(int(x) - 1))
        n = math.floor(x)
        base = x - n
        factor = Fraction(1)
        if n >= 0:
            for j in range(n):
                factor *= base + j
        else:
            for j in range(1, -n + 1):
                factor /= base - j
        return cls(factor, {base: 1})

    def __mul__(self, other):
        g = dict(self.gammas)
        for k, v in other.gammas.items():
            g[k] = g.get(k, 0) + v
        return _GammaMonomial(self.rational * other.rational, g)

    def inverse(self):
        if self.rational == 0:
            raise ZeroDivisionError("division by zero in expression")
        return _GammaMonomial(1 / self.rational, {k: -v for k, v in self.gammas.items()})

    def __pow__(self, n):
        if self.rational == 0 and n < 0:
            raise ZeroDivisionError("0 to a negative power")
        return _GammaMonomial(self.rational ** n, {k: v * n for k, v in self.gammas.items()})

    def value(self):
        if self.gammas:
            raise _Inexact("gamma at a non-integer")
        return self.rational


def _exact(e, env):
    return _mono(e, env).value()


def _mono(e, env):
    if isinstance(e, ex.Num):
        return _GammaMonomial(e.value)
    if isinstance(e, ex.Sym):
        if e.name in env:
            return _GammaMonomial(env[e.name])
        raise _Inexact(e.name)
    if isinstance(e, ex.Neg):
        m = _mono(e.arg, env)
        return _GammaMonomial(-m.rational, m.gammas)
    if isinstance(e, ex.BinOp):
        if e.op in ("+", "-"):
            x, y = _exact(e.left, env), _exact(e.right, env)
            return _GammaMonomial(x + y if e.op == "+" else x - y)
        if e.op == "*":
            return _mono(e.left, env) * _mono(e.right, env)
        if e.op == "/":
            return _mono(e.left, env) * _mono(e.right, env).inverse()
        y = _exact(e.right, env)
        if y.denominator == 1:
            return _mono(e.left, env) ** int(y)
        x = _exact(e.left, env)
        if x == 0:
            if y < 0:
                raise ZeroDivisionError("0 to a negative power")
            return _GammaMonomial(0)
        root = _exact_root(x, y)
        if root is None:
            raise _Inexact(f"{x}^{y}")
        return _GammaMonomial(root)
    if isinstance(e, ex.Call):
        if e.name == "gamma":
            return _GammaMonomial.gamma(_exact(e.args[0], env))
        if e.name == "sqrt":
            r = _exact_root(_exact(e.args[0], env), Fraction(1, 2))
            if r is None:
                raise _Inexact("sqrt")
            return _GammaMonomial(r)
        if e.name == "legendre":
            return _GammaMonomial(legendre(int(_exact(e.args[0], env)), int(_exact(e.args[1], env))))
        if e.name == "hyper":
            up, low, z = _hyper_args(e, env)
            v = hyper_value(up, low, z)
            if isinstance(v, Fraction):
                return _GammaMonomial(v)
            raise _Inexact("hyper")
        raise _Inexact(e.name)
    raise _Inexact(type(e).__name__)


def _hyper_args(e, env):
    if len(e.args) != 3 or not isinstance(e.args[0], ex.ListExpr) or not isinstance(e.args[1], ex.ListExpr):
        raise ex.ParseError("hyper expects hyper([upper...], [lower...], z)")
    up = [_exact(x, env) for x in e.args[0].items]
    low = [_exact(x, env) for x in e.args[1].items]
    return up, low, _exact(e.args[2], env)


def numeric_value(e, env=None, prec=DEFAULT_PREC):
    """Evaluate to an mpf at ``prec`` bits (exact subtrees are done in Q)."""
    e = ex.parse(e)
    env = _env(env)
    with mpmath.workprec(prec + 30):
        return +_numeric(e, env, prec + 30)


def _numeric(e, env, wp):
    try:
        return _to_mpf(_exact(e, env))
    except _Inexact:
        pass
    if isinstance(e, ex.Sym):
        if e.name == "pi":
            return pi(wp)
        raise NotEvaluable(f"unbound symbol {e.name!r}")
    if isinstance(e, ex.Neg):
        return -_numeric(e.arg, env, wp)
    if isinstance(e, ex.BinOp):
        x = _numeric(e.left, env, wp)
        if e.op == "^":
            try:
                y = _exact(e.right, env)
            except _Inexact:
                y = None
            if y is not None and y.denominator == 1:
                return x ** int(y)
            if x < 0:
                raise NotEvaluable("negative base with a non-integer exponent")
            return mpmath.power(x, _numeric(e.right, env, wp) if y is None else _to_mpf(y))
        y = _numeric(e.right, env, wp)
        if e.op == "+":
            return x + y
        if e.op == "-":
            return x - y
        if e.op == "*":
            return x * y
        if y == 0:
            raise ZeroDivisionError("division by zero in expression")
        return x / y
    if isinstance(e, ex.Call):
        if e.name == "gamma":
            try:
                arg = _exact(e.args[0], env)
            except _Inexact:
                arg = _numeric(e.args[0], env, wp)
            return gamma(arg, wp)
        if e.name == "sqrt":
            x = _numeric(e.args[0], env, wp)
            if x < 0:
                raise NotEvaluable("square root of a negative number")
            return mpmath.sqrt(x)
        if e.name == "hyper":
            up, low, z = _hyper_args(e, env)
            return _to_mpf(hyper_value(up, low, z, wp))
        if e.name == "cmprod":
            return cm_product(int(_exact(e.args[0], env)), wp)
        raise NotEvaluable(f"cannot evaluate {e.name}() numerically")
    raise NotEvaluable(f"cannot evaluate {ex.to_text(e)}")


def agree(x, y, prec=DEFAULT_PREC):
    """Relative agreement at the certification tolerance for ``prec`` bits."""
    tol = certify_tolerance(prec)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x == y
    with mpmath.workprec(prec + 20):
        x, y = _to_mpf(x), _to_mpf(y)
        scale = max(abs(x), abs(y), mpf(1) if x == 0 or y == 0 else mpf(0))
        return abs(x - y) <= tol * scale


def relative_error(x, y, prec=DEFAULT_PREC):
    with mpmath.workprec(prec + 20):
        x, y = _to_mpf(x), _to_mpf(y)
        if y == 0:
            return abs(x)
        return abs(x - y) / abs(y)


# ---------------------------------------------------------------------------
# certification

SKIPPABLE = (Divergent, LowerParamPole, PoleAtNonPositiveInteger, NotEvaluable, ZeroDivisionError)


@dataclass(frozen=True)
class PointCheck:
    t: object
    lhs: object = None
    rhs: object = None
    residual: object = None
    passed: bool = False
    exact: bool = False
    note: str = ""

    @property
    def skipped(self):
        return self.residual is None and not self.exact

    def to_json(self):
        out = {"t": None if self.t is None else str(self.t), "passed": self.passed, "exact": self.exact}
        if self.residual is not None:
            out["residual"] = mpmath.nstr(self.residual, 5) if not isinstance(self.residual, Fraction) else str(self.residual)
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class Certification:
    """Per-point comparison of both sides; failures are data, not exceptions."""

    points: tuple
    precision: int
    tolerance: object
    status: str

    @property
    def passed(self):
        return self.status == "numeric"

    @property
    def checked(self):
        return [p for p in self.points if not p.skipped]

    @property
    def worst(self):
        checked = [p for p in self.checked if p.residual is not None]
        if not checked:
            return None
        return max(checked, key=lambda p: _to_mpf(p.residual))

    def to_json(self):
        worst = self.worst
        return {
            "status": self.status,
            "precision": self.precision,
            "tolerance": mpmath.nstr(self.tolerance, 3),
            "points": [p.to_json() for p in self.points],
            "worst": None if worst is None else {"t": str(worst.t), "residual": mpmath.nstr(_to_mpf(worst.residual), 5)},
        }

    def report(self):
        lines = []
        for p in self.points:
            where = "-" if p.t is None else str(p.t)
            if p.skipped:
                lines.append(f"  t={where:>6}  skipped ({p.note})")
            elif p.exact:
                label = "exact match" if p.passed else "exact MISMATCH"
                lines.append(f"  t={where:>6}  {label}" + (f"  ({p.note})" if p.note else ""))
            else:
                mark = "ok" if p.passed else "FAIL"
                lines.append(f"  t={where:>6}  residual {mpmath.nstr(p.residual, 3):>10}  {mark}")
        lines.append(f"  status: {self.status}")
        return "\n".join(lines)


def compare_values(lhs, rhs, prec=DEFAULT_PREC):
    """Residual |l - r| / max(|l|, |r|), or exact equality for two Fractions."""
    if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
        return Fraction(0) if lhs == rhs else Fraction(1), lhs == rhs
    with mpmath.workprec(prec + 20):
        x, y = _to_mpf(lhs), _to_mpf(rhs)
        scale = max(abs(x), abs(y))
        res = mpf(0) if scale == 0 else abs(x - y) / scale
        return res, res <= certify_tolerance(prec)


def check_point(lhs, rhs, env, prec=DEFAULT_PREC):
    t = env.get("t") if env else None
    try:
        try:
            lv, rv = exact_value(lhs, env), exact_value(rhs, env)
            res, ok = compare_values(lv, rv, prec)
            return PointCheck(t, lv, rv, res, ok, exact=True)
        except NotEvaluable:
            pass
        lv, rv = numeric_value(lhs, env, prec), numeric_value(rhs, env, prec)
    except SKIPPABLE as err:
        return PointCheck(t, note=f"{type(err).__name__}: {err}")
    res, ok = compare_values(lv, rv, prec)
    return PointCheck(t, lv, rv, res, ok)


def summarize(checks, prec):
    checks = tuple(checks)
    evaluated = [c for c in checks if not c.skipped]
    if not evaluated:
        status = "failed"
    elif all(c.passed for c in evaluated):
        status = "numeric"
    else:
        integral = [c for c in evaluated if c.t is not None and Fraction(c.t).denominator == 1]
        fractional = [c for c in evaluated if c.t is not None and Fraction(c.t).denominator != 1]
        if integral and all(c.passed for c in integral) and fractional and not all(c.passed for c in fractional):
            status = "periodic-factor-suspected"
        else:
            status = "failed"
    return Certification(checks, prec, certify_tolerance(prec), status)


def certify(identity, points=None, prec=DEFAULT_PREC):
    """Evaluate both sides of an IdentityRecord at each point and compare."""
    if identity.kind == "q-identity":
        from .qseries import certify_q_record

        return certify_q_record(identity)
    if identity.kind == "recurrence":
        from .telescoping import certify_recurrence_record

        return certify_recurrence_record(identity, points, prec)
    free = ex.free_symbols(identity.lhs) | ex.free_symbols(identity.rhs)
    if "t" not in free:
        return summarize([check_point(identity.lhs, identity.rhs, {}, prec)], prec)
    if points is None:
        points = identity.params.get("points") or [0, 1, 2]
    checks = [check_point(identity.lhs, identity.rhs, {"t": Fraction(p)}, prec) for p in points]
    return summarize(checks, prec)
