"""Truncated q-series with Laurent-polynomial coefficients in a, b, c, d.

A series to order N stores c_0 .. c_{N-1}; each c_n maps an exponent tuple
over ``PARAMS`` to a rational coefficient.  Sums and products are described
in the shared expression grammar: ``poch(x; q^r; k)`` or ``poch(x; q^r; inf)``
for q-Pochhammer symbols and ``qbinom-exp(k)`` for ``q^(k(k+1)/2)``.  A
summand is summed over ``k >= 0``; terms stop contributing once their lowest
q-power reaches N.

Products are expanded factor by factor.  Every factor ``(1 - m)`` with a
negative q-power in ``m`` is rewritten as ``-m (1 - 1/m)``, so each term
separates into a monomial times factors that are ``1 + O(q)`` or free of q.
Matching factors upstairs and downstairs cancel before anything is expanded,
which is what lets ``(b; q^4)_inf / (b; q^12)_inf`` or ``(c; q^2)_k / (1 - c)``
be expanded even though ``1/(1 - b)`` has no q-expansion with polynomial
coefficients.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import expr as ex
from .records import IdentityRecord

PARAMS = ("a", "b", "c", "d")
ZERO_EXP = (0, 0, 0, 0)
DEFAULT_ORDER = 50


class NonTruncatable(ArithmeticError):
    """A product or quotient has no expansion as a q-series to finite order."""


class NonTerminatingOrder(ArithmeticError):
    """The summand's lowest q-power does not grow with k."""


class QSyntaxError(ValueError):
    pass


def _add_exp(x, y):
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3])


def _neg_exp(x):
    return (-x[0], -x[1], -x[2], -x[3])


def _scale_exp(x, n):
    return (x[0] * n, x[1] * n, x[2] * n, x[3] * n)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _monomial_text(coef, exps, qexp=0):
    parts = []
    for name, e in zip(PARAMS, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}" if e > 0 else f"{name}^({e})")
    if qexp == 1:
        parts.append("q")
    elif qexp:
        parts.append(f"q^{qexp}")
    body = "*".join(parts)
    if not body:
        return str(coef)
    if coef == 1:
        return body
    if coef == -1:
        return "-" + body
    return f"{coef}*{body}"


def poly_text(poly):
    """Readable text for a coefficient dict (exponent tuple -> rational)."""
    if not poly:
        return "0"
    out = ""
    for exps in sorted(poly, reverse=True):
        s = _monomial_text(poly[exps], exps)
        if not out:
            out = s
        elif s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


@dataclass(frozen=True)
class QMonomial:
    """``coef * a^i b^j c^k d^l * q^qexp``."""

    coef: object = 1
    qexp: int = 0
    exps: tuple = ZERO_EXP

    def __mul__(self, other):
        return QMonomial(_norm(self.coef * other.coef), self.qexp + other.qexp, _add_exp(self.exps, other.exps))

    def inverse(self):
        if self.coef == 0:
            raise ZeroDivisionError("inverse of the zero monomial")
        return QMonomial(_norm(Fraction(1) / self.coef), -self.qexp, _neg_exp(self.exps))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return QMonomial(_norm(Fraction(self.coef) ** n), self.qexp * n, _scale_exp(self.exps, n))

    @property
    def is_constant(self):
        return self.qexp == 0 and self.exps == ZERO_EXP

    def __str__(self):
        return _monomial_text(self.coef, self.exps, self.qexp)


ONE = QMonomial()


class QSeries:
    """Power series in q truncated at order N (exclusive)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=None):
        self.order = int(order)
        coeffs = list(coeffs or [])[: self.order]
        coeffs += [{} for _ in range(self.order - len(coeffs))]
        self.coeffs = [{e: _norm(c) for e, c in d.items() if c} for d in coeffs]

    @classmethod
    def monomial(cls, m, order):
        s = cls(order)
        if m.coef and 0 <= m.qexp < order:
            s.coeffs[m.qexp] = {m.exps: m.coef}
        elif m.qexp < 0:
            raise NonTruncatable(f"negative q-power in {m}")
        return s

    @classmethod
    def one(cls, order):
        return cls.monomial(ONE, order)

    def copy(self):
        out = QSeries.__new__(QSeries)
        out.order = self.order
        out.coeffs = [dict(d) for d in self.coeffs]
        return out

    def coefficient(self, n):
        return dict(self.coeffs[n])

    def valuation(self):
        for n, d in enumerate(self.coeffs):
            if d:
                return n
        return None

    def is_zero(self):
        return self.valuation() is None

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return QSeries(order, self.coeffs[:order])

    def _coerce(self, other):
        if isinstance(other, QSeries):
            if other.order != self.order:
                n = min(self.order, other.order)
                return self.truncate(n), other.truncate(n)
            return self, other
        return self, QSeries.monomial(QMonomial(other), self.order)

    def __add__(self, other):
        x, y = self._coerce(other)
        out = x.copy()
        for n, d in enumerate(y.coeffs):
            _accumulate(out.coeffs[n], d, 1)
        return out

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.order, [{e: -c for e, c in d.items()} for d in self.coeffs])

    def __sub__(self, other):
        x, y = self._coerce(other)
        out = x.copy()
        for n, d in enumerate(y.coeffs):
            _accumulate(out.coeffs[n], d, -1)
        return out

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QMonomial):
            return self.times_monomial(other)
        x, y = self._coerce(other)
        out = QSeries(x.order)
        for i, di in enumerate(x.coeffs):
            if not di:
                continue
            for j in range(x.order - i):
                dj = y.coeffs[j]
                if dj:
                    target = out.coeffs[i + j]
                    for ei, ci in di.items():
                        for ej, cj in dj.items():
                            key = _add_exp(ei, ej)
                            v = target.get(key, 0) + ci * cj
                            if v:
                                target[key] = v
                            else:
                                target.pop(key, None)
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, tuple(frozenset(d.items()) for d in self.coeffs)))

    def times_monomial(self, m):
        out = QSeries(self.order)
        if not m.coef:
            return out
        for n, d in enumerate(self.coeffs):
            target = n + m.qexp
            if d and 0 <= target < self.order:
                out.coeffs[target] = {_add_exp(e, m.exps): _norm(c * m.coef) for e, c in d.items()}
            elif d and target < 0:
                raise NonTruncatable(f"negative q-power after multiplying by {m}")
        return out

    def times_factor(self, m):
        """Multiply in place by ``1 - m`` (``m`` with non-negative q-power)."""
        if not m.coef or m.qexp >= self.order:
            return self
        if m.qexp < 0:
            raise NonTruncatable(f"factor 1 - {m} has negative q-order")
        if m.qexp == 0:
            for n in range(self.order):
                d = self.coeffs[n]
                if d:
                    _accumulate(d, {_add_exp(e, m.exps): c * m.coef for e, c in d.items()}, -1)
            return self
        for n in range(self.order - 1, m.qexp - 1, -1):
            src = self.coeffs[n - m.qexp]
            if src:
                _accumulate(self.coeffs[n], {_add_exp(e, m.exps): c * m.coef for e, c in src.items()}, -1)
        return self

    def divide_factor(self, m):
        """Divide in place by ``1 - m``; needs a positive q-power or a constant ``m``."""
        if not m.coef or m.qexp >= self.order:
            return self
        if m.qexp == 0:
            if m.exps != ZERO_EXP:
                raise NonTruncatable(f"1/(1 - {m}) has no q-expansion with polynomial coefficients")
            if m.coef == 1:
                raise ZeroDivisionError("division by the factor 1 - 1")
            scale = Fraction(1) / (1 - Fraction(m.coef))
            for d in self.coeffs:
                for e in d:
                    d[e] = _norm(d[e] * scale)
            return self
        if m.qexp < 0:
            raise NonTruncatable(f"factor 1 - {m} has negative q-order")
        for n in range(m.qexp, self.order):
            src = self.coeffs[n - m.qexp]
            if src:
                _accumulate(self.coeffs[n], {_add_exp(e, m.exps): c * m.coef for e, c in src.items()}, 1)
        return self

    def specialize(self, bindings):
        """Substitute rational values for some of a, b, c, d."""
        idx = {PARAMS.index(k): Fraction(v) for k, v in bindings.items()}
        out = QSeries(self.order)
        for n, d in enumerate(self.coeffs):
            target = out.coeffs[n]
            for e, c in d.items():
                e2 = list(e)
                for i, v in idx.items():
                    if e2[i]:
                        if v == 0 and e2[i] < 0:
                            raise ZeroDivisionError(f"{PARAMS[i]} = 0 in a negative power")
                        c = c * v ** e2[i]
                        e2[i] = 0
                _accumulate(target, {tuple(e2): c}, 1)
        return out

    def __repr__(self):
        return f"QSeries(order={self.order}, {self})"

    def __str__(self):
        parts = []
        for n, d in enumerate(self.coeffs):
            if not d:
                continue
            p = poly_text(d)
            q = "" if n == 0 else ("q" if n == 1 else f"q^{n}")
            if not q:
                parts.append(p)
            elif len(d) == 1 and p in ("1", "-1"):
                parts.append(q if p == "1" else "-" + q)
            else:
                parts.append(f"({p})*{q}" if len(d) > 1 or " " in p else f"{p}*{q}")
        body = ""
        for part in parts:
            if not body:
                body = part
            elif part.startswith("-"):
                body += " - " + part[1:]
            else:
                body += " + " + part
        return f"{body or '0'} + O(q^{self.order})"


def _accumulate(target, source, sign):
    for e, c in source.items():
        v = target.get(e, 0) + sign * c
        if v:
            target[e] = _norm(v)
        else:
            target.pop(e, None)


# ---------------------------------------------------------------------------
# products


@dataclass(frozen=True)
class QProductSpec:
    """``(x; q^r)_length`` where ``length`` is an int or ``None`` for infinity."""

    base: QMonomial
    modulus: int = 1
    length: object = None

    def factors(self, order):
        """The monomials m_j of the factors ``1 - m_j`` that matter below ``order``."""
        if self.length is not None:
            if self.length < 0:
                raise ValueError("negative Pochhammer length")
            return [self.base * QMonomial(1, self.modulus * j) for j in range(self.length)]
        if self.modulus <= 0:
            raise NonTruncatable(f"({self.base}; q^{self.modulus})_inf does not truncate")
        out, j = [], 0
        while True:
            m = self.base * QMonomial(1, self.modulus * j)
            if m.qexp >= order:
                return out
            out.append(m)
            j += 1


def qpochhammer(spec, order):
    """Exact expansion of a q-Pochhammer symbol to O(q^order)."""
    product = _Product()
    product.extend(spec.factors(order), 1)
    return product.expand(order)


class _Product:
    """``prefactor * prod (1 - m)^(+-1) * prod(polynomial factors)``."""

    def __init__(self, prefactor=ONE):
        self.prefactor = prefactor
        self.up = Counter()
        self.down = Counter()
        self.polys = []

    def copy(self):
        out = _Product(self.prefactor)
        out.up, out.down, out.polys = Counter(self.up), Counter(self.down), list(self.polys)
        return out

    @property
    def is_monomial(self):
        return not (self.up or self.down or self.polys)

    def add_factor(self, m, sign):
        if not m.coef:
            return
        if m.qexp < 0:
            # 1 - m = -m (1 - 1/m)
            self.prefactor = self.prefactor * ((m * QMonomial(-1)) ** sign)
            m = m.inverse()
        (self.up if sign > 0 else self.down)[m] += 1

    def extend(self, monomials, sign):
        for m in monomials:
            self.add_factor(m, sign)

    def __mul__(self, other):
        out = self.copy()
        out.prefactor = self.prefactor * other.prefactor
        for m, n in other.up.items():
            out.up[m] += n
        for m, n in other.down.items():
            out.down[m] += n
        out.polys += other.polys
        return out

    def inverse(self):
        if self.polys:
            raise QSyntaxError("only binomials may appear in a denominator")
        out = _Product(self.prefactor.inverse())
        out.up, out.down = Counter(self.down), Counter(self.up)
        return out

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = _Product()
        for _ in range(n):
            out = out * self
        return out

    def cancel(self):
        common = self.up & self.down
        self.up -= common
        self.down -= common
        return self

    def lowest_order(self):
        """Lowest q-power the expansion can reach."""
        return self.prefactor.qexp + sum(min(m.qexp for m in p) for p in self.polys)

    def expand(self, order):
        self.cancel()
        if any(m.coef == 1 and m.is_constant for m in self.up):
            return QSeries(order)
        if self.prefactor.coef == 0 or self.lowest_order() >= order:
            return QSeries(order)
        shift = self.lowest_order()
        if shift < 0:
            raise NonTruncatable(f"term has negative q-order {shift}")
        base = QMonomial(self.prefactor.coef, shift, self.prefactor.exps)
        series = QSeries.monomial(base, order)
        for p in self.polys:
            low = min(m.qexp for m in p)
            series = series * _poly_series(p, low, order)
        for m, n in sorted(self.up.items(), key=_factor_key):
            for _ in range(n):
                series.times_factor(m)
        for m, n in sorted(self.down.items(), key=_factor_key):
            for _ in range(n):
                series.divide_factor(m)
        return series


def _factor_key(item):
    m = item[0]
    return (m.qexp, m.exps, str(m.coef))


def _poly_series(monomials, low, order):
    s = QSeries(order)
    for m in monomials:
        if m.qexp - low < order:
            _accumulate(s.coeffs[m.qexp - low], {m.exps: m.coef}, 1)
    return s


# ---------------------------------------------------------------------------
# from expression trees


def _int_value(e, env):
    """Exact rational value of an exponent or length expression."""
    if isinstance(e, ex.Num):
        return e.value
    if isinstance(e, ex.Sym):
        if e.name in env:
            return Fraction(env[e.name])
        raise QSyntaxError(f"unbound symbol {e.name!r} in an exponent")
    if isinstance(e, ex.Neg):
        return -_int_value(e.arg, env)
    if isinstance(e, ex.BinOp):
        x, y = _int_value(e.left, env), _int_value(e.right, env)
        if e.op == "+":
            return x + y
        if e.op == "-":
            return x - y
        if e.op == "*":
            return x * y
        if e.op == "/":
            return x / y
        if e.op == "^":
            if y.denominator != 1:
                raise QSyntaxError("fractional power in an exponent")
            return x ** int(y)
    if isinstance(e, ex.Call) and e.name == "qbinom-exp":
        k = _int_value(e.args[0], env)
        return k * (k + 1) / 2
    raise QSyntaxError(f"cannot evaluate {ex.to_text(e)!r} as a number")


def _as_int(x, what):
    if x.denominator != 1:
        raise QSyntaxError(f"{what} must be an integer, got {x}")
    return int(x)


class _Builder:
    """Turns a q-expression with the summation index bound into a _Product."""

    def __init__(self, env, order):
        self.env = env
        self.order = order

    def product(self, e):
        v = self.visit(e)
        return v if isinstance(v, _Product) else self.poly_to_product(v)

    def poly_to_product(self, monomials):
        monomials = [m for m in monomials if m.coef]
        if not monomials:
            return _Product(QMonomial(0))
        if len(monomials) == 1:
            return _Product(monomials[0])
        if len(monomials) == 2:
            u, v = sorted(monomials, key=lambda m: (m.qexp, m.exps != ZERO_EXP))
            prod = _Product(u)
            prod.add_factor(QMonomial(-1) * v * u.inverse(), 1)
            return prod
        prod = _Product()
        prod.polys.append(tuple(monomials))
        return prod

    def monomial(self, e):
        p = self.product(e)
        if not p.is_monomial:
            raise QSyntaxError(f"{ex.to_text(e)!r} is not a monomial")
        return p.prefactor

    def visit(self, e):
        if isinstance(e, ex.Num):
            return _Product(QMonomial(_norm(e.value)))
        if isinstance(e, ex.Sym):
            if e.name == "q":
                return _Product(QMonomial(1, 1))
            if e.name in PARAMS:
                exps = [0, 0, 0, 0]
                exps[PARAMS.index(e.name)] = 1
                return _Product(QMonomial(1, 0, tuple(exps)))
            if e.name in self.env:
                return _Product(QMonomial(_norm(Fraction(self.env[e.name]))))
            raise QSyntaxError(f"unexpected symbol {e.name!r}")
        if isinstance(e, ex.Neg):
            return self.product(e.arg) * _Product(QMonomial(-1))
        if isinstance(e, ex.BinOp):
            if e.op in "+-":
                left, right = self.visit(e.left), self.visit(e.right)
                left = self._terms(left, e.left)
                right = self._terms(right, e.right)
                if e.op == "-":
                    right = [QMonomial(-1) * m for m in right]
                return _collect(left + right)
            if e.op == "*":
                return self.product(e.left) * self.product(e.right)
            if e.op == "/":
                return self.product(e.left) * self.product(e.right).inverse()
            if e.op == "^":
                n = _as_int(_int_value(e.right, self.env), "a power")
                return self.product(e.left) ** n
        if isinstance(e, ex.Call):
            if e.name == "poch":
                return self.poch(e)
            if e.name == "qbinom-exp":
                n = _as_int(_int_value(e, self.env), "qbinom-exp")
                return _Product(QMonomial(1, n))
        raise QSyntaxError(f"unsupported construct {ex.to_text(e)!r} in a q-expression")

    def _terms(self, v, e):
        if isinstance(v, list):
            return v
        if v.is_monomial:
            return [v.prefactor]
        raise QSyntaxError(f"sums may only combine monomials: {ex.to_text(e)!r}")

    def poch(self, e):
        if len(e.args) != 3:
            raise QSyntaxError("poch takes three arguments: poch(x; q^r; k|inf)")
        x = self.monomial(e.args[0])
        step = self.monomial(e.args[1])
        if step.coef != 1 or step.exps != ZERO_EXP:
            raise QSyntaxError(f"the base of poch must be a power of q, got {step}")
        length_expr = e.args[2]
        if isinstance(length_expr, ex.Choice):
            raise QSyntaxError("poch length must be a single choice, k or inf")
        if isinstance(length_expr, ex.Sym) and length_expr.name == "inf":
            length = None
        else:
            length = _as_int(_int_value(length_expr, self.env), "a Pochhammer length")
        prod = _Product()
        prod.extend(QProductSpec(x, step.qexp, length).factors(self.order), 1)
        return prod


def _collect(monomials):
    acc = {}
    for m in monomials:
        key = (m.qexp, m.exps)
        acc[key] = acc.get(key, 0) + m.coef
    return [QMonomial(_norm(c), q, e) for (q, e), c in sorted(acc.items()) if c]


def qproduct(e, order, env=None):
    """Expand an expression without a summation index to O(q^order)."""
    return _Builder(dict(env or {}), order).product(ex.parse(e)).expand(order)


def term_order(e, k, order, index="k"):
    """Lowest q-power of the summand at ``index = k``."""
    return _Builder({index: k}, order).product(ex.parse(e)).cancel().lowest_order()


def qsum(summand, order, index="k", lookahead=4, max_terms=None):
    """``sum_{k >= 0} summand(k)`` to O(q^order).

    Summation stops once ``lookahead`` consecutive terms start at q^order or
    beyond; if that never happens within ``max_terms`` the lowest order is
    not growing and NonTerminatingOrder is raised.
    """
    summand = ex.parse(summand)
    cap = max_terms if max_terms is not None else 4 * order + 64
    total = QSeries(order)
    quiet = 0
    for k in range(cap):
        prod = _Builder({index: k}, order).product(summand).cancel()
        if prod.lowest_order() >= order or prod.prefactor.coef == 0:
            quiet += 1
            if quiet >= lookahead:
                return total
            continue
        quiet = 0
        total = total + prod.expand(order)
    raise NonTerminatingOrder(f"summand still contributes below q^{order} after {cap} terms")


# ---------------------------------------------------------------------------
# identities


@dataclass(frozen=True)
class Discrepancy:
    order: int
    difference: dict

    def __str__(self):
        return f"first discrepancy at q^{self.order}: lhs - rhs = {poly_text(self.difference)}"


@dataclass(frozen=True)
class QVerification:
    name: str
    order: int
    ok: bool
    discrepancy: Discrepancy = None
    lhs: QSeries = field(default=None, compare=False, repr=False)
    rhs: QSeries = field(default=None, compare=False, repr=False)

    @property
    def passed(self):
        return self.ok

    @property
    def status(self):
        return "exact" if self.ok else "failed"

    def to_json(self):
        out = {"name": self.name, "order": self.order, "status": self.status}
        if self.discrepancy is not None:
            out["discrepancy"] = {
                "order": self.discrepancy.order,
                "difference": poly_text(self.discrepancy.difference),
            }
        return out

    def report(self):
        head = f"  {self.name or 'identity'}: "
        if self.ok:
            return head + f"coefficients agree exactly through q^{self.order - 1}\n  status: exact"
        return head + str(self.discrepancy) + "\n  status: failed"


def compare_series(lhs, rhs):
    """First q-power where two truncated series differ, or None."""
    diff = lhs - rhs
    n = diff.valuation()
    return None if n is None else Discrepancy(n, diff.coefficient(n))


def verify_q_identity(lhs, rhs, order=DEFAULT_ORDER, index="k", name="", env=None):
    """Compare ``sum_k lhs(k)`` (or a plain product) with ``rhs`` to O(q^order).

    ``lhs`` is summed over ``index`` when it mentions it; ``rhs`` likewise.
    """
    left = _expand_side(lhs, order, index, env)
    right = _expand_side(rhs, order, index, env)
    disc = compare_series(left, right)
    return QVerification(name, order, disc is None, disc, left, right)


def _expand_side(side, order, index, env):
    if isinstance(side, QSeries):
        return side.truncate(order)
    e = ex.parse(side)
    if env:
        e = ex.substitute(e, {k: ex.num(v) for k, v in env.items()})
    if index in ex.free_symbols(e):
        return qsum(e, order, index)
    return qproduct(e, order)


# The identities ship in the expression grammar so that built-ins and user
# files go through the same code path.
BUILTIN_IDENTITIES = {
    "q-chern": (
        "poch(q^2/a; q^2; k)*poch(a; q; k)/(poch(q^3; q^3; k)*poch(a^2*q; q^2; k))"
        "*(-1)^k*qbinom-exp(k)*a^k",
        "poch(a*q; q^2; inf)*poch(a^3*q^3; q^6; inf)/(poch(a^2*q; q^2; inf)*poch(q^3; q^6; inf))",
    ),
    "q-eq9": (
        "poch(q/a; q; k)*poch(a^2; q; k)/(poch(q^3; q^3; k)*poch(a^3*q^2; q^3; k))"
        "*(1 + a*q^(2*k))*q^(k^2)*a^k",
        "poch(-a; q; inf)*poch(a^2*q; q^2; inf)*poch(q^2; q^3; inf)/poch(a^3*q^2; q^3; inf)",
    ),
    "q-eq10": (
        "(1 - c*q^(5*k))*poch(q^2/a; q^2; k)*poch(c; q^2; k)*poch(a; q; k)*poch(c*q/a^2; q^3; k)"
        "*poch(a*c*q; q^6; k)/((1 - c)*poch(q^3; q^3; k)*poch(a*c*q; q^3; k)*poch(a^2*q; q^2; k)"
        "*poch(c*q^2/a; q^4; k)*poch(c*q^4/a; q^4; k))*(-1)^k*qbinom-exp(k)*a^k",
        "poch(c*q^2; q^2; inf)*poch(a*q; q^2; inf)*poch(c*q^4/a^2; q^6; inf)*poch(a^3*q^3; q^6; inf)"
        "/(poch(c*q^2/a; q^2; inf)*poch(a^2*q; q^2; inf)*poch(q^3; q^6; inf)*poch(a*c*q^4; q^6; inf))",
    ),
    "q-cw-cor10": (
        "poch(q; q^2; k)*poch(b; q^4; k)/(poch(q^4; q^4; k)*poch(b*q^3; q^6; k))*(-1)^k*q^(k^2 + 2*k)",
        "poch(b; q^4; inf)*poch(q^3; q^6; inf)*poch(q^12; q^12; inf)"
        "/(poch(q^4; q^4; inf)*poch(b*q^3; q^6; inf)*poch(b; q^12; inf))",
    ),
    "q-cc21": (
        "poch(b; q; k)*poch(q/b; q; k)/(poch(q^2; q^2; k)*poch(q*d; q; k))*qbinom-exp(k)*d^k",
        "poch(q*b*d; q^2; inf)*poch(q^2*d/b; q^2; inf)/poch(q*d; q; inf)",
    ),
    "q-rahman": (
        "poch(b; q; k)*poch(d; q; k)/(poch(q; q; k)*poch(q*b*d; q^2; k))*qbinom-exp(k)",
        "poch(q*b; q^2; inf)*poch(q*d; q^2; inf)/(poch(q; q^2; inf)*poch(q*b*d; q^2; inf))",
    ),
}


def builtin_record(name, order=DEFAULT_ORDER):
    lhs, rhs = BUILTIN_IDENTITIES[name]
    return IdentityRecord(
        kind="q-identity",
        lhs=lhs,
        rhs=rhs,
        params={"index": "k", "order": order},
        name=name,
        status="unchecked",
    )


def verify_builtin(name, order=DEFAULT_ORDER, env=None):
    lhs, rhs = BUILTIN_IDENTITIES[name]
    return verify_q_identity(lhs, rhs, order, name=name, env=env)


def certify_q_record(record, order=None):
    """Coefficientwise verification of a q-identity record."""
    params = record.params or {}
    order = int(order or params.get("order", DEFAULT_ORDER))
    env = {k: Fraction(v) for k, v in params.get("specialize", {}).items()}
    return verify_q_identity(record.lhs, record.rhs, order, params.get("index", "k"), record.name, env)


def telescoping_defect(summand, order, shift, left_coefficient, right_coefficient, index="k"):
    """``L * S(shift) - R * S`` for ``S = sum_k summand``, to O(q^order).

    ``shift`` is a substitution for ``a``.  When the summand satisfies
    ``L F_k(shift) - R F_k = G_{k+1} - G_k`` with ``G_0 = 0`` and
    ``G_k -> 0`` q-adically, the defect vanishes identically.
    """
    summand = ex.parse(summand)
    shifted = ex.substitute(summand, {"a": ex.parse(shift)})
    left = qproduct(left_coefficient, order) * qsum(shifted, order, index)
    right = qproduct(right_coefficient, order) * qsum(summand, order, index)
    return left - right


__all__ = [
    "BUILTIN_IDENTITIES",
    "DEFAULT_ORDER",
    "Discrepancy",
    "NonTerminatingOrder",
    "NonTruncatable",
    "QMonomial",
    "QProductSpec",
    "QSeries",
    "QSyntaxError",
    "QVerification",
    "builtin_record",
    "certify_q_record",
    "compare_series",
    "poly_text",
    "qpochhammer",
    "qproduct",
    "qsum",
    "telescoping_defect",
    "verify_builtin",
    "verify_q_identity",
]
