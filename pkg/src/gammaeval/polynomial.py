"""Sparse multivariate polynomials over Q in a fixed variable alphabet.

Terms are stored as ``{exponent_tuple: Fraction}`` with one slot per variable
of :data:`VARIABLES`.  Instances are immutable; every operation returns a new
object.  Greatest common divisors and resultants use the subresultant
pseudo-remainder sequence with recursive content extraction.
"""

from fractions import Fraction
from functools import reduce
from math import gcd as igcd, lcm as ilcm

VARIABLES = ("a", "b", "c", "z", "t", "d", "n")
NVARS = len(VARIABLES)
INDEX = {v: i for i, v in enumerate(VARIABLES)}
ZERO_EXP = (0,) * NVARS


class ExactArithmeticError(ArithmeticError):
    pass


class ZeroDenominator(ExactArithmeticError, ZeroDivisionError):
    pass


class NotUnivariate(ExactArithmeticError, ValueError):
    pass


class NonLinearRemainder(ExactArithmeticError):
    """Raised when an irreducible factor of degree >= 2 survives."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class InexactDivision(ExactArithmeticError):
    pass


def _index(var):
    try:
        return INDEX[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}; alphabet is {VARIABLES}") from None


def _grlex_key(exp):
    # a < b < c < z < t < d < n: compare total degree, then the largest variable first
    return (sum(exp), exp[::-1])


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or an int")
    return Fraction(x)


class Polynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            self._terms = {}
        elif isinstance(terms, dict):
            self._terms = {e: _as_fraction(c) for e, c in terms.items() if c != 0}
        else:
            # scalar
            c = _as_fraction(terms)
            self._terms = {ZERO_EXP: c} if c else {}
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, value):
        return cls(value)

    @classmethod
    def var(cls, name, power=1):
        e = [0] * NVARS
        e[_index(name)] = power
        return cls._raw({tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, coeff, exps):
        """``coeff * prod(var**k)`` for a mapping ``exps`` of variable -> power."""
        e = [0] * NVARS
        for v, k in exps.items():
            e[_index(v)] = k
        c = _as_fraction(coeff)
        return cls._raw({tuple(e): c} if c else {})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and ZERO_EXP in self._terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(ZERO_EXP, Fraction(0))

    def is_monomial(self):
        return len(self._terms) == 1

    def variables(self):
        used = [False] * NVARS
        for e in self._terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(VARIABLES, used) if u)

    def degree(self, var=None):
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e) for e in self._terms)
        i = _index(var)
        return max(e[i] for e in self._terms)

    def min_degree(self, var):
        i = _index(var)
        return min((e[i] for e in self._terms), default=0)

    def leading_exponent(self):
        return max(self._terms, key=_grlex_key)

    def leading_coefficient(self):
        """Coefficient of the grlex-leading term."""
        if not self._terms:
            return Fraction(0)
        return self._terms[self.leading_exponent()]

    def coefficients(self, var):
        """Collect in ``var``: ``{power: Polynomial}`` with ``var`` removed."""
        i = _index(var)
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[rest] = c
        return {k: Polynomial._raw(v) for k, v in out.items()}

    def coefficient_list(self, var):
        """Dense list of coefficients in ``var``, index = power."""
        coeffs = self.coefficients(var)
        deg = max(coeffs, default=-1)
        return [coeffs.get(k, ZERO) for k in range(deg + 1)]

    @classmethod
    def from_coefficients(cls, var, coeffs):
        i = _index(var)
        out = {}
        items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
        for k, p in items:
            if not isinstance(p, Polynomial):
                p = Polynomial(p)
            for e, c in p._terms.items():
                if e[i]:
                    raise ValueError(f"coefficient already contains {var}")
                ee = e[:i] + (k,) + e[i + 1:]
                out[ee] = out.get(ee, 0) + c
        return cls({e: c for e, c in out.items() if c})

    def univariate_coefficients(self, var):
        """Rational coefficients (index = power) of a polynomial in ``var`` alone."""
        others = [v for v in self.variables() if v != var]
        if others:
            raise NotUnivariate(f"{self} involves {others} besides {var}")
        i = _index(var)
        deg = self.degree(var)
        out = [Fraction(0)] * (deg + 1)
        for e, c in self._terms.items():
            out[e[i]] = c
        return out

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self._terms) < len(other._terms):
            self, other = other, self
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self._terms.items()})

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
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Polynomial._raw({e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDenominator("division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, Polynomial) and other.is_constant():
            return self / other.constant_value()
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return self._terms == {ZERO_EXP: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus & substitution ------------------------------------------

    def diff(self, var):
        i = _index(var)
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return Polynomial._raw(out)

    def substitute(self, bindings):
        """Simultaneous substitution ``{var: Polynomial | Fraction | int}``."""
        if not bindings:
            return self
        idx = {}
        for v, val in bindings.items():
            if not isinstance(val, Polynomial):
                val = Polynomial(val)
            idx[_index(v)] = val
        powers = {i: {0: ONE, 1: val} for i, val in idx.items()}

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k // 2) * power(i, k - k // 2)
            return cache[k]

        # group terms by the part that is not substituted
        groups = {}
        for e, c in self._terms.items():
            key = tuple(k for i, k in enumerate(e) if i in idx)
            rest = tuple(0 if i in idx else k for i, k in enumerate(e))
            groups.setdefault(key, {})[rest] = c
        order = sorted(idx)
        result = ZERO
        for key, rest in groups.items():
            factor = ONE
            for i, k in zip(order, key):
                if k:
                    factor = factor * power(i, k)
            result = result + Polynomial._raw(rest) * factor
        return result

    def evaluate(self, values):
        """Evaluate at rational values for every variable present."""
        vals = [None] * NVARS
        for v, x in values.items():
            vals[_index(v)] = _as_fraction(x)
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    if vals[i] is None:
                        raise ValueError(f"no value for {VARIABLES[i]}")
                    term *= vals[i] ** k
            total += term
        return total

    def shift(self, var, amount):
        """``p(var + amount)``."""
        return self.substitute({var: Polynomial.var(var) + amount})

    # -- normalisation helpers --------------------------------------------

    def rational_content(self):
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(1)
        nums = [c.numerator for c in self._terms.values()]
        dens = [c.denominator for c in self._terms.values()]
        return Fraction(reduce(igcd, nums), reduce(ilcm, dens))

    def primitive(self):
        """Integer-primitive associate with positive grlex-leading coefficient."""
        if not self._terms:
            return self
        c = self.rational_content()
        if self.leading_coefficient() < 0:
            c = -c
        if c == 1:
            return self
        return self * (1 / c)

    def monic(self):
        if not self._terms:
            return self
        lc = self.leading_coefficient()
        return self if lc == 1 else self * (1 / lc)

    def monomial_content(self):
        """Exponent tuple of the largest monomial dividing every term."""
        if not self._terms:
            return ZERO_EXP
        return tuple(min(col) for col in zip(*self._terms))

    def divide_monomial(self, exp):
        return Polynomial._raw({tuple(x - y for x, y in zip(e, exp)): c for e, c in self._terms.items()})

    def exquo(self, other):
        """Exact quotient; raises InexactDivision when ``other`` does not divide."""
        if not isinstance(other, Polynomial):
            other = Polynomial(other)
        if other.is_zero():
            raise ZeroDenominator("division by the zero polynomial")
        if other.is_constant():
            return self * (1 / other.constant_value())
        if self.is_zero():
            return ZERO
        if other.is_monomial():
            (oe, oc), = other._terms.items()
            out = {}
            for e, c in self._terms.items():
                ne = tuple(x - y for x, y in zip(e, oe))
                if min(ne) < 0:
                    raise InexactDivision(f"{other} does not divide {self}")
                out[ne] = c / oc
            return Polynomial._raw(out)
        # sparse division with respect to lex order on the reversed alphabet
        def lexkey(e):
            return e[::-1]
        lt_e = max(other._terms, key=lexkey)
        lt_c = other._terms[lt_e]
        rem = dict(self._terms)
        quot = {}
        others = list(other._terms.items())
        while rem:
            e = max(rem, key=lexkey)
            c = rem[e]
            qe = tuple(x - y for x, y in zip(e, lt_e))
            if min(qe) < 0:
                raise InexactDivision(f"{other} does not divide {self}")
            qc = c / lt_c
            quot[qe] = qc
            for oe, oc in others:
                te = tuple(x + y for x, y in zip(qe, oe))
                v = rem.get(te, 0) - qc * oc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return Polynomial._raw(quot)

    def divides(self, other):
        try:
            other.exquo(self)
        except InexactDivision:
            return False
        return True

    # -- printing ---------------------------------------------------------

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda ec: _grlex_key(ec[0]), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                VARIABLES[i] if k == 1 else f"{VARIABLES[i]}^{k}" for i, k in enumerate(e) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag}*{mono}"
            else:
                body = f"({mag})*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial('{self}')"


ZERO = Polynomial._raw({})
ONE = Polynomial._raw({ZERO_EXP: Fraction(1)})


def variable(name):
    return Polynomial.var(name)


# ---------------------------------------------------------------------------
# univariate-over-ring helpers (dense lists of Polynomial coefficients)


def _udeg(f):
    return len(f) - 1


def _strip(f):
    while f and f[-1].is_zero():
        f.pop()
    return f


def _uprem(f, g):
    """Pseudo-remainder of f by g (coefficient lists over the polynomial ring)."""
    f = list(f)
    dg = _udeg(g)
    lc = g[-1]
    e = _udeg(f) - dg + 1
    while f and _udeg(f) >= dg:
        k = _udeg(f) - dg
        top = f[-1]
        f = [c * lc for c in f]
        for i, gc in enumerate(g):
            if not gc.is_zero():
                f[i + k] = f[i + k] - top * gc
        f.pop()
        _strip(f)
        e -= 1
    if e > 0 and f:
        factor = lc ** e
        f = [c * factor for c in f]
    return f


def _ucontent(f):
    return reduce(gcd, f, ZERO) if f else ZERO


def _uexquo_scalar(f, c):
    return [x.exquo(c) for x in f]


def _to_uni(p, var):
    return p.coefficient_list(var)


def _from_uni(f, var):
    return Polynomial.from_coefficients(var, f)


def _pick_main_variable(p, q):
    common = set(p.variables()) & set(q.variables())
    return min(common, key=lambda v: (max(p.degree(v), q.degree(v)), -INDEX[v]))


def gcd(p, q):
    """Greatest common divisor, normalised by :meth:`Polynomial.primitive`."""
    if not isinstance(p, Polynomial):
        p = Polynomial(p)
    if not isinstance(q, Polynomial):
        q = Polynomial(q)
    if p.is_zero():
        return q.primitive()
    if q.is_zero():
        return p.primitive()
    if p.is_constant() or q.is_constant():
        return ONE
    if p == q:
        return p.primitive()
    mp, mq = p.monomial_content(), q.monomial_content()
    mono = tuple(min(x, y) for x, y in zip(mp, mq))
    if any(mp):
        p = p.divide_monomial(mp)
    if any(mq):
        q = q.divide_monomial(mq)
    g = _gcd_nomono(p, q)
    if any(mono):
        g = g * Polynomial._raw({mono: Fraction(1)})
    return g.primitive()


def _gcd_nomono(p, q):
    if p.is_constant() or q.is_constant():
        return ONE
    if p.is_monomial() or q.is_monomial():
        return ONE  # monomial contents already removed
    vp, vq = set(p.variables()), set(q.variables())
    only_p = vp - vq
    if only_p:
        v = min(only_p, key=INDEX.get)
        g = q
        for c in sorted(p.coefficients(v).values(), key=len):
            g = gcd(g, c)
            if g.is_constant():
                return ONE
        return g
    only_q = vq - vp
    if only_q:
        return _gcd_nomono(q, p)
    x = _pick_main_variable(p, q)
    f, g = _to_uni(p, x), _to_uni(q, x)
    if _udeg(f) < _udeg(g):
        f, g = g, f
    cf, cg = _ucontent(f), _ucontent(g)
    cont = gcd(cf, cg)
    f = _uexquo_scalar(f, cf)
    g = _uexquo_scalar(g, cg)
    gg = ONE
    hh = ONE
    while True:
        delta = _udeg(f) - _udeg(g)
        r = _uprem(f, g)
        if not r:
            break
        if _udeg(r) == 0:
            g = [ONE]
            break
        f = g
        divisor = gg * hh ** delta
        g = _uexquo_scalar(r, divisor)
        gg = f[-1]
        if delta == 0:
            hh = hh  # h^(1-0) g^0
        elif delta == 1:
            hh = gg
        else:
            hh = (gg ** delta).exquo(hh ** (delta - 1))
    g = _uexquo_scalar(g, _ucontent(g))
    return (cont * _from_uni(g, x)).primitive()


def lcm(p, q):
    if p.is_zero() or q.is_zero():
        return ZERO
    return (p * q.exquo(gcd(p, q))).primitive()


def content(p, var):
    """Content of ``p`` viewed as a polynomial in ``var``."""
    return reduce(gcd, p.coefficients(var).values(), ZERO)


def resultant(p, q, var):
    """Resultant of ``p`` and ``q`` with respect to ``var``."""
    f, g = _to_uni(p, var), _to_uni(q, var)
    if not f or not g:
        return ZERO
    df, dg = _udeg(f), _udeg(g)
    if df == 0:
        return f[0] ** dg
    if dg == 0:
        return g[0] ** df
    s = 1
    if df < dg:
        f, g = g, f
        df, dg = dg, df
        if df % 2 and dg % 2:
            s = -1
    a, b = _ucontent(f), _ucontent(g)
    f = _uexquo_scalar(f, a)
    g = _uexquo_scalar(g, b)
    tfac = a ** dg * b ** df
    gg = ONE
    hh = ONE
    while True:
        da, db = _udeg(f), _udeg(g)
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = _uprem(f, g)
        f = g
        if not r:
            return ZERO
        g = _uexquo_scalar(r, gg * hh ** delta)
        gg = f[-1]
        if delta == 1:
            hh = gg
        elif delta > 1:
            hh = (gg ** delta).exquo(hh ** (delta - 1))
        if _udeg(g) <= 0:
            break
    da = _udeg(f)
    lcb = g[0]
    if da == 0:
        hfin = ONE
    elif da == 1:
        hfin = lcb
    else:
        hfin = (lcb ** da).exquo(hh ** (da - 1))
    return tfac * hfin * s


def squarefree_decomposition(p, var):
    """Yun's algorithm for a polynomial in ``var`` over Q.

    Returns ``[(factor, multiplicity), ...]`` with primitive factors; the
    rational constant is dropped.
    """
    p.univariate_coefficients(var)  # raises NotUnivariate
    f = p.primitive()
    if f.degree(var) <= 0:
        return []
    out = []
    fp = f.diff(var)
    a = gcd(f, fp)
    b = f.exquo(a)
    c = fp.exquo(a)
    d = c - b.diff(var)
    i = 1
    while b.degree(var) > 0:
        a = gcd(b, d)
        if a.degree(var) > 0:
            out.append((a.primitive(), i))
        b = b.exquo(a)
        c = d.exquo(a)
        d = c - b.diff(var)
        i += 1
    return out


def _int_coefficients(coeffs):
    den = reduce(ilcm, (c.denominator for c in coeffs), 1)
    ints = [int(c * den) for c in coeffs]
    g = reduce(igcd, ints, 0) or 1
    return [c // g for c in ints]


def _ieval(ints, x, mod=None):
    acc = 0
    for c in reversed(ints):
        acc = acc * x + c
        if mod:
            acc %= mod
    return acc


def _primes_from(start):
    k = max(start, 2)
    while True:
        if all(k % d for d in range(2, int(k ** 0.5) + 1)):
            yield k
        k += 1


def _mod_poly_gcd_is_one(f, g, p):
    """gcd(f, g) == 1 over GF(p); dense low-to-high integer lists."""
    def trim(h):
        h = [x % p for x in h]
        while h and h[-1] == 0:
            h.pop()
        return h

    f, g = trim(f), trim(g)
    while g:
        inv = pow(g[-1], -1, p)
        while len(f) >= len(g):
            q = f[-1] * inv % p
            shift = len(f) - len(g)
            for i, gc in enumerate(g):
                f[i + shift] = (f[i + shift] - q * gc) % p
            f = trim(f)
            if not f:
                break
        f, g = g, f
    return len(f) == 1


def _rational_reconstruction(r, m, nbound, dbound):
    r0, r1 = m, r % m
    s0, s1 = 0, 1
    while r1 > nbound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > dbound:
        return None
    return Fraction(r1, s1)


def _squarefree_rational_roots(ints):
    """Rational roots of a squarefree integer polynomial with f(0) != 0.

    Roots of f modulo a small prime are Hensel-lifted and turned back into
    fractions by rational reconstruction; each candidate is checked exactly.
    """
    deg = len(ints) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [Fraction(-ints[0], ints[1])]
    lead, tail = ints[-1], ints[0]
    deriv = [k * c for k, c in enumerate(ints)][1:]
    for p in _primes_from(max(3 * deg, 101)):
        if lead % p and _mod_poly_gcd_is_one(ints, deriv, p):
            break
    bound = 2 * abs(lead) * abs(tail) + 1
    roots = []
    for r in range(p):
        if _ieval(ints, r, p):
            continue
        mod = p
        while mod <= bound:
            mod = mod * mod
            fr = _ieval(ints, r, mod)
            dr = _ieval(deriv, r, mod)
            r = (r - fr * pow(dr, -1, mod)) % mod
        cand = _rational_reconstruction(r, mod, abs(tail), abs(lead))
        if cand is not None and _ieval(ints, cand) == 0:
            roots.append(cand)
    return roots


def rational_roots(p, var):
    """Every rational root of a univariate polynomial, with multiplicity, sorted."""
    if not isinstance(p, Polynomial):
        p = Polynomial(p)
    coeffs = p.univariate_coefficients(var)
    if not coeffs or all(c == 0 for c in coeffs):
        raise ValueError("the zero polynomial has every number as a root")
    roots = []
    k = 0
    while coeffs[k] == 0:
        k += 1
    roots.extend([Fraction(0)] * k)
    reduced = Polynomial.from_coefficients(var, coeffs[k:])
    if reduced.degree(var) > 0:
        for factor, mult in squarefree_decomposition(reduced, var):
            ints = _int_coefficients(factor.univariate_coefficients(var))
            for r in _squarefree_rational_roots(ints):
                roots.extend([r] * mult)
    return sorted(roots)
