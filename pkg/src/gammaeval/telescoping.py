"""Gosper and Zeilberger over the shift parameter t.

A term family ``A(t, n) = prod (u_i)_n / prod (l_j)_n * z^n / n!`` with
parameters linear in t (integer slopes) is proper hypergeometric in both
variables.  Zeilberger's algorithm finds polynomials ``s_0(t) .. s_r(t)`` and
a rational ``rho(t, n)`` with

    sum_j s_j(t) A(t+j, n) = rho(t, n+1) A(t, n+1) - rho(t, n) A(t, n)

by running the parametrized Gosper step on ``sum_j s_j A(t+j, n)``.
"""

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import mpmath

from . import expr as ex
from .numerics import DEFAULT_PREC, SKIPPABLE, hyper_value
from .polynomial import ONE, ZERO, Polynomial, gcd, lcm
from .rational import ONE_RF, ZERO_RF, RationalFunction
from .recurrence import Certificate, Recurrence

N = Polynomial.var("n")
T = Polynomial.var("t")
N_RF = RationalFunction.var("n")
T_RF = RationalFunction.var("t")

MAX_ORDER = 4
SHADOW_POINTS = (Fraction(1), Fraction(3, 2), Fraction(2))


class NotGosperSummable(ArithmeticError):
    pass


class NoRecurrenceFound(ArithmeticError):
    pass


class NotProper(ValueError):
    pass


class TelescopingTimeout(TimeoutError):
    pass


def _as_param(x):
    if isinstance(x, Polynomial):
        p = x
    elif isinstance(x, (int, Fraction)):
        p = Polynomial(Fraction(x))
    elif hasattr(x, "poly"):
        p = x.poly()
    else:
        p = ex.parse_polynomial(str(x))
    if p.degree("t") > 1 or p.degree("n") > 0:
        raise NotProper(f"parameter {p} must be linear in t and free of n")
    return p


def _slope(p):
    s = p.coefficients("t").get(1, ZERO)
    if not s.is_constant():
        raise NotProper(f"slope of {p} in t must be a number")
    s = s.constant_value() if not s.is_zero() else Fraction(0)
    if s.denominator != 1:
        raise NotProper(f"slope {s} of {p} is not an integer")
    return int(s)


@dataclass(frozen=True)
class HyperTermFamily:
    """``prod (upper)_n / prod (lower)_n * z^n / n!``, optionally divided by ``Phi(t)``.

    ``t_ratio`` is ``Phi(t+1)/Phi(t)``; it lets a WZ-normalized term be
    expressed without naming ``Phi``.
    """

    upper: tuple
    lower: tuple
    z: object = Fraction(1)
    factorial: bool = True
    t_ratio: RationalFunction = ONE_RF

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(_as_param(u) for u in self.upper))
        object.__setattr__(self, "lower", tuple(_as_param(l) for l in self.lower))
        z = self.z
        if isinstance(z, str):
            z = ex.parse_rational_function(z)
        object.__setattr__(self, "z", RationalFunction._coerce(z) if not isinstance(z, RationalFunction) else z)
        for p in self.upper + self.lower:
            _slope(p)

    @property
    def z_value(self):
        return self.z.constant_value() if self.z.is_constant() else None

    def n_ratio(self):
        """``A(t, n+1) / A(t, n)``."""
        num = reduce(lambda acc, u: acc * (u + N), self.upper, ONE)
        den = reduce(lambda acc, l: acc * (l + N), self.lower, ONE)
        if self.factorial:
            den = den * (N + 1)
        return self.z * RationalFunction(num, den)

    def t_shift_ratio(self, j):
        """``A(t+j, n) / A(t, n)`` as (coefficient in t, numerator, denominator in n)."""
        num, den = ONE, ONE
        for params, upstairs in ((self.upper, True), (self.lower, False)):
            for p in params:
                m = _slope(p) * j
                fn, fd = _pochhammer_shift(p, m)
                if upstairs:
                    num, den = num * fn, den * fd
                else:
                    num, den = num * fd, den * fn
        coeff = ONE_RF
        if self.t_ratio != ONE_RF:
            for i in range(j):
                coeff = coeff / self.t_ratio.shift("t", i)
            for i in range(j, 0):
                coeff = coeff * self.t_ratio.shift("t", i)
        return coeff, num, den

    def t_ratio_rf(self, j):
        coeff, num, den = self.t_shift_ratio(j)
        return coeff * RationalFunction(num, den)

    def at(self, t):
        """Numeric parameters at a rational t (for series evaluation)."""
        t = Fraction(t)
        up = [p.evaluate({"t": t}) if p.variables() else p.constant_value() if not p.is_zero() else Fraction(0)
              for p in self.upper]
        low = [p.evaluate({"t": t}) if p.variables() else p.constant_value() if not p.is_zero() else Fraction(0)
               for p in self.lower]
        if not self.factorial:
            up = up + [Fraction(1)]
        return up, low

    def sum_value(self, t, prec=DEFAULT_PREC):
        if self.t_ratio != ONE_RF:
            raise ValueError("normalized families have no standalone sum value")
        z = self.z_value
        if z is None:
            raise ValueError("symbolic z")
        up, low = self.at(t)
        return hyper_value(up, low, z, prec)

    def sum_expression(self, shift=0):
        """``hyper([...], [...], z)`` at ``t + shift`` as an expression tree."""
        def fmt(p):
            return str(p.shift("t", shift)) if p.variables() else str(p)

        ups = [fmt(p) for p in self.upper] + ([] if self.factorial else ["1"])
        lows = [fmt(p) for p in self.lower]
        return ex.parse(f"hyper([{', '.join(ups)}], [{', '.join(lows)}], {self.z})")

    def to_json(self):
        return {
            "upper": [str(p) for p in self.upper],
            "lower": [str(p) for p in self.lower],
            "z": str(self.z),
        }


def _pochhammer_shift(p, m):
    """``(p + m)_n / (p)_n`` as (numerator, denominator) polynomials in n and t."""
    num, den = ONE, ONE
    if m >= 0:
        for i in range(m):
            num = num * (p + N + i)
            den = den * (p + i)
    else:
        for i in range(-m):
            num = num * (p + m + i)
            den = den * (p + m + N + i)
    return num, den


# ---------------------------------------------------------------------------
# Gosper-Petkovsek normal form


_SPECIALIZATION = {"a": Fraction(131, 17), "b": Fraction(97, 23), "c": Fraction(67, 29),
                   "z": Fraction(83, 31), "t": Fraction(113, 37), "d": Fraction(53, 41)}


def _specialize(p):
    vals = {v: x for v, x in _SPECIALIZATION.items() if v in p.variables()}
    return p.substitute(vals) if vals else p


def _numeric_roots(p):
    coeffs = _specialize(p).univariate_coefficients("n")
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    with mpmath.workprec(200):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(coeffs)]
        return mpmath.polyroots(cs, maxsteps=200, extraprec=400)


def dispersion_candidates(a, b):
    """Integers h >= 0 with possibly nontrivial gcd(a(n), b(n+h))."""
    if a.degree("n") <= 0 or b.degree("n") <= 0:
        return []
    if _specialize(a).degree("n") != a.degree("n") or _specialize(b).degree("n") != b.degree("n"):
        raise ArithmeticError("degree drop under specialization")
    out = set()
    for alpha in _numeric_roots(a):
        for beta in _numeric_roots(b):
            h = beta - alpha
            hr = int(mpmath.nint(h.real)) if isinstance(h, mpmath.mpc) else int(mpmath.nint(h))
            if hr >= 0 and abs(h - hr) < mpmath.mpf(10) ** -30:
                out.add(hr)
    return sorted(out)


def gosper_form(ratio):
    """``ratio = (a(n)/b(n)) * c(n+1)/c(n)`` with gcd(a(n), b(n+h)) = 1 for h >= 0."""
    ratio = RationalFunction._coerce(ratio)
    a, b, c = ratio.num, ratio.den, ONE
    for h in dispersion_candidates(a, b):
        g = gcd(a, b.shift("n", h))
        while g.degree("n") > 0:
            a = a.exquo(g)
            b = b.exquo(g.shift("n", -h))
            for i in range(1, h + 1):
                c = c * g.shift("n", -i)
            g = gcd(a, b.shift("n", h))
    return a, b, c


def _coeff_n(p, k):
    return p.coefficients("n").get(k, ZERO)


def degree_bound(a, b1, deg_p):
    """Degree bound for polynomial x with a(n) x(n+1) - b1(n) x(n) = p(n)."""
    da, db = a.degree("n"), b1.degree("n")
    lca, lcb = _coeff_n(a, da), _coeff_n(b1, db)
    if da != db or lca != lcb:
        return deg_p - max(da, db)
    k = da
    candidates = [deg_p - k + 1]
    diff = RationalFunction(_coeff_n(b1, k - 1) - _coeff_n(a, k - 1), lca)
    if diff.is_constant():
        v = diff.constant_value()
        if v.denominator == 1:
            candidates.append(int(v))
    return max(candidates)


# ---------------------------------------------------------------------------
# linear algebra over Q(t, ...)


def _size(rf):
    return len(rf.num) + len(rf.den)


def nullspace(rows, ncols):
    """Basis of the right nullspace of a matrix of rational functions."""
    m = [[RationalFunction._coerce(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        best = None
        for i in range(r, len(m)):
            if not m[i][col].is_zero() and (best is None or _size(m[i][col]) < _size(m[best][col])):
                best = i
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        inv = m[r][col].inverse()
        m[r] = [x * inv if not x.is_zero() else x for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][col].is_zero():
                f = m[i][col]
                m[i] = [x - f * y if not y.is_zero() else x for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [ZERO_RF] * ncols
        v[fcol] = ONE_RF
        for i, pcol in enumerate(pivots):
            v[pcol] = -m[i][fcol]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# Gosper


@dataclass(frozen=True)
class GosperResult:
    multiplier: RationalFunction
    a: Polynomial
    b: Polynomial
    c: Polynomial
    x: Polynomial


def _gosper_system(a, b1, rhs_list, d):
    """Rows for a(n)x(n+1) - b1(n)x(n) - sum sigma_j rhs_j(n) = 0, x of degree d."""
    cols = []
    for i in range(d + 1):
        cols.append(a * (N + 1) ** i - b1 * N ** i)
    cols += [-p for p in rhs_list]
    top = max((p.degree("n") for p in cols if not p.is_zero()), default=0)
    coeff_tables = [p.coefficients("n") for p in cols]
    rows = [[tab.get(k, ZERO) for tab in coeff_tables] for k in range(top + 1)]
    return rows, len(cols)


def gosper(ratio):
    """Multiplier rho with T(n) = rho(n+1)T(n+1) - rho(n)T(n) for a term with ``ratio = T(n+1)/T(n)``."""
    ratio = RationalFunction._coerce(ratio)
    a, b, c = gosper_form(ratio)
    b1 = b.shift("n", -1)
    d = degree_bound(a, b1, c.degree("n"))
    if d < 0:
        raise NotGosperSummable("negative degree bound")
    rows, ncols = _gosper_system(a, b1, [c], d)
    for v in nullspace(rows, ncols):
        if not v[-1].is_zero():
            coeffs = [x / v[-1] for x in v[:-1]]
            x = sum((RationalFunction(N ** i) * cf for i, cf in enumerate(coeffs)), ZERO_RF)
            rho = RationalFunction(b1) * x / RationalFunction(c)
            return rho
    raise NotGosperSummable("no polynomial solution of the Gosper equation")


# ---------------------------------------------------------------------------
# Zeilberger


@dataclass(frozen=True)
class ZeilbergerRun:
    recurrence: Recurrence
    order: int
    sigma: tuple
    rho: RationalFunction
    infeasible_orders: tuple
    p1_vanishes: bool = False
    elapsed: float = 0.0
    shadow: tuple = field(default=(), compare=False)


def _telescoper_candidate(term, r):
    """Solve the parametrized Gosper equation for order r; None if infeasible.

    With ``A(t+j, n)/A(t, n) = coeff_j(t) num_j(n)/den_j(n)`` the unknowns are
    ``tau_j = sigma_j coeff_j`` so every right-hand side is a polynomial.
    """
    shifts = [term.t_shift_ratio(j) for j in range(r + 1)]
    den = reduce(lambda acc, s: lcm(acc, s[2]), shifts, ONE)
    parts = [num * den.exquo(d) for _, num, d in shifts]
    ratio = term.n_ratio() * RationalFunction(den, den.shift("n", 1))
    a, b, c = gosper_form(ratio)
    b1 = b.shift("n", -1)
    rhs = [p * c for p in parts]
    deg_p = max(p.degree("n") for p in rhs)
    d = degree_bound(a, b1, deg_p)
    if d < 0:
        return None
    rows, ncols = _gosper_system(a, b1, rhs, d)
    for v in nullspace(rows, ncols):
        tau = v[d + 1:]
        if all(x.is_zero() for x in tau):
            continue
        x = reduce(lambda acc, ik: acc + RationalFunction(N ** ik[0]) * ik[1], enumerate(v[: d + 1]), ZERO_RF)
        sigma = [tj / coeff for tj, (coeff, _, _) in zip(tau, shifts)]
        # G(n) = b1 x / (c P) * T(n) and T = A P / den
        rho = RationalFunction(b1) * x / RationalFunction(c * den)
        return sigma, rho
    return None


def zeilberger(term, max_order=3, timeout=None, check=True):
    """Minimal-order recurrence in t for ``F(t) = sum_n A(t, n)``, with certificate."""
    if max_order > MAX_ORDER:
        raise ValueError(f"max_order is capped at {MAX_ORDER}")
    start = time.monotonic()
    infeasible = []
    for r in range(1, max_order + 1):
        if timeout is not None and time.monotonic() - start > timeout:
            raise TelescopingTimeout(f"gave up after order {r - 1}")
        found = _telescoper_candidate(term, r)
        if found is None:
            infeasible.append(r)
            continue
        sigma, rho = found
        rec, p1_zero = _package(term, r, sigma, rho)
        if check:
            residue = certificate_residue(term, rec)
            if not residue.is_zero():
                raise ArithmeticError(f"certificate check failed: {residue}")
        return ZeilbergerRun(rec, r, tuple(sigma), rho, tuple(infeasible), p1_zero,
                             time.monotonic() - start)
    raise NoRecurrenceFound(f"no recurrence of order <= {max_order}")


def _package(term, r, sigma, rho):
    """Re-index so that shifts read (1, 0, -1, ..., 1 - r) and clear content."""
    back = r - 1
    coeffs = [s.shift("t", -back) for s in reversed(sigma)]
    mult = rho.shift("t", -back)
    # B(t, n) = rho(t - back, n) A(t - back, n)
    g = reduce(lambda acc, c: lcm(acc, c.den), coeffs, ONE)
    polys = [c.num * g.exquo(c.den) for c in coeffs]
    content = reduce(gcd, polys, ZERO)
    polys = [p.exquo(content) for p in polys]
    unit = _integer_unit(polys)
    polys = [p * (1 / unit) for p in polys]
    mult = mult * RationalFunction(g, content) * (1 / unit)
    inhomogeneity = None
    if term.t_ratio == ONE_RF and not _pole_at_zero(mult):
        boundary = mult.substitute({"n": ZERO_RF})
        if not boundary.is_zero():
            # A(t - back, 0) = 1, so summing over n leaves -B(t, 0)
            inhomogeneity = -boundary
    shifts = tuple(1 - i for i in range(r + 1))
    rec = Recurrence(polys, shifts, inhomogeneity, Certificate(mult, -back),
                     provenance=("zeilberger", f"order {r}"))
    p1_zero = r == 2 and polys[1].is_zero()
    return rec, p1_zero


def _integer_unit(polys):
    """Rational u such that polys/u have jointly coprime integer coefficients, first lc positive."""
    coeffs = [c for p in polys for _, c in p.items()]
    den = reduce(lambda acc, c: acc * c.denominator // math.gcd(acc, c.denominator), coeffs, 1)
    num = reduce(lambda acc, c: math.gcd(acc, int(c * den)), coeffs, 0)
    unit = Fraction(num, den)
    lead = next(p for p in polys if not p.is_zero())
    return -unit if lead.leading_coefficient() < 0 else unit


def _pole_at_zero(rf):
    return rf.den.substitute({"n": 0}).is_zero()


def certificate_residue(term, rec):
    """``sum p_i A(t+s_i, n)/A(t+b, n) - (rho(n+1) A(n+1)/A(n) - rho(n))`` with b the base shift."""
    base = rec.certificate.base_shift
    rho = rec.certificate.multiplier
    lhs = ZERO_RF
    for p, s in zip(rec.coefficients, rec.shifts):
        if p.is_zero():
            continue
        lhs = lhs + RationalFunction(p) * term.t_ratio_rf(s - base).shift("t", base)
    step = term.n_ratio().shift("t", base)
    rhs = rho.shift("n", 1) * step - rho
    return lhs - rhs


def numeric_shadow(term, rec, points=SHADOW_POINTS, prec=DEFAULT_PREC, tol=Fraction(1, 10 ** 30)):
    """Check the recurrence on high-precision sum values; returns [(t, residual or None)]."""
    out = []
    for t in points:
        t = Fraction(t)
        try:
            with mpmath.workprec(prec + 20):
                total = mpmath.mpf(0)
                scale = mpmath.mpf(0)
                for p, s in zip(rec.coefficients, rec.shifts):
                    pv = p.evaluate({"t": t}) if p.variables() else (p.constant_value() if not p.is_zero() else 0)
                    if pv == 0:
                        continue
                    v = term.sum_value(t + s, prec)
                    piece = mpmath.mpf(pv.numerator) / pv.denominator * (
                        mpmath.mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else v)
                    total += piece
                    scale = max(scale, abs(piece))
                if not rec.is_homogeneous():
                    h = rec.inhomogeneity.evaluate({"t": t})
                    hv = mpmath.mpf(h.numerator) / h.denominator
                    total -= hv
                    scale = max(scale, abs(hv))
                res = abs(total) / scale if scale else abs(total)
            out.append((t, res, res <= mpmath.mpf(tol.numerator) / tol.denominator))
        except SKIPPABLE:
            out.append((t, None, None))
    return out


# ---------------------------------------------------------------------------
# WZ pairs


@dataclass(frozen=True)
class WZCheck:
    ok: bool
    residue: RationalFunction

    def __bool__(self):
        return self.ok


def verify_wz_pair(term, multiplier):
    """A(t+1,n) - A(t,n) == B(t,n+1) - B(t,n) with B = multiplier * A(t,n)."""
    if term is None:
        return WZCheck(True, ZERO_RF)
    multiplier = RationalFunction._coerce(multiplier)
    lhs = term.t_ratio_rf(1) - 1
    rhs = multiplier.shift("n", 1) * term.n_ratio() - multiplier
    residue = lhs - rhs
    return WZCheck(residue.is_zero(), residue)


def wz_normalized(term, run):
    """Turn an order-one telescoper into a WZ pair (normalized term, multiplier)."""
    if run.order != 1:
        raise ValueError("WZ normalization needs a first-order recurrence")
    p0, p1 = run.recurrence.coefficients
    step = RationalFunction(-p1, p0)
    normalized = HyperTermFamily(term.upper, term.lower, term.z, term.factorial, step)
    multiplier = run.recurrence.certificate.multiplier / RationalFunction(-p1)
    return normalized, multiplier


# ---------------------------------------------------------------------------
# z0 probe


@dataclass(frozen=True)
class ProbeResult:
    shift: tuple
    polynomial: Polynomial
    degenerate: bool = False
    recurrence: Recurrence = None

    def roots(self):
        from .polynomial import rational_roots

        if self.degenerate or self.polynomial.degree("z") <= 0:
            return []
        return sorted(set(rational_roots(self.polynomial, "z")) - {0, 1})


def _z_part(p):
    """Leading t-coefficient of p with constant and z-power factors removed."""
    if p.is_zero():
        return ONE
    lc = p.coefficients("t")[p.degree("t")]
    lc = lc.divide_monomial(lc.monomial_content())
    return lc.primitive()


def leading_coefficient_probe(shift, timeout=None):
    """Run zeilberger with a = b = 0 and c in {0, 1}; return the z-content of lc_t(p0), lc_t(p2)."""
    from .contiguity import as_shift

    k, l, m = as_shift(shift)
    if k == l == m == 0:
        return ProbeResult((k, l, m), ONE, degenerate=True)
    c0 = 1 if m in (k, l) else 0
    term = HyperTermFamily([k * T, l * T], [c0 + m * T], "z")
    run = zeilberger(term, max_order=2, timeout=timeout)
    coeffs = run.recurrence.coefficients
    parts = [_z_part(coeffs[0]), _z_part(coeffs[-1])]
    poly = reduce(lcm, parts, ONE)
    return ProbeResult((k, l, m), poly, recurrence=run.recurrence)


# ---------------------------------------------------------------------------
# records


def family_from_json(data):
    return HyperTermFamily(data["upper"], data["lower"], data.get("z", "1"))


def recurrence_from_json(data):
    coeffs = [ex.parse_polynomial(c) for c in data["coefficients"]]
    inhom = data.get("inhomogeneity")
    cert = data.get("certificate")
    certificate = None
    if cert is not None:
        certificate = Certificate(ex.parse_rational_function(cert["multiplier"]), int(cert["base_shift"]))
    return Recurrence(coeffs, data["shifts"], ex.parse_rational_function(inhom) if inhom else None, certificate)


def recurrence_to_json(rec):
    out = {
        "coefficients": [str(p) for p in rec.coefficients],
        "shifts": list(rec.shifts),
        "order": rec.order,
    }
    if not rec.is_homogeneous():
        out["inhomogeneity"] = str(rec.inhomogeneity)
    if rec.certificate is not None:
        out["certificate"] = {"multiplier": str(rec.certificate.multiplier),
                              "base_shift": rec.certificate.base_shift}
    return out


def recurrence_record(term, rec, name="", source="", status="certified", points=SHADOW_POINTS):
    """``p0 F(t+s0) = -(sum of the other terms) + inhomogeneity`` as an IdentityRecord.

    Writing the first term alone on the left keeps the relative residual
    meaningful when both sides are evaluated numerically.
    """
    from .records import IdentityRecord

    pieces = [(p, s) for p, s in zip(rec.coefficients, rec.shifts) if not p.is_zero()]
    (p0, s0), rest = pieces[0], pieces[1:]
    lhs = ex.mul(ex.from_polynomial(p0), term.sum_expression(s0))
    rhs = None
    for p, s in rest:
        piece = ex.mul(ex.from_polynomial(-p), term.sum_expression(s))
        rhs = piece if rhs is None else ex.BinOp("+", rhs, piece)
    if not rec.is_homogeneous():
        inhom = ex.parse(f"({rec.inhomogeneity.num})/({rec.inhomogeneity.den})")
        rhs = inhom if rhs is None else ex.BinOp("+", rhs, inhom)
    params = dict(term.to_json())
    params.update(recurrence_to_json(rec))
    params["points"] = [str(Fraction(p)) for p in points]
    return IdentityRecord("recurrence", lhs, rhs if rhs is not None else ex.num(0), params,
                          provenance=tuple(rec.provenance), name=name, source=source, status=status)


def certify_recurrence_record(record, points=None, prec=DEFAULT_PREC):
    """Exact certificate check (when a certificate is stored) plus numeric evaluation."""
    from .numerics import PointCheck, check_point, summarize

    checks = []
    params = record.params
    if params.get("certificate") and "upper" in params:
        term = family_from_json(params)
        rec = recurrence_from_json(params)
        residue = certificate_residue(term, rec)
        ok = residue.is_zero()
        checks.append(PointCheck(None, residual=Fraction(0) if ok else Fraction(1), passed=ok, exact=True,
                                 note="certificate identity" + ("" if ok else f" fails: residue {residue}")))
    pts = points if points is not None else params.get("points", [str(p) for p in SHADOW_POINTS])
    for t in pts:
        checks.append(check_point(record.lhs, record.rhs, {"t": Fraction(t)}, prec))
    return summarize(checks, prec)
