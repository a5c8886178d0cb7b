"""Admissible quadruples: parameter lines beta0 + t*gamma and points z0 with Q == 0.

The coefficient system is solved by an elimination ladder: a variable is
fixed whenever some equation involves it alone, linear equations with a
constant pivot are used for substitution, and otherwise a variable is
eliminated with resultants (order c, b, a).  Only rational solutions are
produced; branches that stall are kept as diagnostics.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product

from .contiguity import ParamVector, ShiftVector, as_shift, decomposition
from .polynomial import (
    ONE,
    Polynomial,
    content,
    gcd,
    rational_roots,
    resultant,
)
from .rational import substitute

UNKNOWNS = ("a", "b", "c", "z")
ELIMINATION_ORDER = ("c", "b", "a", "z")


class ZeroQ(ValueError):
    """Q vanishes identically, e.g. for the zero shift."""


@dataclass(frozen=True)
class AdmissibilityPolynomial:
    shift: ShiftVector
    coefficients: tuple  # Polynomial in (a, b, c, z), index = power of t
    stripped: tuple = ()  # linear factors removed from Q's numerator

    def as_polynomial(self):
        return Polynomial.from_coefficients("t", list(self.coefficients))

    @property
    def degree(self):
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class AdmissibleFamily:
    """``beta(t) = base + t*shift`` and ``z0`` with Q(beta(t), z0) == 0 for all t.

    ``base`` entries and ``z0`` are Fractions, or Polynomials in the names
    listed in ``free`` for one-parameter solutions.
    """

    shift: ShiftVector
    base: tuple
    z0: object
    free: tuple = ()
    status: str = "solved"

    @property
    def is_rational(self):
        return not self.free

    def params(self):
        if self.free:
            raise ValueError("family has free parameters")
        return ParamVector.family(self.base, self.shift)

    def to_json(self):
        a0, b0, c0 = self.base
        out = {
            "shift": list(self.shift),
            "z0": str(self.z0),
            "a0": str(a0),
            "b0": str(b0),
            "c0": str(c0),
            "status": self.status,
        }
        if self.free:
            out["free"] = list(self.free)
        return out

    def __str__(self):
        p = self.params() if not self.free else None
        if p is not None:
            return f"z0={self.z0}, a={p.a}, b={p.b}, c={p.c}"
        return f"z0={self.z0}, base={tuple(map(str, self.base))}, free={self.free}"


@dataclass
class SolveResult:
    shift: ShiftVector
    families: list
    unsolved: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.families)

    def __len__(self):
        return len(self.families)


def _univariate_linear_factors(p, var):
    """Rational roots of the part of ``p`` depending on ``var`` alone."""
    others = [v for v in p.variables() if v != var]
    if not others:
        cont = p
    else:
        groups = {}
        for e, c in p.items():
            key = tuple(k for v, k in zip(("a", "b", "c", "z", "t", "d", "n"), e) if v != var)
            groups.setdefault(key, {})[e] = c
        cont = None
        for terms in groups.values():
            part = Polynomial(terms)
            # strip the monomial in the other variables
            mono = part.monomial_content()
            mono = tuple(0 if v == var else k for v, k in zip(("a", "b", "c", "z", "t", "d", "n"), mono))
            part = part.divide_monomial(mono)
            cont = part if cont is None else gcd(cont, part)
            if cont.is_constant():
                return []
    if cont.degree(var) <= 0:
        return []
    return rational_roots(cont, var)


def admissibility_polynomial(shift):
    """Numerator of Q_gamma(beta + t*gamma, z) collected in t.

    Linear factors ``(x - r)`` of Q's numerator with ``x`` one of a, b, c
    moving along the shift are removed first: after substitution they have a
    constant t-coefficient and can never vanish identically.
    """
    shift = as_shift(shift)
    Q = decomposition(shift).Q
    if Q.is_zero():
        raise ZeroQ(f"Q vanishes identically for shift {shift}; degenerate shift")
    num = Q.num
    stripped = []
    for var, slope in zip("abc", shift):
        if not slope:
            continue
        for r in _univariate_linear_factors(num, var):
            factor = Polynomial.var(var) - r
            num = num.exquo(factor)
            stripped.append(factor)
    t = Polynomial.var("t")
    moved = num.substitute({v: Polynomial.var(v) + t * k for v, k in zip("abc", shift) if k})
    moved = moved.primitive()
    coeffs = moved.coefficient_list("t")
    return AdmissibilityPolynomial(shift, tuple(coeffs), tuple(stripped))


# ---------------------------------------------------------------------------
# elimination ladder


def _clean(eqs):
    out = []
    seen = set()
    for e in eqs:
        if e.is_zero():
            continue
        e = e.primitive()
        if e in seen:
            continue
        seen.add(e)
        out.append(e)
    out.sort(key=lambda p: (len(p.variables()), p.degree(), len(p)))
    return out


def _subst_all(eqs, var, value):
    return [e.substitute({var: value}) for e in eqs]


class _Ladder:
    def __init__(self, order=ELIMINATION_ORDER, hints=()):
        self.order = order
        self.hints = tuple(hints)
        self.unsolved = []

    def solve(self, eqs, unknowns, assigned):
        """Return a list of ``{var: Fraction | Polynomial}`` assignments."""
        eqs = _clean(eqs)
        if any(e.is_constant() for e in eqs):
            return []
        if not eqs:
            return [dict(assigned)]
        present = set().union(*(e.variables() for e in eqs))
        unknowns = [u for u in unknowns if u in present or u not in assigned]

        # 1. an equation in a single variable (prefer z, then the ladder order)
        uni = [e for e in eqs if len(e.variables()) == 1]
        if uni:
            rank = {v: i for i, v in enumerate(("z",) + self.order)}
            eq = min(uni, key=lambda e: (rank.get(e.variables()[0], 99), e.degree()))
            var = eq.variables()[0]
            roots = sorted(set(rational_roots(eq, var)))
            if len(roots) < eq.degree(var):
                leftover = eq
                for r in roots:
                    while True:
                        try:
                            leftover = leftover.exquo(Polynomial.var(var) - r)
                        except ArithmeticError:
                            break
                if leftover.degree(var) > 0:
                    self.unsolved.append(
                        {"reason": "irrational roots skipped", "equation": str(leftover), "assigned": _fmt(assigned)}
                    )
            out = []
            for r in roots:
                nxt = dict(assigned)
                nxt[var] = r
                out.extend(self.solve(_subst_all(eqs, var, r), [u for u in unknowns if u != var], nxt))
            return out

        # 2. a linear equation with a constant pivot
        for var in self.order:
            for e in eqs:
                if var in e.variables() and e.degree(var) == 1:
                    coeffs = e.coefficients(var)
                    pivot = coeffs[1]
                    if pivot.is_constant():
                        expr = -coeffs.get(0, Polynomial(0)) * (1 / pivot.constant_value())
                        rest = [f for f in eqs if f is not e]
                        sols = self.solve(_subst_all(rest, var, expr), [u for u in unknowns if u != var], assigned)
                        return [_back_substitute(s, var, expr) for s in sols]

        # 3. common factor: split the variety
        g = reduce(gcd, eqs)
        if not g.is_constant():
            first = self.solve([g], unknowns, assigned)
            second = self.solve([e.exquo(g) for e in eqs], unknowns, assigned)
            return _merge(first, second)

        # 4. a single equation in several variables: one-parameter family
        if len(eqs) == 1:
            return self._parametric(eqs[0], assigned)

        # 5. resultant elimination
        for var in self.order:
            with_v = [e for e in eqs if var in e.variables()]
            if not with_v:
                continue
            without = [e for e in eqs if var not in e.variables()]
            if len(with_v) == 1 and not without:
                continue
            if len(with_v) == 1:
                reduced = without
            else:
                pivot = min(with_v, key=lambda e: (e.degree(var), len(e)))
                reduced = without + [resultant(pivot, e, var) for e in with_v if e is not pivot]
                reduced = [r for r in reduced if not r.is_zero()]
                if not reduced:
                    continue
            partial = self.solve(reduced, [u for u in unknowns if u != var], assigned)
            out = []
            for sol in partial:
                back = [e.substitute({k: v for k, v in sol.items() if k in e.variables()}) for e in with_v]
                out.extend(self.solve(back, [var], sol))
            return _dedupe(out)

        self.unsolved.append({"reason": "elimination stalled", "equations": [str(e) for e in eqs], "assigned": _fmt(assigned)})
        return []

    def _parametric(self, eq, assigned):
        for var in self.order:
            if var in eq.variables() and eq.degree(var) == 1:
                coeffs = eq.coefficients(var)
                pivot = coeffs[1]
                rest = coeffs.get(0, Polynomial(0))
                if pivot.is_constant():
                    expr = -rest * (1 / pivot.constant_value())
                    sol = dict(assigned)
                    sol[var] = expr
                    return [sol]
        self.unsolved.append({"reason": "positive-dimensional branch", "equation": str(eq), "assigned": _fmt(assigned)})
        return []


def _back_substitute(sol, var, expr):
    out = dict(sol)
    vals = {k: v for k, v in sol.items() if k in expr.variables()}
    value = expr.substitute(vals) if vals else expr
    out[var] = value.constant_value() if value.is_constant() else value
    # earlier symbolic values may mention var: nothing to do, var was eliminated before them
    return out


def _merge(*groups):
    out = []
    for g in groups:
        out.extend(g)
    return _dedupe(out)


def _dedupe(sols):
    seen = []
    for s in sols:
        if s not in seen:
            seen.append(s)
    return seen


def _fmt(assigned):
    return {k: str(v) for k, v in assigned.items()}


# ---------------------------------------------------------------------------


def _anchor(shift):
    """Parameter pinned to 0 to remove the translation t -> t + s."""
    for var, k in zip("abc", shift):
        if k:
            return var
    return None


def family_is_admissible(poly, base, z0):
    bindings = {"a": base[0], "b": base[1], "c": base[2], "z": z0}
    return all(c.substitute(bindings).is_zero() for c in poly.coefficients)


def solve(shift, z0_hints=None, height_bound=12):
    """Admissible families for ``shift`` plus diagnostics for stalled branches."""
    shift = as_shift(shift)
    poly = admissibility_polynomial(shift)
    anchor = _anchor(shift)
    eqs = [c.substitute({anchor: 0}) for c in poly.coefficients]
    unknowns = [u for u in UNKNOWNS if u != anchor]
    ladder = _Ladder()
    raw = ladder.solve(eqs, unknowns, {anchor: Fraction(0)})
    if z0_hints is None and ladder.unsolved and not raw:
        z0_hints = candidate_z0(height_bound)
    for z0 in z0_hints or ():
        hinted = _Ladder()
        start = {anchor: Fraction(0), "z": Fraction(z0)}
        raw.extend(hinted.solve(_subst_all(eqs, "z", Fraction(z0)), [u for u in unknowns if u != "z"], start))
    families = []
    for sol in _dedupe(raw):
        fam = _to_family(shift, sol, poly)
        if fam is not None and fam not in families:
            families.append(fam)
    families.sort(key=_family_key)
    return SolveResult(shift, families, ladder.unsolved)


def _to_family(shift, sol, poly):
    names = ("a", "b", "c", "z")
    values = []
    free = set()
    for v in names:
        if v in sol:
            x = sol[v]
        else:
            x = Polynomial.var(v)
        if isinstance(x, Polynomial):
            if x.is_constant():
                x = x.constant_value()
            else:
                free.update(x.variables())
        values.append(x)
    a0, b0, c0, z0 = values
    if isinstance(z0, Fraction):
        if z0 in (0, 1):
            return None
    # c fixed at a non-positive integer along the whole line
    if shift.m == 0 and isinstance(c0, Fraction) and c0 <= 0 and c0.denominator == 1:
        return None
    if not free and not family_is_admissible(poly, (a0, b0, c0), z0):
        return None
    if free:
        bindings = {"a": a0, "b": b0, "c": c0, "z": z0}
        if not all(c.substitute(bindings).is_zero() for c in poly.coefficients):
            return None
    return AdmissibleFamily(shift, (a0, b0, c0), z0, tuple(sorted(free)))


def _family_key(f):
    def k(x):
        return (0, x, "") if isinstance(x, Fraction) else (1, Fraction(0), str(x))

    return (len(f.free), k(f.z0), k(f.base[0]), k(f.base[1]), k(f.base[2]))


def _smooth(n):
    n = abs(n)
    if n == 0:
        return False
    for p in (2, 3, 5):
        while n % p == 0:
            n //= p
    return n == 1


def candidate_z0(height_bound):
    """Rationals z0 with z0 and 1 - z0 both {2,3,5}-smooth, sorted by height."""
    if height_bound < 1:
        raise ValueError("height_bound must be at least 1")
    smooth = [k for k in range(1, height_bound + 1) if _smooth(k)]
    out = set()
    for p, q in product(smooth, smooth):
        for sign in (1, -1):
            z0 = Fraction(sign * p, q)
            if z0 in (0, 1):
                continue
            w = 1 - z0
            if _smooth(w.numerator) and _smooth(w.denominator):
                out.add(z0)
    return sorted(out, key=lambda x: (max(abs(x.numerator), x.denominator), abs(x), x))
