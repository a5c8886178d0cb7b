"""From an admissible family to a numerically certified gamma closed form.

Along an admissible family the hypergeometric value obeys a first-order
equation ``F(t+1) = R(t) F(t)``.  Factoring ``R`` into linear pieces gives a
gamma quotient with the same step ratio; the two are then matched at a
reference point and compared at a spread of sample points.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import expr as ex
from .admissibility import AdmissibleFamily
from .contiguity import as_shift, decomposition
from .forms import LinearForm
from .numerics import (
    DEFAULT_PREC,
    SKIPPABLE,
    Certification,
    check_point,
    hyper_value,
    summarize,
)
from .rational import RationalFunction, factor_linear, recompose_linear, substitute
from .records import IdentityRecord

SAMPLE_POINTS = tuple(Fraction(x) for x in ("0", "1/3", "1/2", "1", "3/2", "2", "7/3", "3"))


class SeriesDiverges(ArithmeticError):
    pass


class ClausenShapeMismatch(ValueError):
    pass


def _frac(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _paren(x):
    return _frac(x) if x.denominator == 1 and x >= 0 else f"({_frac(x)})"


@dataclass(frozen=True)
class GammaForm:
    """``R0^t * prod Gamma(t + alpha) / prod Gamma(t + delta)`` up to a constant."""

    R0: Fraction
    alphas: tuple
    deltas: tuple
    normalization: str = "relative-to-t=0"

    def __post_init__(self):
        object.__setattr__(self, "R0", Fraction(self.R0))
        object.__setattr__(self, "alphas", tuple(sorted(Fraction(x) for x in self.alphas)))
        object.__setattr__(self, "deltas", tuple(sorted(Fraction(x) for x in self.deltas)))
        if len(self.alphas) != len(self.deltas):
            raise ValueError("need as many gamma factors upstairs as downstairs")

    def step_ratio(self):
        """``form(t+1)/form(t)`` as a rational function of t."""
        return recompose_linear(self.R0, self.alphas, self.deltas, "t")

    def expression(self, t_ref=Fraction(0), constant=None):
        """Expression tree normalized so that it equals ``constant`` at ``t_ref``."""
        t_ref = Fraction(t_ref)
        factors = []
        if constant is not None:
            factors.append(constant if isinstance(constant, ex.Expr) else ex.num(constant))
        if self.R0 != 1:
            exponent = "t" if t_ref == 0 else str(LinearForm(-t_ref, 1))
            factors.append(ex.parse(f"{_paren(self.R0)}^({exponent})"))
        upstairs = [f"gamma({LinearForm(al, 1)})" for al in self.alphas]
        upstairs += [f"gamma({_frac(t_ref + de)})" for de in self.deltas]
        downstairs = [f"gamma({LinearForm(de, 1)})" for de in self.deltas]
        downstairs += [f"gamma({_frac(t_ref + al)})" for al in self.alphas]
        text = "*".join(upstairs) or "1"
        if downstairs:
            text = f"{text}/({'*'.join(downstairs)})"
        factors.append(ex.parse(text))
        return ex.mul(*factors)

    def to_json(self):
        return {
            "R0": _frac(self.R0),
            "alphas": [_frac(x) for x in self.alphas],
            "deltas": [_frac(x) for x in self.deltas],
            "normalization": self.normalization,
        }

    def __str__(self):
        up = "".join(f"Γ({LinearForm(x, 1)})" for x in self.alphas)
        down = "".join(f"Γ({LinearForm(x, 1)})" for x in self.deltas)
        return f"({_frac(self.R0)})^t {up}/{down}" if up else f"({_frac(self.R0)})^t"


@dataclass(frozen=True)
class GammaEvaluation:
    family: AdmissibleFamily
    form: GammaForm
    certification: Certification
    t_ref: Fraction = Fraction(0)
    reference_value: object = Fraction(1)
    record: IdentityRecord = field(default=None, compare=False)

    @property
    def certified(self):
        return self.certification.passed

    def to_json(self):
        return {
            "family": self.family.to_json(),
            "form": self.form.to_json(),
            "t_ref": _frac(self.t_ref),
            "certification": self.certification.to_json(),
            "record": self.record.to_json() if self.record else None,
        }

    def render(self):
        """LaTeX-flavoured one-liner."""
        p = self.family.params()
        lhs = f"{{}}_2F_1({p.a}, {p.b}; {p.c} | {_frac(self.family.z0)})"
        rhs = ex.to_text(self.record.rhs) if self.record else str(self.form)
        return f"{lhs} = {rhs}   [{self.certification.status}]"


def _params(family):
    if isinstance(family, AdmissibleFamily):
        return family.params(), Fraction(family.z0), family.shift
    raise TypeError("expected an AdmissibleFamily")


def functional_ratio(family):
    """``R(beta0 + t*gamma, z0)`` as a normalized rational function of t."""
    params, z0, shift = _params(family)
    R = decomposition(as_shift(shift)).R
    bindings = dict(params.bindings())
    bindings["z"] = z0
    return substitute(R, bindings)


def hyper_expression(upper, lower, z):
    """``hyper([...], [...], z)`` with parameters given as linear forms."""
    ups = ", ".join(str(LinearForm.parse(u) if isinstance(u, str) else u) for u in upper)
    lows = ", ".join(str(LinearForm.parse(l) if isinstance(l, str) else l) for l in lower)
    return ex.parse(f"hyper([{ups}], [{lows}], {_frac(Fraction(z))})")


def family_expression(family):
    params, z0, _ = _params(family)
    return hyper_expression([params.a, params.b], [params.c], z0)


def _family_value(params, z0, t, prec):
    a, b, c = params.at(t)
    return hyper_value([a, b], [c], z0, prec)


def _gamma_args_ok(form, t):
    for x in form.alphas + form.deltas:
        v = t + x
        if v.denominator == 1 and v <= 0:
            return False
    return True


def _lower_ok(params, t):
    c = params.c.at(t)
    return not (c.denominator == 1 and c <= 0)


def reference_point(family, form, prec=DEFAULT_PREC, limit=12):
    """First t in 0, 1, 2, ... where both sides are finite and F is nonzero."""
    params, z0, _ = _params(family)
    for k in range(limit):
        t = Fraction(k)
        if not (_gamma_args_ok(form, t) and _lower_ok(params, t)):
            continue
        try:
            value = _family_value(params, z0, t, prec + 20)
        except SKIPPABLE:
            continue
        if value != 0:
            return t, value
    raise SeriesDiverges(f"no usable normalization point for {family}")


def synthesize(family, prec=DEFAULT_PREC, points=SAMPLE_POINTS):
    """Build the gamma form from the functional ratio and certify it numerically."""
    params, z0, shift = _params(family)
    ratio = functional_ratio(family)
    R0, alphas, deltas = factor_linear(ratio, "t")
    t_ref, ref_value = reference_point(family, GammaForm(R0, alphas, deltas), prec)
    form = GammaForm(R0, alphas, deltas, normalization=f"relative-to-t={_frac(t_ref)}")

    lhs = family_expression(family)
    if t_ref == 0 and ref_value == 1:
        constant = None
    elif isinstance(ref_value, Fraction):
        constant = ex.num(ref_value)
    else:
        # fold the normalization value in as a series constant
        constant = hyper_expression([params.a.at(t_ref), params.b.at(t_ref)], [params.c.at(t_ref)], z0)
    rhs = form.expression(t_ref, constant)

    checks = []
    for t in points:
        t = Fraction(t)
        if not (_gamma_args_ok(form, t) and _lower_ok(params, t)):
            continue
        check = check_point(lhs, rhs, {"t": t}, prec)
        checks.append(check)
    if checks and all(c.skipped for c in checks):
        raise SeriesDiverges(f"the series neither converges nor terminates at any sample point for {family}")
    certification = summarize(checks, prec)
    status = "certified" if certification.passed else "failed"
    record = IdentityRecord(
        kind="gamma-eval",
        lhs=lhs,
        rhs=rhs,
        params={
            "shift": list(shift),
            "z0": _frac(z0),
            "points": [_frac(Fraction(c.t)) for c in checks],
            "form": form.to_json(),
        },
        provenance=("admissibility.solve", "gamma_synthesis.functional_ratio", "factor_linear",
                    f"numeric certification at {prec} bits"),
        status=status,
    )
    return GammaEvaluation(family, form, certification, t_ref, ref_value, record)


def recertify(evaluation, points, prec=DEFAULT_PREC):
    rec = evaluation.record
    return summarize([check_point(rec.lhs, rec.rhs, {"t": Fraction(p)}, prec) for p in points], prec)


def clausen_square(evaluation, name="", source=""):
    """Square a gamma evaluation through Clausen's 2F1^2 = 3F2 formula.

    Requires ``c(t) = a(t) + b(t) + 1/2`` identically in t.
    """
    params, z0, shift = _params(evaluation.family)
    a, b, c = params.a, params.b, params.c
    if c != a + b + Fraction(1, 2):
        raise ClausenShapeMismatch(f"c = {c} is not a + b + 1/2 = {a + b + Fraction(1, 2)}")
    upper = [a * 2, b * 2, a + b]
    lower = [a * 2 + b * 2, a + b + Fraction(1, 2)]
    lhs = hyper_expression(upper, lower, z0)
    rhs = ex.power(evaluation.record.rhs, ex.num(2))
    return IdentityRecord(
        kind="gamma-eval",
        lhs=lhs,
        rhs=rhs,
        params={"shift": list(shift), "z0": _frac(z0), "clausen": True},
        provenance=tuple(evaluation.record.provenance) + ("clausen_square",),
        name=name,
        source=source,
        status="derived",
    )


def clausen_series_check(a, b, order=30):
    """Compare truncations of 2F1(a,b;a+b+1/2|z)^2 and the Clausen 3F2 in exact arithmetic."""
    a, b = Fraction(a), Fraction(b)
    c = a + b + Fraction(1, 2)

    def coeffs(upper, lower):
        out, term = [], Fraction(1)
        for n in range(order):
            out.append(term)
            num = Fraction(1)
            for u in upper:
                num *= u + n
            den = Fraction(n + 1)
            for l in lower:
                den *= l + n
            term = term * num / den if den else Fraction(0)
        return out

    f = coeffs([a, b], [c])
    square = [sum(f[i] * f[n - i] for i in range(n + 1)) for n in range(order)]
    g = coeffs([2 * a, 2 * b, a + b], [2 * a + 2 * b, c])
    return square == g


__all__ = [
    "GammaForm",
    "GammaEvaluation",
    "IdentityRecord",
    "SAMPLE_POINTS",
    "SeriesDiverges",
    "ClausenShapeMismatch",
    "functional_ratio",
    "synthesize",
    "recertify",
    "clausen_square",
    "clausen_series_check",
    "RationalFunction",
]
