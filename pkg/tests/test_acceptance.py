"""End-to-end acceptance criteria, one test per criterion.

Each test evaluates every clause of its criterion, prints a single
``criterion N: PASS|FAIL`` line (with the failing clauses), and then asserts.
"""

import time
from fractions import Fraction as F

import mpmath
import pytest

from gammaeval import corpus
from gammaeval import expr as ex
from gammaeval import qseries as Q
from gammaeval.admissibility import admissibility_polynomial, solve
from gammaeval.expr import parse_polynomial as P
from gammaeval.gamma_synthesis import synthesize
from gammaeval.numerics import certify, numeric_value, relative_error
from gammaeval.polynomial import Polynomial
from gammaeval.telescoping import HyperTermFamily, certificate_residue, zeilberger

PREC = 200


class Criterion:
    def __init__(self, number, capsys, budget):
        self.number, self.capsys, self.budget = number, capsys, budget
        self.failures = []
        self.start = time.monotonic()

    def check(self, label, ok, detail=""):
        if not ok:
            self.failures.append(f"{label}{': ' + detail if detail else ''}")
        return ok

    def finish(self):
        elapsed = time.monotonic() - self.start
        self.check(f"time {elapsed:.1f}s within {self.budget}s", elapsed < self.budget)
        verdict = "PASS" if not self.failures else "FAIL"
        line = f"criterion {self.number}: {verdict} ({elapsed:.1f}s)"
        if self.failures:
            line += " | " + "; ".join(self.failures)
        with self.capsys.disabled():
            print("\n" + line)
        assert not self.failures, line


def worst_residual(cert):
    residuals = [mpmath.mpf(0) if p.exact and p.passed else p.residual for p in cert.points if not p.skipped]
    return max((mpmath.mpf(r.numerator) / r.denominator if isinstance(r, F) else r for r in residuals),
               default=mpmath.mpf(1))


def up_to_content(got, want):
    """Polynomial lists equal up to one common rational factor."""
    if len(got) != len(want):
        return False
    pairs = [(g, w) for g, w in zip(got, want) if not (g.is_zero() and w.is_zero())]
    g0, w0 = pairs[0]
    ratio = g0.leading_coefficient() / w0.leading_coefficient()
    return all(g == w * ratio for g, w in pairs)


def test_criterion_1_symbolic_221(capsys):
    c = Criterion(1, capsys, 5)
    poly = admissibility_polynomial("2,2,1")
    want = [
        P("1 + a + b + a*b - 2*c - a*c - b*c + c^2 + z + 2*a*z + a^2*z + 2*b*z + a*b*z + b^2*z - c*z - a*c*z - b*c*z"),
        P("2 + a + b - 2*c + 7*z + 5*a*z + 5*b*z - 4*c*z"),
        P("8*z + 1"),
    ]
    for i, (g, w) in enumerate(zip(poly.coefficients, want)):
        c.check(f"t^{i} coefficient", up_to_content([g], [w]), str(g))
    c.check("degree 2 in t", poly.degree == 2)
    fams = {(f.z0, f.base) for f in solve("2,2,1").families}
    c.check("two displayed families", fams == {(F(-1, 8), (F(0), F(-1, 3), F(2, 3))),
                                               (F(-1, 8), (F(0), F(1, 3), F(5, 6)))}, str(fams))
    c.finish()


def test_criterion_2_gamma_evaluation_221(capsys):
    c = Criterion(2, capsys, 10)
    fam = next(f for f in solve("2,2,1").families if f.base == (F(0), F(1, 3), F(5, 6)))
    points = [F(x) for x in ("0", "1/3", "1/2", "1", "3/2", "2", "7/3", "3")]
    ev = synthesize(fam, prec=PREC, points=points)
    c.check("R0 = 16/27", ev.form.R0 == F(16, 27), str(ev.form.R0))
    c.check("alpha = {5/6}", ev.form.alphas == (F(5, 6),), str(ev.form.alphas))
    c.check("delta = {2/3}", ev.form.deltas == (F(2, 3),), str(ev.form.deltas))
    checked = [p for p in ev.certification.points if not p.skipped]
    c.check("all eight points evaluated", sorted(p.t for p in checked) == points)
    worst = worst_residual(ev.certification)
    c.check("residual < 1e-40", worst < mpmath.mpf(10) ** -40, mpmath.nstr(worst, 3))
    c.finish()


def test_criterion_3_shift_m132(capsys):
    c = Criterion(3, capsys, 30)
    fam = next(f for f in solve("-1,3,2").families if f.z0 == F(1, 4) and f.base == (F(0), F(1), F(3, 2)))
    points = [F(0), F(1, 3), F(1, 2), F(1), F(5, 2)]
    ev = synthesize(fam, prec=PREC, points=points)
    c.check("R0 = 16/27", ev.form.R0 == F(16, 27), str(ev.form.R0))
    c.check("alphas {3/4, 5/4}", ev.form.alphas == (F(3, 4), F(5, 4)), str(ev.form.alphas))
    c.check("deltas {2/3, 7/6}", ev.form.deltas == (F(2, 3), F(7, 6)), str(ev.form.deltas))
    c.check("pipeline form certified", ev.certified)
    displayed = corpus.load("ebisu-132-quarter")
    rewrite = corpus.load("ebisu-132-quarter-rewrite")
    for t in points:
        env = {"t": t}
        pipeline = numeric_value(ev.record.rhs, env, PREC)
        shown = numeric_value(displayed.rhs, env, PREC)
        rewritten = numeric_value(rewrite.rhs, env, PREC)
        series = numeric_value(displayed.lhs, env, PREC)
        for label, x, y in (("pipeline vs display", pipeline, shown), ("display vs rewrite", shown, rewritten),
                            ("rewrite vs series", rewritten, series)):
            err = relative_error(x, y, PREC)
            c.check(f"{label} at t={t}", err < mpmath.mpf(10) ** -40, mpmath.nstr(err, 3))
    c.finish()


def test_criterion_4_clausen(capsys):
    c = Criterion(4, capsys, 30)
    points = [F(0), F(1, 4), F(1, 2), F(1)]
    tol = mpmath.mpf(10) ** -40
    for name in ("clausen-eb1", "clausen-eb1-eighth"):
        cert = certify(corpus.load(name), points=points, prec=PREC)
        worst = worst_residual(cert)
        c.check(f"{name} certified", cert.passed and len(cert.checked) == 4)
        c.check(f"{name} residual < 1e-40", worst < tol, mpmath.nstr(worst, 3))
    const = corpus.load("cf-3f2-quarter")
    series = numeric_value(const.lhs, None, PREC)
    closed = numeric_value(const.rhs, None, PREC)
    err = relative_error(series, closed, PREC)
    c.check("3F2(1/2,1/2,1/2;1,1|1/4) constant", err < tol, mpmath.nstr(err, 3))
    eq7 = corpus.load("clausen-eb1")
    at = {"t": F(-1, 4)}
    err = relative_error(numeric_value(eq7.rhs, at, PREC), closed, PREC)
    c.check("square at t=-1/4 equals the constant", err < tol, mpmath.nstr(err, 3))
    err = relative_error(numeric_value(eq7.lhs, at, PREC), series, PREC)
    c.check("series at t=-1/4 is the constant's series", err < tol, mpmath.nstr(err, 3))
    c.finish()


@pytest.mark.xfail(strict=True, reason=(
    "the displayed G(t) coefficients are not a recurrence for G: at t=1 they demand 15*G(2) = 9*G(1) "
    "while G(1)=1, G(2)=9/10; the computed recurrence 2t(4t-1)(4t+1), -(2t+1)(28t^2-28t+9), "
    "6(t-1)(2t-1)(2t+1) has an exact certificate"))
def test_criterion_5_telescoping(capsys):
    c = Criterion(5, capsys, 180)
    g = HyperTermFamily(["1/2", "t", "1-t"], ["1", "1/2+t"], "1/4")
    start = time.monotonic()
    run = zeilberger(g)
    c.check("G(t) within 60s", time.monotonic() - start < 60)
    c.check("G(t) order 2", run.order == 2, str(run.order))
    c.check("G(t) order 1 infeasible", run.infeasible_orders == (1,))
    c.check("G(t) certificate residue exactly 0", certificate_residue(g, run.recurrence).is_zero())
    printed = [P("t*(4*t - 1)*(4*t + 1)"), P("-(2*t + 1)*(10*t^2 - 10*t + 3)"), P("(t - 1)*(2*t - 1)*(2*t + 1)")]
    got = list(run.recurrence.coefficients)
    c.check("G(t) coefficients equal the displayed ones up to content",
            up_to_content(got, printed), "got " + ", ".join(str(p) for p in got))
    for up, low in ((["1/3", "t", "-1/3+2t"], ["2/3", "1/2+t"]), (["2/3", "t", "-2/3+2t"], ["4/3", "1/2+t"])):
        term = HyperTermFamily(up, low, "2")
        start = time.monotonic()
        r = zeilberger(term)
        label = f"z=2 family {up}"
        c.check(f"{label} within 60s", time.monotonic() - start < 60)
        c.check(f"{label} order 2", r.order == 2, str(r.order))
        c.check(f"{label} order 1 infeasible", 1 in r.infeasible_orders)
        c.check(f"{label} exact certificate", certificate_residue(term, r.recurrence).is_zero())
    c.finish()


def test_criterion_6_fifths(capsys):
    c = Criterion(6, capsys, 60)
    displayed = {
        ("-1,-1,4", (F(0), F(1, 2), F(3, 2)), F(1, 5)),
        ("-1,-1,4", (F(0), F(1, 2), F(5, 2)), F(1, 5)),
        ("1,1,6", (F(0), F(1, 2), F(0)), F(4, 5)),
        ("1,1,6", (F(0), F(1, 2), F(-1)), F(4, 5)),
    }
    tol = mpmath.mpf(10) ** -30
    for shift in ("-1,-1,4", "1,1,6"):
        fams = solve(shift).families
        for want_shift, base, z0 in sorted(displayed):
            if want_shift != shift:
                continue
            fam = next((f for f in fams if f.base == base and f.z0 == z0), None)
            label = f"{shift} base {tuple(map(str, base))}"
            if not c.check(f"{label} found", fam is not None):
                continue
            ev = synthesize(fam, prec=PREC, points=[1, 2, 3])
            checked = [p for p in ev.certification.points if not p.skipped]
            c.check(f"{label} evaluated at t=1,2,3", len(checked) == 3)
            worst = worst_residual(ev.certification)
            c.check(f"{label} residual < 1e-30", ev.certified and worst < tol, mpmath.nstr(worst, 3))
            if shift == "-1,-1,4":
                c.check(f"{label} terminating points exact", all(p.exact for p in checked))
    c.finish()


MUTATIONS = {
    "q-chern": ("poch(a^3*q^3; q^6; inf)", "poch(a^3*q^3; q^5; inf)"),
    "q-eq9": ("poch(q^2; q^3; inf)", "poch(q^2; q^4; inf)"),
    "q-eq10": ("(1 - c*q^(5*k))", "(1 - c*q^(4*k))"),
    "q-cw-cor10": ("poch(q^12; q^12; inf)", "poch(q^12; q^11; inf)"),
    "q-cc21": ("poch(q^2*d/b; q^2; inf)", "poch(q^2*d/b; q^3; inf)"),
    "q-rahman": ("poch(q; q^2; inf)", "poch(q^3; q^2; inf)"),
}


@pytest.mark.xfail(strict=True, reason=(
    "two of the three specialization displays are false as shown (first discrepancy at q^2); "
    "their corrected forms verify and are checked in the same test"))
def test_criterion_7_q_suite(capsys):
    c = Criterion(7, capsys, 30)
    order = 50
    for name in ("q-chern", "q-eq9", "q-eq10"):
        res = Q.verify_builtin(name, order)
        c.check(f"{name} to O(q^50)", res.ok, str(res.discrepancy))
    # the three specialization displays, exactly as shown
    for name in ("q-cw-cor10", "q-cc21-printed", "q-rahman-printed"):
        rec = corpus.load(name)
        res = Q.verify_q_identity(rec.lhs, rec.rhs, order, name=name)
        c.check(f"{name} display to O(q^50)", res.ok, str(res.discrepancy))
    for name in ("q-cc21", "q-rahman"):
        res = Q.verify_builtin(name, order)
        c.check(f"{name} corrected form to O(q^50)", res.ok, str(res.discrepancy))
    for name, (before, after) in MUTATIONS.items():
        lhs, rhs = Q.BUILTIN_IDENTITIES[name]
        res = Q.verify_q_identity(lhs.replace(before, after), rhs.replace(before, after), order, name=name)
        c.check(f"{name} mutation detected", not res.ok and res.discrepancy is not None and res.discrepancy.order < order)
    c.finish()


def test_criterion_8_cm_constants(capsys):
    c = Criterion(8, capsys, 30)
    tol = mpmath.mpf(10) ** -30
    for name in ("cm-64", "cm-43"):
        cert = certify(corpus.load(name), prec=PREC)
        worst = worst_residual(cert)
        c.check(f"{name} matches its series", cert.passed and worst < tol, mpmath.nstr(worst, 3))
    c.check("cm-43 argument is -1/80^3", F(-1, 80 ** 3) == F(-1, 512000))
    c.finish()


def test_criterion_9_property_suites(capsys):
    import test_contiguity
    import test_numerics
    import test_polynomial
    import test_qseries

    c = Criterion(9, capsys, 120)
    suites = [
        ("ring axioms (500)", (test_polynomial.test_ring_associativity_and_distributivity,
                                test_polynomial.test_ring_commutativity_identities_inverses,
                                test_polynomial.test_product_matches_sympy)),
        ("contiguity composition (50)", (test_contiguity.test_composition_consistency,)),
        ("series-oracle matrix (50)", (test_contiguity.test_matrix_against_series_oracle,)),
        ("gamma recurrence (100)", (test_numerics.test_gamma_recurrence,)),
        ("q truncation coherence (20)", (test_qseries.test_truncation_coherence,)),
    ]
    for label, tests in suites:
        try:
            for t in tests:
                t()
            c.check(label, True)
        except Exception as err:  # report the falsifying example, keep going
            c.check(label, False, f"{type(err).__name__}: {err}"[:200])
    c.finish()
