from fractions import Fraction as F

import mpmath
import pytest

from gammaeval.admissibility import solve
from gammaeval.gamma_synthesis import (
    ClausenShapeMismatch,
    clausen_series_check,
    clausen_square,
    functional_ratio,
    synthesize,
)
from gammaeval.numerics import certify
from gammaeval.expr import parse_rational_function as RF


def _family(shift, base):
    return next(f for f in solve(shift).families if f.base == base)


def test_221_form():
    ev = synthesize(_family("2,2,1", (F(0), F(1, 3), F(5, 6))))
    assert ev.form.R0 == F(16, 27)
    assert ev.form.alphas == (F(5, 6),) and ev.form.deltas == (F(2, 3),)
    assert ev.certified


def test_221_against_mpmath():
    ev = synthesize(_family("2,2,1", (F(0), F(1, 3), F(5, 6))))
    mpmath.mp.prec = 200
    for t in (mpmath.mpf(1) / 3, mpmath.mpf(5) / 2):
        lhs = mpmath.hyp2f1(2 * t, 2 * t + mpmath.mpf(1) / 3, t + mpmath.mpf(5) / 6, -mpmath.mpf(1) / 8)
        rhs = (mpmath.mpf(16) / 27) ** t * mpmath.gamma(t + mpmath.mpf(5) / 6) * mpmath.gamma(mpmath.mpf(2) / 3) / (
            mpmath.gamma(t + mpmath.mpf(2) / 3) * mpmath.gamma(mpmath.mpf(5) / 6))
        assert abs(lhs - rhs) < mpmath.mpf(10) ** -50


def test_functional_ratio_of_second_221_family():
    assert functional_ratio(_family("2,2,1", (F(0), F(-1, 3), F(2, 3)))).is_constant() is False


def test_clausen_square_certifies():
    fam = next(f for f in solve("-1,3,2").families if f.z0 == F(1, 4) and f.base[1] == 1)
    sq = clausen_square(synthesize(fam))
    assert certify(sq, points=[0, F(1, 4), F(1, 2), 1], prec=200).passed


def test_clausen_shape_mismatch():
    with pytest.raises(ClausenShapeMismatch):
        clausen_square(synthesize(_family("2,2,1", (F(0), F(1, 3), F(5, 6)))))


@pytest.mark.parametrize("a,b", [(F(1, 4), F(1, 4)), (F(1, 3), F(-2, 5)), (F(-3), F(7, 2))])
def test_clausen_series_identity(a, b):
    assert clausen_series_check(a, b, order=25)


def test_mutated_form_fails():
    ev = synthesize(_family("2,2,1", (F(0), F(1, 3), F(5, 6))))
    rec = ev.record
    from gammaeval import expr as ex
    bad = rec.__class__(rec.kind, rec.lhs, ex.parse(ex.to_text(rec.rhs).replace("16/27", "17/27")), rec.params)
    assert not certify(bad, prec=200).passed
