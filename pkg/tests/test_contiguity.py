from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gammaeval.contiguity import (
    ParamVector,
    ShiftVector,
    decomposition,
    elementary_matrix,
    order2_recurrence,
    shift_matrix,
)
from gammaeval.expr import parse_rational_function as RF
from gammaeval.rational import RationalFunction

shifts = st.tuples(*(st.integers(-1, 1) for _ in range(3))).filter(lambda s: sum(map(abs, s)) <= 2)
param = st.fractions(min_value=Fraction(1, 7), max_value=3, max_denominator=7)
arg = st.fractions(min_value=Fraction(-2, 5), max_value=Fraction(2, 5), max_denominator=9)


def _at(matrix, values):
    return [[e.substitute(values).constant_value() for e in row] for row in matrix.rows()]


def _matmul(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def _values(a, b, c, z):
    return {"a": a, "b": b, "c": c, "z": z}


def _is_pole(values):
    return any(v.denominator == 1 and v <= 0 for v in values)


@settings(max_examples=50)
@given(shifts, shifts, param, param, param, arg)
def test_composition_consistency(s1, s2, a, b, c, z):
    """M(s1 + s2)(beta) == M(s2)(beta + s1) @ M(s1)(beta)."""
    assume(z != 0)
    total = tuple(x + y for x, y in zip(s1, s2))
    moved = (a + s1[0], b + s1[1], c + s1[2])
    assume(not _is_pole((c, moved[2], c + total[2], a, b, moved[0], moved[1])))
    try:
        left = _at(shift_matrix(total), _values(a, b, c, z))
        right = _matmul(_at(shift_matrix(s2), _values(*moved, z)), _at(shift_matrix(s1), _values(a, b, c, z)))
    except ZeroDivisionError:
        assume(False)
    assert left == right


def _hyp(a, b, c, z):
    return mpmath.hyp2f1(a, b, c, z)


def _dhyp(a, b, c, z):
    return a * b / c * mpmath.hyp2f1(a + 1, b + 1, c + 1, z)


@settings(max_examples=50)
@given(shifts, param, param, param, arg)
def test_matrix_against_series_oracle(s, a, b, c, z):
    """(F, F')(beta + s) == M(beta) @ (F, F')(beta), with F from mpmath."""
    assume(z != 0)
    ta, tb, tc = a + s[0], b + s[1], c + s[2]
    assume(not _is_pole((c, tc, c + 1, tc + 1)))
    try:
        M = _at(shift_matrix(s), _values(a, b, c, z))
    except ZeroDivisionError:
        assume(False)
    mpmath.mp.prec = 120
    f, fp = _hyp(a, b, c, z), _dhyp(a, b, c, z)
    want = (_hyp(ta, tb, tc, z), _dhyp(ta, tb, tc, z))
    for row, target in zip(M, want):
        got = mpmath.mpf(row[0].numerator) / row[0].denominator * f + mpmath.mpf(row[1].numerator) / row[1].denominator * fp
        assert abs(got - target) <= mpmath.mpf(10) ** -25 * max(1, abs(target))


def test_elementary_steps_are_inverse():
    for p in "abc":
        up, down = elementary_matrix(p, 1), elementary_matrix(p, -1)
        var = RationalFunction.var(p)
        assert (down.substitute({p: var + 1}) @ up).is_identity()


def test_known_decomposition_a_step():
    dec = decomposition("1,0,0")
    assert dec.R == RF("1") and dec.Q == RF("z/a")


def test_shift_parse_and_bounds():
    assert tuple(ShiftVector.parse("2, 2, 1")) == (2, 2, 1)
    with pytest.raises(ValueError):
        ShiftVector.parse("1,2")
    with pytest.raises(ValueError):
        ShiftVector(9, 0, 0)


def test_admissible_family_collapses_to_first_order():
    family = ParamVector.family((0, Fraction(1, 3), Fraction(5, 6)), "2,2,1")
    rec = order2_recurrence("2,2,1", family, Fraction(-1, 8))
    assert rec.order == 1
    assert rec.ratio() == RF("16/27*(t + 5/6)/(t + 2/3)")


def test_generic_family_gives_second_order():
    family = ParamVector.family((Fraction(1, 2), Fraction(1, 3), Fraction(1, 5)), "1,0,1")
    rec = order2_recurrence("1,0,1", family, Fraction(1, 3))
    assert rec.shifts == (1, 0, -1)
    mpmath.mp.prec = 150
    F = lambda t: mpmath.hyp2f1(*(mpmath.mpf(x.numerator) / x.denominator for x in family.at(Fraction(t))), mpmath.mpf(1) / 3)
    for t in (2, 3, Fraction(5, 2)):
        total = 0
        for p, s in zip(rec.coefficients, rec.shifts):
            v = p.evaluate({"t": Fraction(t)}) if p.variables() else p.constant_value()
            total += mpmath.mpf(v.numerator) / v.denominator * F(Fraction(t) + s)
        assert abs(total) < mpmath.mpf(10) ** -35


def test_family_must_follow_shift():
    family = ParamVector.family((0, 0, 1), "1,1,1")
    with pytest.raises(ValueError):
        order2_recurrence("2,2,1", family)
