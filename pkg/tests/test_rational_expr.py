from fractions import Fraction

import pytest

from gammaeval import expr as ex
from gammaeval.expr import ParseError, parse, parse_rational_function as RF, to_text
from gammaeval.polynomial import ZeroDenominator
from gammaeval.rational import RationalFunction, factor_linear, recompose_linear


def test_normal_form_cancels_common_factors():
    f = RF("(a^2 - 1)/(a - 1)")
    assert f.is_polynomial()
    assert f == RF("a + 1")


def test_field_operations():
    f, g = RF("(t + 1)/(t + 2)"), RF("t/(t + 2)")
    assert f - g == RF("1/(t + 2)")
    assert f * f.inverse() == RationalFunction.const(1)
    assert (f / g) == RF("(t + 1)/t")


def test_shift_diff_substitute():
    assert RF("1/(t + 1)").shift("t", 1) == RF("1/(t + 2)")
    assert RF("a/b").diff("a") == RF("1/b")
    assert RF("(a + b)/(a - b)").substitute({"b": Fraction(1)}) == RF("(a + 1)/(a - 1)")


def test_zero_denominator():
    with pytest.raises(ZeroDenominator):
        RF("1/0")


def test_factor_linear_round_trip():
    ratio = RF("16/27*(t + 5/6)/(t + 2/3)")
    R0, alphas, deltas = factor_linear(ratio, "t")
    assert (R0, alphas, deltas) == (Fraction(16, 27), [Fraction(5, 6)], [Fraction(2, 3)])
    assert recompose_linear(R0, alphas, deltas, "t") == ratio


def test_parser_implicit_multiplication_and_printing():
    e = parse("hyper([2t, 2t+1/3], [t+5/6], -1/8)")
    assert to_text(e) == "hyper([2*t, 2*t + 1/3], [t + 5/6], -1/8)"
    assert parse(to_text(e)) == e


def test_parser_rejects_garbage():
    for bad in ("gamma(", "1 +", "foo(t)", "x + 1"):
        with pytest.raises(ParseError):
            parse(bad)


def test_substitute_and_free_symbols():
    e = parse("gamma(t + 1/2)*(16/27)^t")
    assert ex.free_symbols(e) == {"t"}
    assert ex.free_symbols(ex.substitute(e, {"t": ex.num(Fraction(1, 2))})) == set()


def test_parse_rational():
    assert ex.parse_rational("-3/4") == Fraction(-3, 4)
