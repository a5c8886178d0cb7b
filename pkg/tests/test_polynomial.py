from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gammaeval.expr import parse_polynomial as P
from gammaeval.polynomial import (
    InexactDivision,
    NotUnivariate,
    Polynomial,
    ZeroDenominator,
    gcd,
    lcm,
    resultant,
    squarefree_decomposition,
)

VARS = ("a", "b", "c")
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, max_terms=4, max_deg=3):
    p = Polynomial(0)
    for _ in range(draw(st.integers(0, max_terms))):
        exps = {v: draw(st.integers(0, max_deg)) for v in VARS}
        term = Polynomial(draw(small))
        for v, e in exps.items():
            term = term * Polynomial.var(v, e) if e else term
        p = p + term
    return p


def to_sympy(p):
    return sympy.expand(sympy.sympify(str(p).replace("^", "**")))


# ring axioms: 500 cases in total across the three properties below
@settings(max_examples=200)
@given(polys(), polys(), polys())
def test_ring_associativity_and_distributivity(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@settings(max_examples=150)
@given(polys(), polys())
def test_ring_commutativity_identities_inverses(p, q):
    assert p + q == q + p
    assert p * q == q * p
    assert p + Polynomial(0) == p
    assert p * Polynomial(1) == p
    assert (p - p).is_zero()


@settings(max_examples=150)
@given(polys(max_terms=3, max_deg=2), polys(max_terms=3, max_deg=2))
def test_product_matches_sympy(p, q):
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))


@settings(max_examples=60)
@given(polys(max_terms=3, max_deg=2), polys(max_terms=3, max_deg=2), polys(max_terms=2, max_deg=2))
def test_gcd_recovers_common_factor(p, q, g):
    if g.is_zero() or p.is_zero() or q.is_zero():
        return
    d = gcd(g * p, g * q)
    assert d.divides(g * p) and d.divides(g * q)
    assert g.divides(d)


def test_gcd_against_sympy():
    f = P("(a^2 - b)*(a + 2*c)^2*(b - 1)")
    g = P("(a^2 - b)*(a + 2*c)*(a - c)")
    ours = to_sympy(gcd(f, g))
    ref = sympy.gcd(to_sympy(f), to_sympy(g))
    assert sympy.simplify(ours / ref).is_number


def test_lcm_degree():
    assert lcm(P("a^2 - 1"), P("a + 1")).degree("a") == 2


def test_resultant_known_value():
    assert resultant(P("a^2 - 2"), P("a - b"), "a") == P("b^2 - 2")
    ref = sympy.resultant(sympy.sympify("a**3 - b*a + 1"), sympy.sympify("a**2 + c"), sympy.Symbol("a"))
    assert to_sympy(resultant(P("a^3 - b*a + 1"), P("a^2 + c"), "a")) == sympy.expand(ref)


def test_squarefree_decomposition():
    parts = squarefree_decomposition(P("(a - 1)^2*(a + 3)*(a^2 + 1)^3"), "a")
    got = {m: str(f.monic()) for f, m in parts}
    assert got == {1: "a + 3", 2: "a - 1", 3: "a^2 + 1"}


def test_exact_division_and_errors():
    assert P("a^2 - 1").exquo(P("a - 1")) == P("a + 1")
    with pytest.raises(InexactDivision):
        P("a^2 + 1").exquo(P("a - 1"))
    with pytest.raises((ZeroDenominator, ZeroDivisionError)):
        P("a").exquo(Polynomial(0))


def test_univariate_coefficients_rejects_other_variables():
    with pytest.raises(NotUnivariate):
        P("a*b + 1").univariate_coefficients("a")


def test_substitute_and_shift():
    p = P("a^2 + b")
    assert p.substitute({"a": Fraction(1, 2)}) == P("b + 1/4")
    assert p.shift("a", 1) == P("a^2 + 2*a + 1 + b")
    assert p.evaluate({"a": 2, "b": Fraction(1, 3)}) == Fraction(13, 3)


def test_unknown_variable():
    with pytest.raises(ValueError):
        Polynomial.var("x")
