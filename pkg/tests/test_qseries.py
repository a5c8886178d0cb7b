from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammaeval import expr as ex
from gammaeval import qseries as Q

ORACLE_ORDER = 16


class Trunc:
    """Dense power series in q with Fraction coefficients, truncated at ORACLE_ORDER."""

    def __init__(self, coeffs):
        self.c = (list(coeffs) + [F(0)] * ORACLE_ORDER)[:ORACLE_ORDER]

    @classmethod
    def mono(cls, coef, power):
        c = [F(0)] * ORACLE_ORDER
        if power < ORACLE_ORDER:
            c[power] = F(coef)
        return cls(c)

    def __add__(self, o):
        return Trunc([x + y for x, y in zip(self.c, o.c)])

    def __mul__(self, o):
        out = [F(0)] * ORACLE_ORDER
        for i, x in enumerate(self.c):
            if x:
                for j in range(ORACLE_ORDER - i):
                    out[i + j] += x * o.c[j]
        return Trunc(out)

    def inverse(self):
        assert self.c[0] != 0
        out = [F(0)] * ORACLE_ORDER
        out[0] = 1 / self.c[0]
        for n in range(1, ORACLE_ORDER):
            out[n] = -sum(self.c[i] * out[n - i] for i in range(1, n + 1)) / self.c[0]
        return Trunc(out)


ONE = Trunc.mono(1, 0)


def poch(coef, power, step, n):
    """prod_{j<n} (1 - coef * q^(power + j*step)) with power + j*step >= 0."""
    out = ONE
    for j in range(n):
        out = out * (ONE + Trunc.mono(-F(coef), power + j * step)) if power + j * step < ORACLE_ORDER else out
    return out


def ours(text, env, kind):
    e = ex.parse(text)
    s = Q.qsum(e, ORACLE_ORDER) if kind == "sum" else Q.qproduct(e, ORACLE_ORDER)
    return [d.get((0, 0, 0, 0), 0) for d in s.specialize(env).coeffs]


def chern_sum(a):
    total = Trunc([])
    for k in range(ORACLE_ORDER + 2):
        # (q^2/a; q^2)_k carries no negative q-powers
        num = poch(1 / a, 2, 2, k) * poch(a, 0, 1, k)
        den = poch(1, 3, 3, k) * poch(a * a, 1, 2, k)
        total = total + num * den.inverse() * Trunc.mono((-1) ** k * a ** k, k * (k + 1) // 2)
    return total.c


def chern_product(a):
    n = ORACLE_ORDER
    num = poch(a, 1, 2, n) * poch(a ** 3, 3, 6, n)
    den = poch(a * a, 1, 2, n) * poch(1, 3, 6, n)
    return (num * den.inverse()).c


def rahman_sum(b, d):
    total = Trunc([])
    for k in range(ORACLE_ORDER + 2):
        num = poch(b, 0, 1, k) * poch(d, 0, 1, k)
        den = poch(1, 1, 1, k) * poch(b * d, 1, 2, k)
        total = total + num * den.inverse() * Trunc.mono(1, k * (k + 1) // 2)
    return total.c


@pytest.mark.parametrize("a", [F(1, 3), F(-2)])
def test_chern_sides_against_dense_oracle(a):
    lhs, rhs = Q.BUILTIN_IDENTITIES["q-chern"]
    assert ours(lhs, {"a": a}, "sum") == chern_sum(a)
    assert ours(rhs, {"a": a}, "product") == chern_product(a)


def test_rahman_sum_against_dense_oracle():
    lhs, _ = Q.BUILTIN_IDENTITIES["q-rahman"]
    assert ours(lhs, {"b": F(1, 2), "d": F(3)}, "sum") == rahman_sum(F(1, 2), F(3))


def test_euler_pentagonal():
    s = Q.qproduct(ex.parse("poch(q; q; inf)"), 30)
    pent = {k * (3 * k - 1) // 2: (-1) ** k for k in range(-5, 6)}
    assert [s.coefficient(n).get((0, 0, 0, 0), 0) for n in range(30)] == [pent.get(n, 0) for n in range(30)]


@pytest.mark.parametrize("name", sorted(Q.BUILTIN_IDENTITIES))
def test_builtin_identities_symbolic(name):
    result = Q.verify_builtin(name, order=30)
    assert result.ok, result.report()


@pytest.mark.parametrize("name,before,after", [
    ("q-chern", "poch(a^3*q^3; q^6; inf)", "poch(a^3*q^3; q^5; inf)"),
    ("q-eq9", "poch(q^2; q^3; inf)", "poch(q^2; q^4; inf)"),
    ("q-eq10", "(1 - c*q^(5*k))", "(1 - c*q^(4*k))"),
    ("q-cw-cor10", "poch(q^12; q^12; inf)", "poch(q^12; q^11; inf)"),
    ("q-cc21", "poch(q^2*d/b; q^2; inf)", "poch(q^2*d/b; q^3; inf)"),
    ("q-rahman", "poch(q; q^2; inf)", "poch(q^3; q^2; inf)"),
])
def test_mutations_are_caught(name, before, after):
    lhs, rhs = Q.BUILTIN_IDENTITIES[name]
    assert before in lhs or before in rhs
    lhs, rhs = lhs.replace(before, after), rhs.replace(before, after)
    result = Q.verify_q_identity(lhs, rhs, 30, name=name)
    assert not result.ok
    assert 0 < result.discrepancy.order < 30
    assert result.status == "failed"


@pytest.mark.parametrize("rhs", [
    "poch(q*b*d; q^2; inf)*poch(q^2*b/d; q^2; inf)/poch(q*d; q; inf)",
    "poch(q*b; q^2; inf)*poch(q*d; q^2; inf)/(poch(q; q; inf)*poch(q*b*d; q; inf))",
])
def test_wrong_products_fail_at_q2(rhs):
    lhs = Q.BUILTIN_IDENTITIES["q-cc21" if "q^2*b/d" in rhs else "q-rahman"][0]
    result = Q.verify_q_identity(lhs, rhs, 20)
    assert not result.ok and result.discrepancy.order == 2


def test_eq10_reduces_to_chern_at_c0():
    eq10 = Q.qsum(ex.parse(Q.BUILTIN_IDENTITIES["q-eq10"][0]), 30).specialize({"c": F(0)})
    chern = Q.qsum(ex.parse(Q.BUILTIN_IDENTITIES["q-chern"][0]), 30)
    assert eq10 == chern


CHERN = Q.BUILTIN_IDENTITIES["q-chern"][0]


def test_telescoping_relation_in_squared_variable():
    squared = ex.to_text(ex.substitute(ex.parse(CHERN), {"a": ex.parse("a^2")}))
    defect = Q.telescoping_defect(squared, 30, "a*q", "(1 - a^2*q)*(1 - a^6*q^3)", "(1 - a^4*q)*(1 - a^4*q^3)")
    assert defect.is_zero()
    same = Q.telescoping_defect(CHERN, 30, "a*q^2", "(1 - a*q)*(1 - a^3*q^3)", "(1 - a^2*q)*(1 - a^2*q^3)")
    assert same.is_zero()


def test_literal_telescoping_reading_does_not_vanish():
    defect = Q.telescoping_defect(CHERN, 12, "a*q", "(1 - a^2*q)*(1 - a^6*q^3)", "(1 - a^4*q)*(1 - a^4*q^3)")
    assert defect.valuation() == 1


def test_errors():
    with pytest.raises(Q.NonTruncatable):
        Q.qproduct(ex.parse("poch(a; 1; inf)"), 10)
    with pytest.raises(Q.NonTerminatingOrder):
        Q.qsum(ex.parse("a^k"), 10)
    with pytest.raises((Q.QSyntaxError, ex.ParseError)):
        Q.qproduct(ex.parse("poch(q; q)"), 10)


def test_record_round_trip_and_json():
    res = Q.verify_builtin("q-rahman", order=20)
    data = res.to_json()
    assert data["status"] == "exact" and data["order"] == 20
    assert Q.certify_q_record(Q.builtin_record("q-rahman", 20)).ok


def test_specialized_verification():
    assert Q.verify_builtin("q-cc21", order=20, env={"b": F(1, 3)}).ok


summands = st.sampled_from([v[0] for v in Q.BUILTIN_IDENTITIES.values()])


@settings(max_examples=20)
@given(summands, st.integers(4, 20), st.integers(1, 12))
def test_truncation_coherence(summand, big, drop):
    small = max(1, big - drop)
    e = ex.parse(summand)
    assert Q.qsum(e, big).truncate(small) == Q.qsum(e, small)


def test_series_arithmetic():
    one = Q.QSeries.one(10)
    x = Q.qproduct(ex.parse("1/(1 - q)"), 10)
    y = Q.qproduct(ex.parse("1 - q"), 10)
    assert x * y == one
    assert (x - x).is_zero() and (x + y).valuation() == 0
    assert str(y) == "1 - q + O(q^10)"
