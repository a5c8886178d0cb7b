from fractions import Fraction as F

import mpmath
import pytest

from gammaeval.admissibility import ZeroQ, admissibility_polynomial, candidate_z0, solve
from gammaeval.contiguity import decomposition
from gammaeval.expr import parse_polynomial as P
from gammaeval.rational import substitute


def test_221_coefficients_match_hand_expansion():
    poly = admissibility_polynomial("2,2,1")
    want = [
        P("1 + a + b + a*b - 2*c - a*c - b*c + c^2 + z + 2*a*z + a^2*z + 2*b*z + a*b*z + b^2*z - c*z - a*c*z - b*c*z"),
        P("2 + a + b - 2*c + 7*z + 5*a*z + 5*b*z - 4*c*z"),
        P("8*z + 1"),
    ]
    assert list(poly.coefficients) == want


def test_221_families():
    got = {(f.z0, f.base) for f in solve("2,2,1").families}
    assert got == {
        (F(-1, 8), (F(0), F(-1, 3), F(2, 3))),
        (F(-1, 8), (F(0), F(1, 3), F(5, 6))),
    }


@pytest.mark.parametrize("shift", ["2,2,1", "-1,3,2", "-1,-1,4", "1,1,6"])
def test_every_family_kills_q(shift):
    Q = decomposition(shift).Q
    for fam in solve(shift).families:
        p = fam.params()
        assert substitute(Q, {**p.bindings(), "z": fam.z0}).is_zero()


def test_admissibility_against_mpmath_oracle():
    # Q == 0 means F(t+1) = R F(t): the ratio of 2F1 values is rational in t
    fam = next(f for f in solve("-1,3,2").families if f.z0 == F(1, 4) and f.base[1] == 1)
    mpmath.mp.prec = 120
    ratios = []
    for t in (F(1, 3), F(4, 3)):
        vals = [mpmath.hyp2f1(*(mpmath.mpf(x.numerator) / x.denominator for x in fam.params().at(s)), mpmath.mpf(1) / 4)
                for s in (t, t + 1)]
        ratios.append(vals[1] / vals[0])
    R = substitute(decomposition("-1,3,2").R, {**fam.params().bindings(), "z": fam.z0})
    for t, r in zip((F(1, 3), F(4, 3)), ratios):
        want = R.evaluate({"t": t})
        assert abs(r - mpmath.mpf(want.numerator) / want.denominator) < mpmath.mpf(10) ** -30


def test_fifths():
    fifth = solve("-1,-1,4").families
    assert {f.z0 for f in fifth} == {F(1, 5)}
    assert (F(0), F(1, 2), F(3, 2)) in {f.base for f in fifth}
    four = solve("1,1,6").families
    assert {f.z0 for f in four} == {F(4, 5)}
    assert {(F(0), F(1, 2), F(0)), (F(0), F(1, 2), F(-1))} <= {f.base for f in four}


def test_zero_shift_is_degenerate():
    with pytest.raises(ZeroQ):
        admissibility_polynomial("0,0,0")


def test_irrational_branches_are_reported():
    result = solve("1,1,6")
    assert any(u["reason"] == "irrational roots skipped" for u in result.unsolved)


def test_candidate_z0_is_235_smooth():
    cands = candidate_z0(12)
    assert F(-1, 8) in cands and F(1, 4) in cands and F(4, 5) in cands
    for z in cands:
        for n in (z.numerator, z.denominator, (1 - z).numerator, (1 - z).denominator):
            n = abs(n)
            for p in (2, 3, 5):
                while n and n % p == 0:
                    n //= p
            assert n == 1
