from fractions import Fraction

import mpmath
import pytest

from sqrtasym.corpus import catalan_value
from sqrtasym.errors import PreconditionError
from sqrtasym.expansion import AsymptoticExpansion, evaluate_at_index, evaluate_expansion, exact_value
from sqrtasym.series import ExactScalar, RationalFunction, to_mpf
from sqrtasym.tauber import sqrt_expansion


def test_single_term():
    e = AsymptoticExpansion({Fraction(3, 2): Fraction(1)}, Fraction(5, 2))
    assert evaluate_expansion(e, 4) == mpmath.mpf(1) / 8


def test_empty_expansion_is_zero():
    assert evaluate_expansion(AsymptoticExpansion(), 17) == 0


def test_catalan_at_ten_thousand():
    e = sqrt_expansion(RationalFunction((2,), (1, 1)), 2)
    n = 10**4
    with mpmath.workprec(256):
        exact = to_mpf(catalan_value(n))
        assert abs(evaluate_expansion(e, n) - exact) / exact < 1e-6


def test_normalization_sorts_and_drops_zeros():
    e = AsymptoticExpansion({Fraction(5, 2): 3, Fraction(1, 2): 0, Fraction(3, 2): 1}, 4)
    assert e.exponents == (Fraction(3, 2), Fraction(5, 2))
    assert e.leading_exponent == Fraction(3, 2)
    with pytest.raises(PreconditionError):
        AsymptoticExpansion({Fraction(7, 2): 1}, 3)


def test_polynomial_part_and_exact_value():
    # 2^(-n) (n + 1) on the even class
    e = AsymptoticExpansion(polynomial=(1, 1), radius=Fraction(2), period=2, residue=0)
    assert e.is_exact_rational
    assert exact_value(e, 3) == Fraction(4, 64)
    assert exact_value(e, 3, raw=True) == 4
    assert evaluate_at_index(e, 6) == mpmath.mpf(4) / 64
    assert e.leading_exponent == -1 and e.leading_constant == 1


def test_raw_index_outside_class():
    e = AsymptoticExpansion(polynomial=(1,), period=3, residue=1)
    assert evaluate_at_index(e, 4) == 1
    with pytest.raises(PreconditionError):
        evaluate_at_index(e, 5)
    with pytest.raises(PreconditionError):
        evaluate_expansion(e, 0)


def test_sum_and_scale():
    a = AsymptoticExpansion({Fraction(3, 2): ExactScalar(Fraction(1), -1)}, Fraction(5, 2))
    b = AsymptoticExpansion(
        {Fraction(3, 2): ExactScalar(Fraction(2), -1), Fraction(5, 2): ExactScalar(Fraction(1), -1)}, Fraction(7, 2)
    )
    s = a + b
    assert s.remainder_exponent == Fraction(5, 2)
    assert s.terms == {Fraction(3, 2): ExactScalar(Fraction(3), -1)}
    assert a.scale(Fraction(-2)).coefficient(Fraction(3, 2)) == ExactScalar(Fraction(-2), -1)
    with pytest.raises(PreconditionError):
        a + a.replace(period=2)


def test_truncated():
    e = sqrt_expansion(RationalFunction((2,), (1, 1)), 3)
    t = e.truncated(Fraction(7, 2))
    assert t.exponents == (Fraction(3, 2), Fraction(5, 2))
    with pytest.raises(PreconditionError):
        e.truncated(10)
