import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from sqrtasym.errors import PreconditionError
from sqrtasym.expansion import AsymptoticExpansion
from sqrtasym.oracle import default_grid, richardson_fit
from sqrtasym.series import ExactScalar, TruncatedSeries, series_exp, series_log, to_mpf
from sqrtasym.special import (
    FiniteSupport,
    binom_coeff,
    cn_asymptotic,
    e_table,
    gamma_eval,
    gamma_exact,
    gen_bernoulli,
    gen_bernoulli_table,
    laplace_constants,
    root_constant,
    tricomi_erdelyi_e,
)

HALF = Fraction(1, 2)
small_q = st.fractions(min_value=-4, max_value=4, max_denominator=12)


def test_binom_coeff_examples():
    assert [binom_coeff(HALF, n) for n in (1, 2, 3)] == [Fraction(-1, 2), Fraction(-1, 8), Fraction(-1, 16)]
    assert all(binom_coeff(-HALF, n) == Fraction(math.comb(2 * n, n), 4**n) for n in range(20))
    assert binom_coeff(-HALF, 2) == Fraction(3, 8)
    assert binom_coeff(Fraction(7, 3), 0) == 1


@given(small_q, st.integers(1, 40))
def test_binom_coeff_recurrence(beta, n):
    assert binom_coeff(beta, n) == binom_coeff(beta, n - 1) * (n - 1 - beta) / n


def test_gen_bernoulli_examples():
    assert gen_bernoulli(0, Fraction(5, 3), Fraction(-2, 7)) == 1
    beta, z = Fraction(3, 4), Fraction(2, 5)
    assert gen_bernoulli(1, beta, z) == z - beta / 2
    assert gen_bernoulli(1, 1, 0) == Fraction(-1, 2)
    # classical Bernoulli numbers
    assert gen_bernoulli_table(6, 1, 0) == (1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42))


@given(small_q, small_q, st.integers(0, 8))
def test_gen_bernoulli_defining_identity(beta, z, L):
    # sum_l t^l/l! B_l(z) = (t/(e^t-1))^beta e^(zt), built from log/exp independently
    lhs = [b / math.factorial(l) for l, b in enumerate(gen_bernoulli_table(L, beta, z))]
    # log(t/(e^t-1)) = -log(sum t^k/(k+1)!)
    base = TruncatedSeries.from_coeffs([Fraction(1, math.factorial(k + 1)) for k in range(L + 1)])
    log_part = series_log(base).scale(-beta) + TruncatedSeries.from_coeffs([0, z], L)
    assert list(series_exp(log_part).coeffs) == lhs


def test_tricomi_erdelyi_exact_identities():
    assert all(tricomi_erdelyi_e(0, 1, l) == 0 for l in range(1, 9))
    assert all(tricomi_erdelyi_e(1, 0, l) == 0 for l in range(1, 9))
    # Gamma(n+1)/Gamma(n+2) = 1/(n+1) = n^-1 sum (-1)^l n^-l: the family never vanishes here
    assert [tricomi_erdelyi_e(1, 2, l) for l in range(6)] == [(-1) ** l for l in range(6)]
    assert tricomi_erdelyi_e(HALF, 1, 0) == 1
    assert tricomi_erdelyi_e(HALF, 1, 1) == Fraction(-1, 8)


@pytest.mark.parametrize("twice_a", [1, -1, 3, -3, 5])
def test_tricomi_erdelyi_against_gamma_ratio_fit(twice_a):
    a = Fraction(twice_a, 2)
    prec = 600
    with mpmath.workprec(prec):
        ma = mpmath.mpf(twice_a) / 2
        vals = {
            n: mpmath.exp(mpmath.loggamma(n + ma) - mpmath.loggamma(n + 1)) * mpmath.power(n, 1 - ma)
            for n in default_grid()
        }
        fit = richardson_fit(vals, list(range(16)), 14, prec)
        table = e_table(a, 1, 6)
        for l in range(1, 7):
            want = to_mpf(table[l], prec)
            assert abs(fit.constants[l] - want) <= mpmath.mpf(10) ** -10 * abs(want)


def test_e_table_shape():
    t = e_table(Fraction(3, 2), 1, 4)
    assert t.L == 4 and t[0] == 1 and t.beta == Fraction(3, 2)


def test_laplace_constants():
    assert laplace_constants(4) == (Fraction(1, 12), Fraction(1, 288), Fraction(-139, 51840), Fraction(-571, 2488320))
    assert laplace_constants(0) == ()
    assert laplace_constants(2) == laplace_constants(6)[:2]


def test_gamma_values():
    with mpmath.workprec(256):
        assert abs(gamma_eval(HALF) - mpmath.sqrt(mpmath.pi)) < mpmath.mpf(2) ** -248
        assert gamma_eval(5) == 24
        assert abs(gamma_eval(-HALF) + 2 * mpmath.sqrt(mpmath.pi)) < mpmath.mpf(2) ** -245
        assert abs(gamma_eval(Fraction(1, 3)) - mpmath.gamma(mpmath.mpf(1) / 3)) < mpmath.mpf(2) ** -248
    assert gamma_exact(-HALF) == ExactScalar(Fraction(-2), 1)
    assert gamma_exact(Fraction(5, 2)) == ExactScalar(Fraction(3, 4), 1)
    assert gamma_exact(5) == 24
    with pytest.raises(PreconditionError):
        gamma_eval(-2)
    with pytest.raises(PreconditionError):
        gamma_exact(0)


def test_root_constant():
    assert root_constant(HALF) == ExactScalar(Fraction(-1, 2), -1)
    assert root_constant(-HALF) == ExactScalar(Fraction(1), -1)
    assert root_constant(2) == 0
    with mpmath.workprec(256):
        third = Fraction(1, 3)
        assert abs(root_constant(third) + mpmath.mpf(1) / 3 / mpmath.gamma(mpmath.mpf(2) / 3)) < mpmath.mpf(2) ** -240


def test_cn_asymptotic_examples():
    e = cn_asymptotic(HALF, 2)
    assert isinstance(e, AsymptoticExpansion)
    assert e.leading_exponent == Fraction(3, 2)
    assert e.coefficient(Fraction(3, 2)) == ExactScalar(Fraction(-1, 2), -1)
    assert e.remainder_exponent == Fraction(9, 2)
    m = cn_asymptotic(-HALF, 1)
    assert m.leading_exponent == HALF and m.coefficient(HALF) == ExactScalar(Fraction(1), -1)
    fs = cn_asymptotic(2, 3)
    assert isinstance(fs, FiniteSupport) and fs.coeffs == (1, -2, 1)


def test_cn_asymptotic_negative_integer_is_exact_polynomial():
    # (1-z)^-3: binom(n+2, 2) = n^2/2 + 3n/2 + 1
    e = cn_asymptotic(-3, 2)
    assert e.remainder_exponent is None
    assert [e.coefficient(x) for x in (-2, -1, 0)] == [Fraction(1, 2), Fraction(3, 2), 1]


def test_cn_asymptotic_float_for_general_beta():
    e = cn_asymptotic(Fraction(1, 3), 1)
    c = e.coefficient(Fraction(4, 3))
    assert isinstance(c, mpmath.mpf)
