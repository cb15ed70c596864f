import warnings
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from sqrtasym.corpus import catalan_value, central_binomial_value
from sqrtasym.errors import DegenerateWarning, PreconditionError, TruncationError
from sqrtasym.models import RawLocalMap, SqrtPole
from sqrtasym.oracle import default_grid, exact_coeffs, half_value, mode_value, residual_slope
from sqrtasym.series import ExactScalar, RationalFunction, TruncatedSeries, polynomial, to_mpf
from sqrtasym.special import binom_coeff, cn_asymptotic, gamma_eval
from sqrtasym.tauber import (
    binom_polynomial,
    expand_model,
    general_alpha_expansion,
    meromorphic_pipeline,
    pole_expansion,
    sqrt_expansion,
)

HALF = Fraction(1, 2)
INV_SQRT_PI = ExactScalar(Fraction(1), -1)
GRID = default_grid(8, 12)


def slope_ok(model, exp, closed=None):
    vals = {n: closed(n) if closed else mode_value(_modes(model), n) for n in GRID}
    return residual_slope(vals, exp)


def _modes(model):
    from sqrtasym.oracle import model_modes

    return model_modes(model)


def test_identity_observable_is_the_root_coefficient():
    e = sqrt_expansion(polynomial(0, 1), 3)
    assert e.coefficient(Fraction(3, 2)) == INV_SQRT_PI * Fraction(-1, 2)
    assert e.terms == cn_asymptotic(HALF, 3).terms
    assert e.remainder_exponent == Fraction(11, 2)


def test_catalan_constant():
    e = sqrt_expansion(RationalFunction((2,), (1, 1)), 2)
    assert e.leading_exponent == Fraction(3, 2)
    assert e.leading_constant == INV_SQRT_PI
    sr = residual_slope({n: catalan_value(n) for n in GRID}, e)
    assert sr.verdict


def test_cubic_mode_degenerate():
    with pytest.warns(DegenerateWarning):
        e = sqrt_expansion(polynomial(0, 0, 0, 1), 2)
    assert e.coefficient(Fraction(3, 2)) == 0
    assert e.leading_exponent == Fraction(5, 2)
    assert e.leading_constant == ExactScalar(Fraction(3, 4), -1)
    sr = residual_slope({n: binom_coeff(Fraction(3, 2), n) for n in GRID}, e)
    assert sr.verdict


def test_even_modes_do_not_contribute():
    a = sqrt_expansion(polynomial(0, 1), 3)
    b = sqrt_expansion(polynomial(5, 1, 7, 0, -2), 3)
    assert a.terms == b.terms


def test_insufficient_order():
    with pytest.raises(TruncationError):
        sqrt_expansion(TruncatedSeries.from_coeffs([0, 1, 0, 1], 3), 1)
    sqrt_expansion(TruncatedSeries.from_coeffs([0, 1, 0, 1], 4), 1)
    with pytest.raises(PreconditionError):
        sqrt_expansion(polynomial(0, 1), -1)


def test_float_jet_gives_float_constants():
    jet = RationalFunction((2,), (1, 1)).jet(8).to_float()
    e = sqrt_expansion(jet, 2)
    with mpmath.workprec(256):
        assert abs(e.leading_constant - 1 / mpmath.sqrt(mpmath.pi)) < mpmath.mpf(2) ** -240


# --- poles -----------------------------------------------------------------


def test_binom_polynomial():
    assert binom_polynomial(1) == (1,)
    assert binom_polynomial(3) == (1, Fraction(3, 2), Fraction(1, 2))


def test_simple_pole_sign():
    e = pole_expansion((1,), None, 2)
    assert e.leading_exponent == HALF
    assert e.leading_constant == INV_SQRT_PI
    assert any("+D_1/sqrt(pi)" in note for note in e.notes)
    assert residual_slope({n: central_binomial_value(n) for n in GRID}, e).verdict


def test_double_pole_is_exact():
    e = pole_expansion((1, 0), None, 2)
    assert e.is_exact and not e.terms and e.polynomial == (1,)


def test_pole_superposition():
    model = SqrtPole((2,), polynomial(0, 1))
    e = expand_model(model, 2)
    assert e.leading_constant == INV_SQRT_PI * 2
    # -1/8 from the pole family (doubled) and -1/2 from the root mode
    assert e.coefficient(Fraction(3, 2)) == INV_SQRT_PI * Fraction(-3, 4)
    assert slope_ok(model, e).verdict


def test_pole_leading_exponent_termwise():
    # w^-3 = (1-z)^(-3/2): leading n^(1/2)
    e = pole_expansion((1, 0, 0), None, 1)
    assert e.leading_exponent == -HALF
    assert e.leading_constant == INV_SQRT_PI * 2
    vals = {n: binom_coeff(Fraction(-3, 2), n) for n in GRID}
    assert residual_slope(vals, e).verdict


def test_pole_rejects_zero_top():
    with pytest.raises(PreconditionError):
        pole_expansion((0, 1), None, 1)


# --- general exponent ------------------------------------------------------


def test_general_alpha_half_matches_sqrt():
    h = polynomial(1, 2, Fraction(-1, 3), 4, 0, 1, 1, -1)
    for K in range(3):
        assert general_alpha_expansion(h, HALF, Fraction(5, 2) + K).terms == sqrt_expansion(h, K).terms


def test_general_alpha_third():
    e = general_alpha_expansion(polynomial(0, 1), Fraction(1, 3), 4)
    third = Fraction(1, 3)
    with mpmath.workprec(256):
        want = -to_mpf(third) / gamma_eval(Fraction(2, 3))
        assert e.leading_exponent == Fraction(4, 3)
        assert abs(e.leading_constant - want) < mpmath.mpf(2) ** -240
    vals = {n: binom_coeff(third, n) for n in GRID}
    sr = residual_slope(vals, e)
    assert sr.verdict


def test_general_alpha_integer_mode_vanishes():
    e = general_alpha_expansion(polynomial(0, 0, 0, 1), Fraction(1, 3), 6)
    assert not e.terms


def test_general_alpha_order_check():
    with pytest.raises(TruncationError):
        general_alpha_expansion(TruncatedSeries.from_coeffs([0, 1], 1), Fraction(1, 3), 4)


# --- local-map pipelines ----------------------------------------------------


def lam(*cs, order=10):
    return TruncatedSeries.from_coeffs([Fraction(c) for c in cs], order)


def test_pipeline_trivial_map():
    e = expand_model(RawLocalMap(lam(1, 0, -1), lam(0, 1)), 2)
    assert e.leading_constant == INV_SQRT_PI * Fraction(-1, 2)


def test_pipeline_cubic_perturbation():
    model = RawLocalMap(lam(1, 0, -1, 1, order=12), lam(0, 1, order=12))
    e = expand_model(model, 2)
    assert e.leading_constant == INV_SQRT_PI * Fraction(-1, 2)
    assert e.terms != sqrt_expansion(polynomial(0, 1), 2).terms
    assert slope_ok(model, e).verdict


def test_pipeline_degenerate_observable():
    with pytest.warns(DegenerateWarning):
        e = expand_model(RawLocalMap(lam(1, 0, -1), lam(0, 0, 1)), 2)
    assert e.coefficient(Fraction(3, 2)) == 0


def test_meromorphic_simple_pole():
    e = meromorphic_pipeline(RawLocalMap(lam(1, 0, -1), lam(1), pole_order=1), 2)
    assert e.leading_exponent == HALF and e.leading_constant == INV_SQRT_PI


def test_meromorphic_double_pole_gives_ones():
    model = RawLocalMap(lam(1, 0, -1), lam(1), pole_order=2)
    e = meromorphic_pipeline(model, 2)
    assert e.polynomial == (1,) and not e.terms
    assert exact_coeffs(model, 50) == [1] * 51


def test_meromorphic_mixed():
    model = RawLocalMap(lam(1, 0, -1), lam(1, 1), pole_order=1)
    e = meromorphic_pipeline(model, 2)
    assert e.terms == pole_expansion((1,), None, 2).terms
    seq = exact_coeffs(model, 40)
    assert seq[1:] == [central_binomial_value(n) for n in range(1, 41)]


# --- properties ------------------------------------------------------------

coeff = st.fractions(min_value=-9, max_value=9, max_denominator=9)
polys = st.lists(coeff, min_size=2, max_size=9)


def quiet(fn, *a, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateWarning)
        return fn(*a, **kw)


@given(polys, st.integers(0, 2), st.integers(1, 2))
def test_truncation_refinement(cs, K, extra):
    small = quiet(sqrt_expansion, polynomial(*cs), K)
    big = quiet(sqrt_expansion, polynomial(*cs), K + extra)
    assert {e: c for e, c in big.terms.items() if e < small.remainder_exponent} == small.terms


@given(polys, polys, coeff, coeff)
def test_linearity(c1, c2, a, b):
    n = max(len(c1), len(c2))
    p1 = c1 + [0] * (n - len(c1))
    p2 = c2 + [0] * (n - len(c2))
    combo = quiet(sqrt_expansion, polynomial(*[a * x + b * y for x, y in zip(p1, p2)]), 2)
    parts = quiet(sqrt_expansion, polynomial(*p1), 2).scale(a) + quiet(sqrt_expansion, polynomial(*p2), 2).scale(b)
    assert combo.terms == parts.terms


@given(polys)
def test_leading_constant_identity(cs):
    e = quiet(sqrt_expansion, polynomial(*cs), 1)
    assert e.coefficient(Fraction(3, 2)) == ExactScalar(-Fraction(cs[1]) / 2, -1)


def test_root_half_mode_oracle_consistency():
    e = sqrt_expansion(polynomial(0, 1), 4)
    assert residual_slope({n: half_value(n) for n in GRID}, e).verdict
