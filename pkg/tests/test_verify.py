from fractions import Fraction

import mpmath

from sqrtasym.corpus import CORPUS, catalan_value
from sqrtasym.expansion import AsymptoticExpansion
from sqrtasym.models import RawLocalMap, SqrtHolomorphic
from sqrtasym.oracle import default_grid, residual_slope
from sqrtasym.series import ExactScalar, TruncatedSeries, polynomial
from sqrtasym.verify import DECLARED, VerifyConfig, render, verify_model

FAST = VerifyConfig(K=2, grid_hi=11)


def test_catalan_report():
    e = CORPUS["catalan"]
    rep = verify_model(e.model, VerifyConfig(K=3), "catalan", e.closed_form)
    assert rep.passed
    assert set(rep.verdicts) == {"oracle_agreement", "remainder_order", "leading_constant_fit"}
    assert rep.expansion["terms"][0]["coefficient"] == "1·π^{-1/2}"
    assert rep.n_range == [256, 65536]
    assert abs(float(rep.slopes["residual"]["slope"]) + 5.5) < 0.15
    assert rep.declared_not_checked == list(DECLARED)
    rows = rep.csv_rows()
    assert rows[0][0] == 256 and len(rows) == len(default_grid())


def test_report_is_reproducible():
    m = SqrtHolomorphic(polynomial(1, -2, 0, Fraction(1, 3)))
    a = verify_model(m, FAST, "poly").to_json()
    b = verify_model(m, FAST, "poly").to_json()
    assert a == b


def test_exact_polynomial_model_passes_with_note():
    rep = verify_model(CORPUS["geometric"].model, FAST, "geometric")
    assert rep.passed
    assert rep.slopes["residual"]["note"] == "residual identically zero"
    assert all(row["residual"] == "0" for row in rep.residuals["table"])


def test_float_mode_model():
    lam = TruncatedSeries.from_coeffs([1, 0, -1, Fraction(1, 2)], 12).to_float()
    g = TruncatedSeries.from_coeffs([0, 1], 12).to_float()
    rep = verify_model(RawLocalMap(lam, g), FAST, "float")
    assert rep.passed
    assert any("float-mode" in n for n in rep.notes)


def test_scaled_radius_contour():
    rep = verify_model(CORPUS["uniformized-scaled"].model, FAST, "scaled")
    assert rep.verdicts["oracle_agreement"]


def test_interior_pole_report():
    rep = verify_model(CORPUS["interior-pole-double"].model, VerifyConfig(), "ip")
    assert rep.passed and "geometric_remainder" in rep.verdicts
    assert float(rep.slopes["geometric_ratio"]) <= float(Fraction(rep.slopes["geometric_bound"])) + 0.02


def test_wrong_constant_is_caught():
    # Catalan with the n^-5/2 constant perturbed: the residual decays like n^-5/2 only
    wrong = AsymptoticExpansion(
        {Fraction(3, 2): ExactScalar(Fraction(1), -1), Fraction(5, 2): ExactScalar(Fraction(-1), -1)},
        Fraction(7, 2),
    )
    sr = residual_slope({n: catalan_value(n) for n in default_grid()}, wrong)
    assert not sr.verdict
    assert abs(float(sr.slope) + 2.5) < 0.15


def test_render():
    assert render(Fraction(-3, 4)) == "-3/4"
    assert render(None) == "null"
    assert render(ExactScalar(Fraction(1, 2), -1)) == "1/2·π^{-1/2}"
    big = Fraction(3**400, 2**700)
    with mpmath.workprec(256):
        assert float(render(big)) == float(big)


def test_rational_observable_without_closed_form_uses_slow_grid():
    # no closed form and no mode decomposition: reference values come from the exact mode sum
    rep = verify_model(SqrtHolomorphic(CORPUS["catalan"].model.h), VerifyConfig(K=3), "catalan-raw")
    cfg = VerifyConfig()
    assert rep.n_range == [2**cfg.slow_grid_lo, 2**cfg.slow_grid_hi]
    assert rep.passed, rep.verdicts
