"""Cross-check an expansion against independent oracles and record the outcome."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from .equivariant import check_vanishing, expand
from .errors import PreconditionError
from .expansion import AsymptoticExpansion, evaluate_expansion, exact_value
from .models import EquivariantEnvelope, InteriorPole, RawLocalMap, SqrtHolomorphic, SqrtPole
from .oracle import (
    coefficient_at,
    default_grid,
    exact_coeffs,
    geometric_ratio,
    model_function,
    model_modes,
    numeric_coeffs,
    residual_slope,
    richardson_fit,
)
from .series import DEFAULT_PRECISION, ExactScalar, to_mpf

DECLARED = (
    "g extends analytically to a disk beyond the singular orbit (not checkable from jets)",
    "no other singularity lies on the circle of convergence",
)
RENDER_EXACT_BITS = 256


@dataclass(frozen=True)
class VerifyConfig:
    """Knobs of :func:`verify_model`."""

    K: int = 2
    oracle_nmax: int = 100
    samples: int = 4096
    rho: Fraction = Fraction(1, 2)  # relative to the radius of convergence
    rel_tol: float = 1e-12
    grid_lo: int = 8
    grid_hi: int = 16
    slow_grid_lo: int = 5  # used when reference values need an exact mode sum
    slow_grid_hi: int = 9
    slope_tol: float = 0.15
    fit_digits: int = 8
    geometric_nmax: int = 400
    ratio_margin: float = 0.02
    prec: int = DEFAULT_PRECISION


def render(x) -> str:
    """Bit-stable string form of a scalar."""
    if x is None:
        return "null"
    if isinstance(x, Fraction):
        if max(abs(x.numerator), x.denominator).bit_length() > RENDER_EXACT_BITS:
            # huge oracle values: a decimal is readable and still deterministic
            with mpmath.workprec(DEFAULT_PRECISION):
                return mpmath.nstr(to_mpf(x, DEFAULT_PRECISION), 25, min_fixed=-5, max_fixed=5)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, ExactScalar):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return mpmath.nstr(x, 25, min_fixed=-5, max_fixed=5)


def expansion_table(exp: AsymptoticExpansion, prec: int | None = None) -> dict:
    """Serializable description of an expansion (exact strings plus decimals)."""
    prec = prec or DEFAULT_PRECISION
    with mpmath.workprec(prec):
        terms = [
            {"exponent": render(e), "coefficient": render(c), "decimal": mpmath.nstr(to_mpf(c, prec), 20)}
            for e, c in exp.terms.items()
        ]
    return {
        "radius": render(exp.radius),
        "period": exp.period,
        "residue": exp.residue,
        "polynomial": [render(c) for c in exp.polynomial],
        "terms": terms,
        "remainder_exponent": render(exp.remainder_exponent),
        "remainder_radius": render(exp.remainder_radius),
        "notes": list(exp.notes),
    }


@dataclass
class VerificationReport:
    model_id: str
    n_range: list
    expansion: dict
    residuals: dict = field(default_factory=dict)
    fitted: dict = field(default_factory=dict)
    slopes: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    declared_not_checked: list = field(default_factory=lambda: list(DECLARED))
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def csv_rows(self) -> list:
        return [(row["index"], row["exact"], row["predicted"], row["residual"]) for row in self.residuals.get("table", [])]

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)


def _raw_residual(value, exp: AsymptoticExpansion, n: int, prec: int):
    if isinstance(value, Fraction) and exp.is_exact_rational:
        return value - exact_value(exp, n)
    with mpmath.workprec(prec):
        return to_mpf(value, prec) - evaluate_expansion(exp, n, prec=prec)


def _is_periodic(model) -> tuple:
    if isinstance(model, (EquivariantEnvelope, InteriorPole)):
        return model.d, model.r
    return 1, 0


def _fast(model, closed_form) -> bool:
    if closed_form is not None:
        return True
    if isinstance(model, EquivariantEnvelope):
        return _fast(model.inner, None)
    if isinstance(model, (SqrtHolomorphic, SqrtPole, RawLocalMap)):
        return model_modes(model) is not None
    return False


def oracle_agreement(model, cfg: VerifyConfig, radius=Fraction(1)) -> tuple:
    """Max relative gap between reference and numeric coefficients for ``n <= oracle_nmax``.

    The reference is exact for exact-mode models and a high-precision mode sum
    for float-mode models.  The contour is ``|z| = rho * radius`` so that the
    rounding floor stays below coefficients decaying like ``radius^-n``.
    """
    N = cfg.oracle_nmax
    if getattr(model, "exact", False):
        ref = exact_coeffs(model, N)
    else:
        ref = [coefficient_at(model, n, cfg.prec, exact=False) for n in range(N + 1)]
    if isinstance(radius, (int, Fraction)):
        rho = Fraction(cfg.rho) * radius
    else:
        rho = to_mpf(cfg.rho, cfg.prec) * radius
    num = numeric_coeffs(model_function(model, cfg.prec), rho, N, cfg.samples, cfg.prec)
    with mpmath.workprec(cfg.prec):
        scale = max(abs(to_mpf(a, cfg.prec)) for a in ref)
        worst = mpmath.mpf(0)
        for a, b in zip(ref, num):
            ea = to_mpf(a, cfg.prec)
            # vanishing coefficients are compared against the sequence scale
            denom = abs(ea) if a != 0 else scale
            worst = max(worst, abs(b - ea) / denom)
    return ref, worst


def verify_model(
    model,
    cfg: VerifyConfig = VerifyConfig(),
    name: str = "model",
    closed_form: Callable | None = None,
) -> VerificationReport:
    exp = expand(model, cfg.K, prec=cfg.prec)
    d, r = _is_periodic(model)
    report = VerificationReport(model_id=name, n_range=[], expansion=expansion_table(exp, cfg.prec))

    if not getattr(model, "exact", False):
        if isinstance(model, InteriorPole):
            raise PreconditionError("interior-pole models are verified in exact mode only")
        report.notes.append("float-mode model: reference values are a mode sum at working precision")
    ref, worst = oracle_agreement(model, cfg, exp.radius)
    report.residuals["oracle_max_relative_gap"] = render(worst)
    report.verdicts["oracle_agreement"] = bool(worst <= cfg.rel_tol)
    if d > 1:
        report.verdicts["off_class_vanishing"] = check_vanishing(ref, d, r)

    if isinstance(model, InteriorPole):
        coeffs = exact_coeffs(model, cfg.geometric_nmax)
        ratio, res = geometric_ratio(coeffs, exp, prec=cfg.prec)
        report.n_range = [0, cfg.geometric_nmax]
        report.residuals["table"] = [
            {
                "n": (m - r) // d,
                "index": m,
                "exact": render(coeffs[m]),
                "predicted": render(evaluate_expansion(exp, (m - r) // d, prec=cfg.prec)),
                "residual": render(_raw_residual(coeffs[m], exp, (m - r) // d, cfg.prec)),
            }
            for m in sorted(res)
        ]
        report.slopes["geometric_ratio"] = render(ratio)
        if model.rest is None:
            report.verdicts["exact_pole_part"] = all(v == 0 for v in res.values())
        else:
            bound = model.Rprime / model.R
            report.slopes["geometric_bound"] = render(bound)
            report.verdicts["geometric_remainder"] = bool(ratio <= float(bound) + cfg.ratio_margin)
        return report

    if _fast(model, closed_form):
        grid = default_grid(cfg.grid_lo, cfg.grid_hi)
    else:
        grid = default_grid(cfg.slow_grid_lo, cfg.slow_grid_hi)
    values = {
        n: coefficient_at(model, d * n + r, cfg.prec, closed_form, exact=exp.is_exact_rational) for n in grid
    }
    report.n_range = [grid[0], grid[-1]]
    sr = residual_slope(values, exp, cfg.slope_tol, cfg.prec)
    rows = []
    for n, res in zip(sorted(values), sr.residuals):
        rows.append(
            {
                "n": n,
                "index": d * n + r,
                "exact": render(values[n]),
                "predicted": render(evaluate_expansion(exp, n, prec=cfg.prec)),
                "residual": render(_raw_residual(values[n], exp, n, cfg.prec)),
            }
        )
    report.residuals["table"] = rows
    report.slopes["residual"] = {"slope": render(sr.slope), "target": render(sr.target), "note": sr.note}
    report.verdicts["remainder_order"] = sr.verdict

    if exp.terms and not exp.polynomial and exp.remainder_exponent is not None:
        _fit_leading(report, exp, values, cfg)
    return report


def _fit_leading(report, exp, values, cfg):
    d = exp.period
    rem = exp.remainder_exponent
    exps = list(exp.terms)
    den = math.lcm(*(e.denominator for e in exps + [rem]))
    exps += [rem + Fraction(i, den) for i in range(3)]
    with mpmath.workprec(cfg.prec):
        bracket = {}
        for n, v in values.items():
            scaled = to_mpf(v, cfg.prec)
            if exp.radius != 1:
                scaled *= mpmath.power(to_mpf(exp.radius, cfg.prec), d * n)
            bracket[n] = scaled
        L = min(len(exps), len(bracket) - 2)
        fit = richardson_fit(bracket, exps, L, cfg.prec)
        lead = exps[0]
        want = to_mpf(exp.coefficient(lead), cfg.prec)
        got = fit.constants[0]
        rel = abs(got - want) / abs(want)
    report.fitted = {
        "exponent": render(lead),
        "engine": render(exp.coefficient(lead)),
        "fitted": render(got),
        "uncertainty": render(fit.uncertainties[0]),
    }
    report.verdicts["leading_constant_fit"] = bool(rel <= 10 ** (-cfg.fit_digits))
