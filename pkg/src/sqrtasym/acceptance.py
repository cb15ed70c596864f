"""The ten acceptance checks, runnable from tests, scripts and the CLI."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .corpus import CORPUS, catalan_value, central_binomial_value
from .equivariant import check_vanishing, interior_pole_expansion
from .expansion import evaluate_expansion, exact_value
from .models import EquivariantEnvelope, InteriorPole, SqrtHolomorphic, SqrtPole
from .oracle import (
    _interior_pole_coeffs,
    default_grid,
    exact_coeffs,
    geometric_ratio,
    residual_slope,
    richardson_fit,
)
from .series import DEFAULT_PRECISION, ExactScalar, RationalFunction, TruncatedSeries, polynomial, series_compose, to_mpf
from .special import _bernoulli_jet, _e_entries, cn_asymptotic, laplace_constants, tricomi_erdelyi_e
from .tauber import pole_expansion, sqrt_expansion
from .uniformization import LocalMapData, uniformize
from .verify import VerifyConfig, verify_model

PI_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.title}: {self.detail} ({self.seconds:.2f} s)"


def _timed(number: int, title: str, fn: Callable[[], tuple]) -> CriterionResult:
    t0 = time.perf_counter()
    ok, detail = fn()
    return CriterionResult(number, title, bool(ok), detail, time.perf_counter() - t0)


def laplace() -> tuple:
    _bernoulli_jet.cache_clear()
    t0 = time.perf_counter()
    got = laplace_constants(4)
    dt = time.perf_counter() - t0
    want = (Fraction(1, 12), Fraction(1, 288), Fraction(-139, 51840), Fraction(-571, 2488320))
    return got == want and dt < 1.0, f"c_1..c_4 = {', '.join(map(str, got))}; {dt * 1e3:.1f} ms"


def gamma_ratio(prec: int = DEFAULT_PRECISION) -> tuple:
    _e_entries.cache_clear()
    zeros = all(tricomi_erdelyi_e(0, 1, l) == 0 for l in range(1, 7))
    e1 = tricomi_erdelyi_e(PI_HALF, 1, 1)
    with mpmath.workprec(prec):
        # Gamma(n+1/2)/Gamma(n+1) * n^(1/2) = sqrt(pi n) binom(2n, n) / 4^n
        sp = mpmath.sqrt(mpmath.pi)
        vals = {n: to_mpf(central_binomial_value(n), prec) * sp * mpmath.sqrt(n) for n in default_grid()}
        fit = richardson_fit(vals, list(range(12)), 10, prec)
        rel = abs(fit.constants[1] - to_mpf(e1, prec)) / abs(to_mpf(e1, prec))
    ok = zeros and rel < mpmath.mpf(10) ** -10
    return ok, f"e_l(0,1)=0 for l<=6: {zeros}; e_1(1/2,1) = {e1}, fit rel. gap {mpmath.nstr(rel, 3)}"


def root_rate(prec: int = DEFAULT_PRECISION) -> tuple:
    lo, hi = 2**8, 2**16
    worst = mpmath.mpf(0)
    values = {}
    grid = set(default_grid())
    with mpmath.workprec(prec):
        k = -2 * mpmath.sqrt(mpmath.pi)
        c = mpmath.mpf(1)
        ok = True
        for n in range(1, hi + 1):
            c = c * (2 * n - 3) / (2 * n)
            if n >= lo:
                dev = abs(c * mpmath.power(n, 1.5) * k - 1) * n
                worst = max(worst, dev)
                if n in grid:
                    values[n] = +c
        ok = worst <= 2
    exp = cn_asymptotic(PI_HALF, 3)
    sr = residual_slope(values, exp, prec=prec)
    target = -4.5 + 0.15
    ok = ok and sr.slope is not None and sr.slope <= target
    return ok, (
        f"max n*|c_n n^(3/2) (-2 sqrt(pi)) - 1| = {mpmath.nstr(worst, 6)} (<= 2); "
        f"slope with e_1..e_3 = {mpmath.nstr(sr.slope, 5)} (<= -4.35; next term at -11/2)"
    )


def catalan(prec: int = DEFAULT_PRECISION) -> tuple:
    t0 = time.perf_counter()
    h = RationalFunction((2,), (1, 1))
    exp2 = sqrt_expansion(h, 2, prec=prec)
    C = exp2.coefficient(Fraction(3, 2))
    c_ok = isinstance(C, ExactScalar) and C == ExactScalar(Fraction(1), -1)
    n = 10**4
    with mpmath.workprec(prec):
        exact = to_mpf(catalan_value(n), prec)
        rel = abs(evaluate_expansion(exp2, n, prec=prec) - exact) / exact
    exp3 = sqrt_expansion(h, 3, prec=prec)
    values = {m: catalan_value(m) for m in default_grid()}
    sr = residual_slope(values, exp3, prec=prec)
    slope_ok = sr.slope is not None and abs(sr.slope + 5.5) <= 0.15
    dt = time.perf_counter() - t0
    return c_ok and rel <= 1e-6 and slope_ok and dt < 30, (
        f"C = {C}; rel. error at n=1e4: {mpmath.nstr(rel, 3)}; K=3 slope {mpmath.nstr(sr.slope, 5)}"
    )


def simple_pole(prec: int = DEFAULT_PRECISION) -> tuple:
    exp = pole_expansion((1,), None, 3, prec=prec)
    lead_e = exp.leading_exponent
    lead = exp.coefficient(lead_e)
    sign_ok = lead_e == PI_HALF and lead == ExactScalar(Fraction(1), -1)
    values = {m: central_binomial_value(m) for m in default_grid()}
    sr = residual_slope(values, exp, prec=prec)
    with mpmath.workprec(prec):
        fit = richardson_fit(
            {m: to_mpf(v, prec) for m, v in values.items()}, [Fraction(1, 2) + j for j in range(8)], 6, prec
        )
        rel = abs(fit.constants[0] * mpmath.sqrt(mpmath.pi) - 1)
    ok = sign_ok and sr.verdict and rel < 1e-10
    return ok, f"leading term ({lead})*n^(-{lead_e}); fitted C*sqrt(pi) - 1 = {mpmath.nstr(rel, 3)}; slope {mpmath.nstr(sr.slope, 4)}"


def exact_pole(N: int = 10**4) -> tuple:
    model = SqrtPole((1, 0))
    exp = pole_expansion(model.principal, None, 2)
    seq = exact_coeffs(model, N)
    ok = exp.is_exact and not exp.terms and exp.polynomial == (1,)
    ok = ok and all(a == 1 for a in seq) and all(exact_value(exp, n) == 1 for n in range(1, N + 1))
    poly = ", ".join(str(c) for c in exp.polynomial)
    return ok, f"polynomial part ({poly}), exact: {exp.is_exact}; b_n = 1 for n <= {N}"


def random_admissible_lambda(rng: random.Random, order: int = 8) -> TruncatedSeries:
    def q():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    t = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    cs = [Fraction(1), Fraction(0), -t * t] + [q() for _ in range(order - 2)]
    return TruncatedSeries.from_coeffs(cs, order)


def round_trip(count: int = 50, order: int = 8, seed: int = 20240607) -> tuple:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        lam = random_admissible_lambda(rng, order)
        h = uniformize(LocalMapData(lam))
        back = series_compose(lam, h)
        want = [Fraction(1), Fraction(0), Fraction(-1)] + [Fraction(0)] * (order - 2)
        if back.order < order or list(back.coeffs[: order + 1]) != want:
            bad += 1
    return bad == 0, f"{count - bad}/{count} random jets give lambda(h(w)) = 1 - w^2 through order {order}"


def equivariance(N: int = 10**4) -> tuple:
    inner = CORPUS["mixed-modes"].model
    reduced = exact_coeffs(inner, N)
    fails = []
    for d in (2, 3):
        for r in (0, 1):
            seq = exact_coeffs(EquivariantEnvelope(inner, d, r), N)
            if not check_vanishing(seq, d, r):
                fails.append(f"d={d},r={r}: off-class non-zero")
            if any(seq[d * n + r] != reduced[n] for n in range((N - r) // d + 1)):
                fails.append(f"d={d},r={r}: class mismatch")
    return not fails, "; ".join(fails) or f"d in (2,3), r in (0,1): exact for n <= {N}"


def interior_poles(N: int = 2000, margin: float = 0.02) -> tuple:
    out, ok = [], True
    Rp, R = Fraction(1), Fraction(2)
    for d in (1, 2, 3):
        for M, principal in ((1, (Fraction(3),)), (2, (Fraction(1), Fraction(-2)))):
            r = d - 1
            rest = EquivariantEnvelope(SqrtHolomorphic(polynomial(1, 1)), d, r, R)
            model = InteriorPole(Rp, principal, d, r, rest=rest)
            exp = interior_pole_expansion(model)
            pole_only = _interior_pole_coeffs(InteriorPole(Rp, principal, d, r), N)
            same = all(
                pole_only[d * n + r] == exact_value(exp, n) for n in range((N - r) // d + 1)
            ) and check_vanishing(pole_only, d, r)
            full = exact_coeffs(model, N)
            ratio, _ = geometric_ratio(full, exp)
            good = same and ratio <= float(Rp / R) + margin
            ok = ok and good
            out.append(f"d={d},M={M}: {'exact' if same else 'MISMATCH'}, ratio {mpmath.nstr(ratio, 4)}")
    return ok, "; ".join(out) + f" (bound {float(Rp / R) + margin})"


def corpus_reports() -> tuple:
    """Verify every corpus model; returns the reports and the wall time."""
    t0 = time.perf_counter()
    reports = [verify_model(e.model, VerifyConfig(K=e.K), name, e.closed_form) for name, e in CORPUS.items()]
    return reports, time.perf_counter() - t0


def summarize_corpus(reports: list, dt: float) -> tuple:
    gaps = {
        r.model_id: mpmath.mpf(r.residuals["oracle_max_relative_gap"])
        for r in reports
        if "oracle_max_relative_gap" in r.residuals
    }
    worst_name = max(gaps, key=gaps.get)
    failing = [r.model_id for r in reports if not r.passed]
    ok = len(gaps) == len(CORPUS) and not failing and dt < 300
    return ok, (
        f"{len(gaps)}/{len(CORPUS)} models checked, worst gap {mpmath.nstr(gaps[worst_name], 3)} "
        f"({worst_name}); full corpus verification {dt:.1f} s"
        + (f"; failing: {', '.join(failing)}" if failing else "")
    )


def oracle_corpus() -> tuple:
    return summarize_corpus(*corpus_reports())


CRITERIA = (
    (1, "Laplace constants", laplace),
    (2, "Gamma-ratio constants", gamma_ratio),
    (3, "Root coefficient rate", root_rate),
    (4, "Catalan reproduction", catalan),
    (5, "Simple pole sign", simple_pole),
    (6, "Exact polynomial pole", exact_pole),
    (7, "Uniformization round trip", round_trip),
    (8, "Equivariance", equivariance),
    (9, "Interior poles", interior_poles),
    (10, "Oracle agreement over corpus", oracle_corpus),
)


def run_criterion(number: int) -> CriterionResult:
    for k, title, fn in CRITERIA:
        if k == number:
            return _timed(k, title, fn)
    raise KeyError(number)


def run_all(corpus: tuple | None = None) -> list:
    """Run every criterion; ``corpus`` may carry precomputed ``(reports, seconds)`` for the last one."""
    out = []
    for k, title, fn in CRITERIA:
        if fn is oracle_corpus and corpus is not None:
            out.append(CriterionResult(k, title, *summarize_corpus(*corpus), corpus[1]))
        else:
            out.append(_timed(k, title, fn))
    return out
