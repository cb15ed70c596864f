"""Independent ground truth for coefficient sequences.

Exact coefficients come from the binomial series applied mode by mode
(``a_n = sum_k h_k [z^n](1-z)^(k alpha)``), never from the expansion
machinery.  Numeric coefficients come from a trapezoid-rule Cauchy integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import mpmath

from .errors import PreconditionError
from .expansion import AsymptoticExpansion, evaluate_expansion, exact_value
from .models import EquivariantEnvelope, InteriorPole, RawLocalMap, SqrtHolomorphic, SqrtPole
from .series import (
    DEFAULT_PRECISION,
    RationalFunction,
    TruncatedSeries,
    series_compose,
    series_mul,
    series_reciprocal,
    to_mpf,
)
from .uniformization import LocalMapData, divide_jet, uniformize

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# binomial building blocks


def half_sequence(N: int) -> list:
    """``[z^n](1-z)^(1/2)`` for ``n = 0..N``."""
    out = [Fraction(1)]
    c = Fraction(1)
    for n in range(1, N + 1):
        c = c * Fraction(2 * n - 3, 2 * n)
        out.append(c)
    return out


def half_value(n: int) -> Fraction:
    """``[z^n](1-z)^(1/2) = -binom(2n, n) / ((2n - 1) 4^n)``."""
    return Fraction(-math.comb(2 * n, n), (2 * n - 1) * 4**n)


def binom_sequence(beta, N: int) -> list:
    """``[z^n](1-z)^beta`` for ``n = 0..N`` by the ratio recurrence."""
    beta = Fraction(beta)
    out = [Fraction(1)]
    c = Fraction(1)
    for n in range(1, N + 1):
        c = c * (n - 1 - beta) / n
        out.append(c)
    return out


def _half_ratio(twice_beta: int, n: int) -> Fraction:
    """``c_n(beta) / c_n(1/2)`` for a half-integer ``beta``; a ratio of small integers."""
    num, den = 1, 1
    b2 = 1
    while b2 < twice_beta:
        # c_n(b+1) = c_n(b) (b+1) / (b+1-n)
        num *= b2 + 2
        den *= b2 + 2 - 2 * n
        b2 += 2
    while b2 > twice_beta:
        # c_n(b-1) = c_n(b) (b-n) / b
        num *= b2 - 2 * n
        den *= b2
        b2 -= 2
    return Fraction(num, den)


def _integer_binom(m: int, n: int) -> int:
    if m >= 0:
        return (-1) ** n * math.comb(m, n) if n <= m else 0
    return math.comb(n - m - 1, -m - 1)


def _split_modes(modes: Mapping) -> tuple:
    half, integer, other = {}, {}, {}
    for beta, c in modes.items():
        beta = Fraction(beta)
        if c == 0:
            continue
        if beta.denominator == 1:
            integer[int(beta)] = integer.get(int(beta), 0) + c
        elif beta.denominator == 2:
            half[int(2 * beta)] = half.get(int(2 * beta), 0) + c
        else:
            other[beta] = other.get(beta, 0) + c
    return half, integer, other


def mode_sum(modes: Mapping, N: int) -> list:
    """``a_n = sum_beta modes[beta] * [z^n](1-z)^beta`` exactly for ``n = 0..N``.

    Half-integer modes share the factor ``c_n(1/2)``, which keeps every step a
    product of one large and one small rational.
    """
    half, integer, other = _split_modes(modes)
    base = half_sequence(N) if half else None
    others = {b: binom_sequence(b, N) for b in other}
    out = []
    for n in range(N + 1):
        a = Fraction(0)
        if half:
            s = sum((c * _half_ratio(b2, n) for b2, c in half.items()), Fraction(0))
            a = base[n] * s
        for m, c in integer.items():
            v = _integer_binom(m, n)
            if v:
                a += c * v
        for b, seq in others.items():
            a += other[b] * seq[n]
        out.append(a)
    return out


def _half_float(n: int, prec: int) -> mpmath.mpf:
    # -Gamma(n - 1/2) / (2 sqrt(pi) Gamma(n + 1))
    if n == 0:
        return mpmath.mpf(1)
    return -mpmath.exp(mpmath.loggamma(n - mpmath.mpf(1) / 2) - mpmath.loggamma(n + 1)) / (
        2 * mpmath.sqrt(mpmath.pi)
    )


def mode_value(modes: Mapping, n: int, prec: int | None = None, exact: bool = True):
    """Single coefficient of a mode sum.

    Exact when every mode is an integer or half-integer with a rational
    coefficient and ``exact`` is true; otherwise an ``mpf`` good to ``prec``
    bits is returned (much faster for large ``n``).
    """
    half, integer, other = _split_modes(modes)
    rational = all(isinstance(c, (int, Fraction)) for c in modes.values())
    if rational:
        # rational weights are summed exactly first, then converted once
        ratio = sum((c * _half_ratio(b2, n) for b2, c in half.items()), Fraction(0))
        ints = sum((c * _integer_binom(m, n) for m, c in integer.items()), Fraction(0))
        if exact and not other:
            return (half_value(n) * ratio if half else Fraction(0)) + ints
    prec = prec or DEFAULT_PRECISION
    wp = prec + 32
    with mpmath.workprec(wp):
        if not rational:
            ratio = mpmath.fsum(to_mpf(c, wp) * to_mpf(_half_ratio(b2, n), wp) for b2, c in half.items())
            ints = mpmath.fsum(to_mpf(c, wp) * _integer_binom(m, n) for m, c in integer.items())
        v = to_mpf(ints, wp)
        if half and ratio:
            v += _half_float(n, wp) * to_mpf(ratio, wp)
        for b, c in other.items():
            # (-1)^n binom(beta, n) = Gamma(n - beta) / (Gamma(-beta) Gamma(n + 1))
            bb = to_mpf(b, wp)
            v += to_mpf(c, wp) * mpmath.rgamma(-bb) * mpmath.exp(
                mpmath.loggamma(n - bb) - mpmath.loggamma(n + 1)
            )
    with mpmath.workprec(prec):
        return +v


# ---------------------------------------------------------------------------
# model -> modes


def _poly_coeffs(h) -> list | None:
    if h is None:
        return []
    if isinstance(h, RationalFunction):
        return list(h.num) if h.is_polynomial else None
    # a jet is taken as the polynomial it spells out (float jets give float modes)
    return list(h.coeffs)


def _rational_series(h: RationalFunction, alpha: Fraction, N: int) -> list:
    """``[z^n] P(w)/Q(w)`` with ``w = (1-z)^alpha``, expanding around ``w = 1``."""
    w = binom_sequence(alpha, N)
    t = TruncatedSeries.from_coeffs([Fraction(0)] + w[1:], N)

    def shifted(p):
        # coefficients of p(1 + t) in t, by repeated synthetic division by (x - 1)
        p = list(p)
        out = []
        while p:
            acc, q = Fraction(0), []
            for c in reversed(p):
                acc += c
                q.append(acc)
            out.append(q[-1])
            p = q[-2::-1]
        return out

    def evaluate(p):
        acc = TruncatedSeries.from_coeffs([p[-1]], N)
        for c in reversed(p[:-1]):
            acc = series_mul(acc, t) + c
        return acc

    P = evaluate(shifted(h.num))
    Qs = shifted(h.den)
    if Qs[0] == 0:
        raise PreconditionError("denominator vanishes at w = 1 (pole at z = 0)")
    Q = evaluate(Qs)
    return list(series_mul(P, series_reciprocal(Q)).coeffs[: N + 1])


def _observable_modes(h, alpha: Fraction) -> dict | None:
    cs = _poly_coeffs(h)
    if cs is None:
        return None
    return {k * alpha: c for k, c in enumerate(cs)}


def _pullback(raw: RawLocalMap) -> SqrtHolomorphic | SqrtPole:
    """Replace the raw local data by the square-root model defined by its jets."""
    R = raw.R
    data = LocalMapData(divide_jet(raw.lambda_jet, R), raw.g_jet, R)
    h = uniformize(data, raw.sheet)
    F = series_compose(raw.g_jet, h)
    M = raw.pole_order
    if not M:
        return SqrtHolomorphic(F)
    q = TruncatedSeries._raw(h.coeffs[1:], h.domain, h.prec)
    inv = series_reciprocal(q)
    for _ in range(M):
        F = series_mul(F, inv)
    return SqrtPole(tuple(F.coeffs[:M]), TruncatedSeries._raw(F.coeffs[M:], F.domain, F.prec))


def model_modes(model) -> dict | None:
    """Mode decomposition ``{beta: coefficient}`` of a polynomial-type model, else ``None``."""
    if isinstance(model, SqrtHolomorphic):
        return _observable_modes(model.h, model.alpha)
    if isinstance(model, SqrtPole):
        modes = _observable_modes(model.h, HALF)
        if modes is None:
            return None
        for j in range(1, model.M + 1):
            b = Fraction(-j, 2)
            modes[b] = modes.get(b, 0) + model.D(j)
        return modes
    if isinstance(model, RawLocalMap):
        return model_modes(_pullback(model))
    return None


def _radius(model) -> Fraction:
    return Fraction(model.R) if isinstance(model, RawLocalMap) else Fraction(1)


def exact_coeffs(model, N: int) -> list:
    """Exact ``a_0..a_N`` of an exact-mode model."""
    if N < 0:
        return []
    if not getattr(model, "exact", False):
        raise PreconditionError("exact oracle needs an exact-mode model")
    if isinstance(model, EquivariantEnvelope):
        d, r, R = model.d, model.r, Fraction(model.R)
        M = (N - r) // d if N >= r else -1
        inner = exact_coeffs(model.inner, M)
        out = [Fraction(0)] * (N + 1)
        for n, b in enumerate(inner):
            out[d * n + r] = b * R ** (-d * n) if R != 1 else b
        return out
    if isinstance(model, InteriorPole):
        return _interior_pole_coeffs(model, N)
    if isinstance(model, RawLocalMap):
        seq = exact_coeffs(_pullback(model), N)
        R = _radius(model)
        return seq if R == 1 else [a * R ** (-n) for n, a in enumerate(seq)]
    modes = model_modes(model)
    if modes is not None:
        return mode_sum(modes, N)
    # rational non-polynomial observable
    if isinstance(model, SqrtHolomorphic):
        return _rational_series(model.h, model.alpha, N)
    if isinstance(model, SqrtPole):
        pole = mode_sum({Fraction(-j, 2): model.D(j) for j in range(1, model.M + 1)}, N)
        rest = _rational_series(model.h, HALF, N)
        return [a + b for a, b in zip(pole, rest)]
    raise TypeError(f"no exact oracle for {type(model).__name__}")


def _convolve(a: Sequence, b: Sequence, N: int) -> list:
    """Exact Cauchy product through index ``N`` on a common integer denominator."""
    da = math.lcm(*(Fraction(x).denominator for x in a[: N + 1])) if a else 1
    db = math.lcm(*(Fraction(x).denominator for x in b[: N + 1])) if b else 1
    A = [int(Fraction(x) * da) for x in a[: N + 1]]
    B = [int(Fraction(x) * db) for x in b[: N + 1]]
    out = []
    for n in range(N + 1):
        s = sum(A[i] * B[n - i] for i in range(max(0, n - len(B) + 1), min(n, len(A) - 1) + 1))
        out.append(Fraction(s, da * db))
    return out


def _interior_pole_coeffs(model: InteriorPole, N: int) -> list:
    d, r, Rp = model.d, model.r, model.Rprime
    M = (N - r) // d if N >= r else -1
    out = [Fraction(0)] * (N + 1)
    if M >= 0:
        # 1/(y - a) = -sum a^(-n-1) y^n,  a = Rp^d; higher orders by self-convolution
        a = Rp**d
        base = [-(a ** (-(n + 1))) for n in range(M + 1)]
        power = base
        acc = [Fraction(0)] * (M + 1)
        for m in range(1, model.M + 1):
            if m > 1:
                power = _convolve(power, base, M)
            c = model.principal[model.M - m]
            if c:
                acc = [x + c * y for x, y in zip(acc, power)]
        for n, v in enumerate(acc):
            out[d * n + r] = v
    if model.rest is not None:
        out = [x + y for x, y in zip(out, exact_coeffs(model.rest, N))]
    return out


def coefficient_at(model, n: int, prec: int | None = None, closed_form: Callable | None = None, exact: bool = True):
    """Single coefficient ``a_n``; exact where possible (see :func:`mode_value`).

    ``closed_form`` overrides the computation (used for models whose
    observable is rational but not polynomial).
    """
    if closed_form is not None:
        return closed_form(n)
    if isinstance(model, EquivariantEnvelope):
        d, r = model.d, model.r
        if n < r or (n - r) % d:
            return Fraction(0)
        k = (n - r) // d
        b = coefficient_at(model.inner, k, prec, exact=exact)
        R = model.R
        return b * Fraction(R) ** (-d * k) if isinstance(b, Fraction) else b * to_mpf(R, prec) ** (-d * k)
    if isinstance(model, InteriorPole):
        raise PreconditionError("use exact_coeffs for interior-pole models")
    R = _radius(model)
    modes = model_modes(model)
    if modes is None:
        seq = exact_coeffs(model, n)
        return seq[n]
    v = mode_value(modes, n, prec, exact)
    if R != 1:
        v = v * R ** (-n) if isinstance(v, Fraction) else v * to_mpf(R, prec) ** (-n)
    return v


# ---------------------------------------------------------------------------
# numeric oracle


def model_function(model, prec: int | None = None) -> Callable:
    """Callable ``z -> g(z)`` (``mpc``) for the function a model describes."""
    prec = prec or DEFAULT_PRECISION

    def obs(h, w):
        if h is None:
            return 0
        if isinstance(h, RationalFunction):
            return h(w)
        return h(w)

    if isinstance(model, SqrtHolomorphic):
        a = to_mpf(model.alpha, prec)
        return lambda z: obs(model.h, mpmath.power(1 - z, a))
    if isinstance(model, SqrtPole):
        Ds = [(j, to_mpf(model.D(j), prec)) for j in range(1, model.M + 1)]

        def g(z):
            w = mpmath.sqrt(1 - z)
            return sum((D * w ** (-j) for j, D in Ds), mpmath.mpf(0)) + obs(model.h, w)

        return g
    if isinstance(model, RawLocalMap):
        inner = model_function(_pullback(model), prec)
        R = to_mpf(model.R, prec)
        return lambda z: inner(z / R)
    if isinstance(model, EquivariantEnvelope):
        inner = model_function(model.inner, prec)
        R = to_mpf(model.R, prec)
        d, r = model.d, model.r
        return lambda z: z**r * inner((z / R) ** d)
    if isinstance(model, InteriorPole):
        a = to_mpf(model.Rprime, prec) ** model.d
        cs = [(m, to_mpf(model.principal[model.M - m], prec)) for m in range(1, model.M + 1)]
        rest = model_function(model.rest, prec) if model.rest is not None else None
        d, r = model.d, model.r

        def g(z):
            y = z**d - a
            v = z**r * sum((c * y ** (-m) for m, c in cs), mpmath.mpf(0))
            return v + rest(z) if rest else v

        return g
    raise TypeError(f"no function for {type(model).__name__}")


def numeric_coeffs(g: Callable, rho, N: int, S: int = 4096, prec: int | None = None) -> list:
    """``a_0..a_N`` of a real-coefficient ``g`` by the ``S``-point trapezoid rule on ``|z| = rho``.

    The aliasing error on ``a_n rho^n`` is the sum of ``a_{n+kS} rho^(n+kS)``, k >= 1.
    """
    if S <= N:
        raise PreconditionError("need more samples than coefficients (S > N)")
    prec = prec or DEFAULT_PRECISION
    with mpmath.workprec(prec + 32):
        rho = to_mpf(rho, prec + 32)
        cos_t = [mpmath.cospi(mpmath.mpf(2 * j) / S) for j in range(S)]
        sin_t = [mpmath.sinpi(mpmath.mpf(2 * j) / S) for j in range(S)]
        # real coefficients: g(conj z) = conj g(z), so half the circle suffices
        half = S // 2
        vals = []
        for j in range(half + 1):
            v = mpmath.mpc(g(rho * mpmath.mpc(cos_t[j], sin_t[j])))
            vals.append(v)
        weights = [1 if j in (0, half) and S % 2 == 0 else 2 for j in range(half + 1)]
        re = [w * v.real for w, v in zip(weights, vals)]
        im = [w * v.imag for w, v in zip(weights, vals)]
        out = []
        for n in range(N + 1):
            idx = [(j * n) % S for j in range(half + 1)]
            s = mpmath.fdot(re, [cos_t[i] for i in idx]) + mpmath.fdot(im, [sin_t[i] for i in idx])
            out.append(s / S / rho**n)
    with mpmath.workprec(prec):
        return [+x for x in out]


# ---------------------------------------------------------------------------
# fitting and residuals


@dataclass(frozen=True)
class FitResult:
    constants: tuple
    uncertainties: tuple
    residual: object


def _lstsq(ns, vals, exps):
    A = mpmath.matrix([[mpmath.power(n, -e) for e in exps] for n in ns])
    b = mpmath.matrix(vals)
    x, res = mpmath.qr_solve(A, b)
    return [x[i] for i in range(len(exps))], res


def richardson_fit(values: Mapping, exponents: Sequence, L: int, prec: int | None = None) -> FitResult:
    """Least-squares fit ``values[n] ~ sum_{i<L} x_i n^(-exponents[i])``.

    Uncertainties compare against the fit with one more term (or one fewer
    if no further exponent is supplied).
    """
    prec = prec or DEFAULT_PRECISION
    ns = sorted(values)
    if L < 1 or L > len(exponents):
        raise PreconditionError("need 1 <= L <= len(exponents)")
    if len(ns) < L + 1:
        raise PreconditionError("need more data points than fitted constants")
    with mpmath.workprec(prec + 32):
        nn = [mpmath.mpf(n) for n in ns]
        vv = [to_mpf(values[n], prec + 32) for n in ns]
        ee = [to_mpf(e, prec + 32) for e in exponents]
        x, res = _lstsq(nn, vv, ee[:L])
        alt_L = L + 1 if len(exponents) > L and len(ns) > L + 1 else L - 1
        if alt_L >= 1:
            y, _ = _lstsq(nn, vv, ee[:alt_L])
            unc = [abs(x[i] - y[i]) if i < alt_L else mpmath.inf for i in range(L)]
        else:
            unc = [mpmath.inf] * L
    with mpmath.workprec(prec):
        return FitResult(tuple(+c for c in x), tuple(+u for u in unc), +res)


def default_grid(lo: int = 8, hi: int = 16) -> list:
    """``n = 2^(lo + i/2)``, rounded, for the residual regression."""
    return sorted({int(round(2 ** (lo + i / 2))) for i in range(2 * (hi - lo) + 1)})


@dataclass(frozen=True)
class SlopeResult:
    slope: object
    target: object
    verdict: bool
    residuals: tuple
    note: str = ""


def _bracket_residual(exp: AsymptoticExpansion, n: int, value, prec: int):
    """``a_{dn+r} R^(dn) - bracket(n)``: exact when both sides are exact rationals."""
    d = exp.period
    if isinstance(value, Fraction) and exp.is_exact_rational:
        R = Fraction(exp.radius)
        return value * R ** (d * n) - exact_value(exp, n, raw=True)
    with mpmath.workprec(prec + 32):
        scaled = to_mpf(value, prec + 32)
        if exp.radius != 1:
            scaled *= mpmath.power(to_mpf(exp.radius, prec + 32), d * n)
        return scaled - evaluate_expansion(exp, n, raw=True, prec=prec + 32)


def residual_slope(
    values: Mapping,
    expansion: AsymptoticExpansion,
    tolerance: float = 0.15,
    prec: int | None = None,
) -> SlopeResult:
    """Log-log slope of ``|a - prediction|`` over the supplied class indices ``n``.

    ``values[n]`` is ``a_{d n + r}``.  Verdict: slope ``<= -remainder_exponent + tolerance``.
    An exactly vanishing residual passes with a note.
    """
    prec = prec or DEFAULT_PRECISION
    ns = sorted(values)
    res = [_bracket_residual(expansion, n, values[n], prec) for n in ns]
    rem = expansion.remainder_exponent
    with mpmath.workprec(prec):
        mags = [abs(to_mpf(x, prec)) for x in res]
        scale = max((abs(to_mpf(values[n], prec)) for n in ns), default=mpmath.mpf(0))
        floor = scale * mpmath.ldexp(1, -prec + 24)
        if all(m <= floor for m in mags):
            exact = all(x == 0 for x in res)
            note = "residual identically zero" if exact else "residual below working precision"
            return SlopeResult(None, None if rem is None else -rem, True, tuple(res), note)
        if rem is None:
            return SlopeResult(None, None, False, tuple(res), "exact expansion but non-zero residual")
        pts = [(mpmath.log(n), mpmath.log(m)) for n, m in zip(ns, mags) if m > floor]
        if len(pts) < 3:
            return SlopeResult(None, -rem, False, tuple(res), "too few non-zero residuals")
        slope = _ols_slope(pts)
        target = -rem
        return SlopeResult(+slope, target, bool(slope <= target + tolerance), tuple(res))


def _ols_slope(pts):
    k = len(pts)
    mx = sum(p[0] for p in pts) / k
    my = sum(p[1] for p in pts) / k
    sxy = sum((p[0] - mx) * (p[1] - my) for p in pts)
    sxx = sum((p[0] - mx) ** 2 for p in pts)
    return sxy / sxx


def geometric_ratio(coeffs: Sequence, expansion: AsymptoticExpansion, n_min: int = 1, prec: int | None = None):
    """Measured per-index decay ratio of ``a_m - prediction`` relative to ``radius^(-m)``.

    Returns ``(ratio, residuals)``; the ratio is ``0`` if every residual vanishes.
    """
    prec = prec or DEFAULT_PRECISION
    d, r = expansion.period, expansion.residue
    pts, res = [], {}
    with mpmath.workprec(prec):
        for m in range(r + d * n_min, len(coeffs), d):
            n = (m - r) // d
            x = _bracket_residual(expansion, n, coeffs[m], prec)
            res[m] = x
            if x != 0:
                pts.append((mpmath.mpf(m), mpmath.log(abs(to_mpf(x, prec)))))
        if len(pts) < 3:
            return mpmath.mpf(0), res
        return mpmath.exp(_ols_slope(pts)), res
