"""Transfer from singular behaviour of ``g`` to asymptotic expansions of its coefficients.

Every mode ``h_k (1-z)^(k alpha)`` contributes ``h_k [z^n](1-z)^(k alpha)``,
whose expansion in powers of ``n`` comes from :func:`cn_asymptotic`; integer
``k alpha`` modes are polynomials and contribute nothing for large ``n``.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction

import mpmath

from .errors import DegenerateWarning, PreconditionError, TruncationError
from .expansion import AsymptoticExpansion
from .models import RawLocalMap, SqrtHolomorphic, SqrtPole
from .series import (
    DEFAULT_PRECISION,
    EXACT,
    RationalFunction,
    TruncatedSeries,
    series_compose,
    series_mul,
    series_reciprocal,
    to_mpf,
)
from .special import e_table, root_constant
from .uniformization import LocalMapData, compose_observable, divide_jet, uniformize

HALF = Fraction(1, 2)
SIGN_NOTE = (
    "odd pole terms D_j w^-j contribute +D_j n^(j/2-1)/Gamma(j/2); for j=1 this is +D_1/sqrt(pi), "
    "checked against binom(2n,n)/4^n"
)


def _as_jet(h, order: int) -> TruncatedSeries:
    if isinstance(h, RationalFunction):
        return h.jet(order)
    if h.order < order:
        raise TruncationError(f"observable known through order {h.order}, need {order}")
    return h


def _mode_terms(jet: TruncatedSeries, alpha: Fraction, cutoff: Fraction, prec: int) -> dict:
    """Expansion terms at exponents ``< cutoff`` from the modes ``k >= 1`` of ``jet``."""
    exact = jet.domain == EXACT and alpha.denominator == 2
    terms: dict = {}
    k = 1
    while k * alpha + 1 < cutoff:
        beta = k * alpha
        if beta.denominator != 1:
            if k > jet.order:
                raise TruncationError(f"mode {k} needed but the jet stops at {jet.order}")
            hk = jet.coeffs[k]
            if hk != 0:
                n_l = math.ceil(cutoff - beta - 1)
                E = e_table(-beta, 1, n_l - 1)
                A = root_constant(beta, prec)
                for l in range(n_l):
                    e = beta + 1 + l
                    if exact:
                        c = A * (hk * E[l])
                    else:
                        with mpmath.workprec(prec):
                            c = to_mpf(A, prec) * to_mpf(hk, prec) * to_mpf(E[l], prec)
                    terms[e] = terms[e] + c if e in terms else c
        k += 1
    return terms


def _check_degenerate(jet: TruncatedSeries, what: str = "h'(0)"):
    if jet.order >= 1 and jet.coeffs[1] == 0:
        warnings.warn(
            f"{what} = 0: the n^(-3/2) term vanishes and the leading behaviour is shifted",
            DegenerateWarning,
            stacklevel=3,
        )


def sqrt_expansion(h, K: int, *, radius=Fraction(1), prec: int | None = None) -> AsymptoticExpansion:
    """Expansion of ``[z^n] h(sqrt(1 - z/R))`` with constants ``C, c_1, ..., c_K``.

    Terms sit at ``n^(-3/2 - j)``, ``j = 0..K``; the remainder is
    ``O(n^(-5/2 - K))``.  ``h`` must be known through order ``2K + 2``.
    Constants are exact ``q * sqrt(pi)^(-1)`` for an exact ``h``.
    """
    if K < 0:
        raise PreconditionError("K must be non-negative")
    prec = prec or DEFAULT_PRECISION
    jet = _as_jet(h, 2 * K + 2)
    _check_degenerate(jet)
    cutoff = Fraction(5, 2) + K
    return AsymptoticExpansion(
        terms=_mode_terms(jet, HALF, cutoff, prec),
        remainder_exponent=cutoff,
        radius=radius,
    )


def general_alpha_expansion(h, alpha, K, *, radius=Fraction(1), prec: int | None = None) -> AsymptoticExpansion:
    """Expansion of ``[z^n] h((1 - z/R)^alpha)`` through the exponent cutoff ``K``.

    All terms ``n^(-e)`` with ``e < K`` are produced; remainder ``O(n^(-K))``.
    Needs ``(order(h) + 1) * alpha >= K - 1`` so that no unknown mode reaches the cutoff.
    """
    alpha = Fraction(alpha)
    K = Fraction(K)
    if not 0 < alpha < 1:
        raise PreconditionError("alpha must lie in (0, 1)")
    prec = prec or DEFAULT_PRECISION
    need = math.floor((K - 1) / alpha)
    if need < 0:
        need = 0
    if isinstance(h, RationalFunction):
        jet = h.jet(need)
    else:
        jet = h
        if (jet.order + 1) * alpha + 1 < K:
            raise TruncationError(
                f"order(h) = {jet.order} too small: need (order+1)*alpha >= K - 1"
            )
    return AsymptoticExpansion(
        terms=_mode_terms(jet, alpha, K, prec),
        remainder_exponent=K,
        radius=radius,
    )


def binom_polynomial(m: int) -> tuple:
    """Coefficients in ``n`` of ``binom(n + m - 1, m - 1) = [z^n](1-z)^(-m)``."""
    poly = [Fraction(1)]
    for i in range(1, m):
        # multiply by (n + i)
        nxt = [Fraction(0)] * (len(poly) + 1)
        for j, c in enumerate(poly):
            nxt[j] += i * c
            nxt[j + 1] += c
        poly = nxt
    f = math.factorial(m - 1)
    return tuple(c / f for c in poly)


def pole_expansion(principal, h=None, K: int = 0, *, radius=Fraction(1), prec: int | None = None) -> AsymptoticExpansion:
    """Expansion of ``[z^n] (sum_j D_j w^(-j) + h(w))`` with ``w = sqrt(1 - z/R)``.

    ``principal = (D_M, ..., D_1)``.  Even ``j = 2m`` give the exact polynomial
    ``D_j binom(n+m-1, m-1)``; odd ``j`` give ``n^(j/2 - 1 - l)`` series.  The
    leading exponent is ``n^(M/2 - 1)``; everything strictly below
    ``n^(M/2 - 2 - K)`` is kept.  If ``h`` is ``None`` and every odd
    ``D_j`` vanishes the result is exact.
    """
    if K < 0:
        raise PreconditionError("K must be non-negative")
    prec = prec or DEFAULT_PRECISION
    principal = tuple(principal)
    M = len(principal)
    if M == 0 or principal[0] == 0:
        raise PreconditionError("D_M must be non-zero")
    gamma = 1 - Fraction(M, 2)
    cutoff = gamma + K + 1
    exact = all(isinstance(c, (int, Fraction)) for c in principal) and (
        h is None or isinstance(h, RationalFunction) or h.domain == EXACT
    )

    def num(x):
        return x if exact else to_mpf(x, prec)

    poly: list = []
    terms: dict = {}
    any_odd = False
    for j in range(1, M + 1):
        D = principal[M - j]
        if D == 0:
            continue
        if j % 2 == 0:
            bp = binom_polynomial(j // 2)
            poly += [Fraction(0)] * (len(bp) - len(poly))
            for i, c in enumerate(bp):
                poly[i] = poly[i] + num(D) * num(c)
            continue
        any_odd = True
        beta = Fraction(-j, 2)
        n_l = math.ceil(cutoff - beta - 1)
        if n_l <= 0:
            continue
        E = e_table(-beta, 1, n_l - 1)
        A = root_constant(beta)
        for l in range(n_l):
            e = beta + 1 + l
            if exact:
                c = A * (Fraction(D) * E[l])
            else:
                with mpmath.workprec(prec):
                    c = to_mpf(A, prec) * num(D) * num(E[l])
            terms[e] = terms[e] + c if e in terms else c

    if h is not None:
        need = max(0, math.ceil(2 * cutoff - 3))
        jet = _as_jet(h, need)
        if not exact and jet.domain == EXACT:
            jet = jet.to_float(prec)
        for e, c in _mode_terms(jet, HALF, cutoff, prec).items():
            terms[e] = terms[e] + c if e in terms else c

    exact_result = h is None and not any_odd
    return AsymptoticExpansion(
        terms=terms,
        remainder_exponent=None if exact_result else cutoff,
        polynomial=tuple(poly),
        radius=radius,
        notes=(SIGN_NOTE,) if any_odd else (),
    )


def _local_data(raw: RawLocalMap) -> LocalMapData:
    return LocalMapData(divide_jet(raw.lambda_jet, raw.R), raw.g_jet, raw.R)


def analytic_pipeline(raw: RawLocalMap, K: int, *, prec: int | None = None) -> AsymptoticExpansion:
    """Uniformize ``lambda``, pull back ``g`` and expand as in :func:`sqrt_expansion`."""
    if raw.pole_order:
        return meromorphic_pipeline(raw, K, prec=prec)
    h = uniformize(_local_data(raw), raw.sheet)
    gh = compose_observable(raw.g_jet, h)
    return sqrt_expansion(gh, K, radius=raw.R, prec=prec)


def meromorphic_pipeline(raw: RawLocalMap, K: int, *, prec: int | None = None) -> AsymptoticExpansion:
    """Pole version: ``g_jet`` holds ``z^M g``; the pullback splits into a
    principal part in ``w`` and a holomorphic remainder."""
    M = raw.pole_order
    if M < 1:
        return analytic_pipeline(raw, K, prec=prec)
    h = uniformize(_local_data(raw), raw.sheet)
    # h(w) = w q(w); g(h(w)) = G(h(w)) / (w q(w))^M
    q = TruncatedSeries._raw(h.coeffs[1:], h.domain, h.prec)
    F = series_compose(raw.g_jet, h)
    inv_q = series_reciprocal(q)
    for _ in range(M):
        F = series_mul(F, inv_q)
    if F.order < M:
        raise TruncationError("jets too short to extract the principal part")
    principal = tuple(F.coeffs[:M])
    if principal[0] == 0:
        raise PreconditionError("g_jet(0) = 0: the pole order is smaller than declared")
    hol = TruncatedSeries._raw(F.coeffs[M:], F.domain, F.prec)
    return pole_expansion(principal, hol, K, radius=raw.R, prec=prec)


def expand_model(model, K, *, prec: int | None = None) -> AsymptoticExpansion:
    """Dispatch on the model type (without envelopes)."""
    if isinstance(model, SqrtHolomorphic):
        if model.alpha == HALF:
            return sqrt_expansion(model.h, K, prec=prec)
        return general_alpha_expansion(model.h, model.alpha, K, prec=prec)
    if isinstance(model, SqrtPole):
        return pole_expansion(model.principal, model.h, K, prec=prec)
    if isinstance(model, RawLocalMap):
        return analytic_pipeline(model, K, prec=prec)
    raise TypeError(f"no expansion rule for {type(model).__name__}")
