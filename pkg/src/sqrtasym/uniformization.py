"""Uniformizing a quadratic critical point: find ``h`` with ``lambda(h(w)) = 1 - w^2``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, TruncationError
from .series import (
    TruncatedSeries,
    _coerce,
    _workprec,
    series_compose,
    series_decompose,
    series_reversion,
    series_sqrt,
)


@dataclass(frozen=True)
class LocalMapData:
    """Normalized local data: ``lambda(0) = 1``, ``lambda'(0) = 0``, ``lambda''(0) < 0``.

    ``R`` records the normalization constant that was divided out.
    """

    lambda_jet: TruncatedSeries
    g_jet: TruncatedSeries | None = None
    R: object = Fraction(1)

    def __post_init__(self):
        lam = self.lambda_jet
        if lam.order < 3:
            raise TruncationError("lambda must be known through order >= 3")
        if lam.coeffs[0] != 1:
            raise PreconditionError("normalized lambda must satisfy lambda(0) = 1")
        if lam.coeffs[1] != 0:
            raise PreconditionError("lambda'(0) must vanish at a critical point")
        if lam.coeffs[2] == 0:
            raise PreconditionError("critical point is degenerate (lambda''(0) = 0)")
        if lam.coeffs[2] > 0:
            raise PreconditionError(
                "lambda''(0) > 0: the real uniformizer would be complex; not supported"
            )

    @classmethod
    def normalize(cls, lambda_jet: TruncatedSeries, g_jet=None, R=None) -> "LocalMapData":
        """Divide ``lambda`` by ``R = lambda(0)`` (or the given ``R``)."""
        R = lambda_jet.coeffs[0] if R is None else R
        return cls(divide_jet(lambda_jet, R), g_jet, R)


def divide_jet(jet: TruncatedSeries, R) -> TruncatedSeries:
    """``jet / R`` coefficientwise.

    Dividing (rather than multiplying by ``1/R``) keeps ``R / R == 1`` exact
    in float mode, which the normalization checks rely on.
    """
    if R == 0:
        raise PreconditionError("lambda(0) must be non-zero")
    with _workprec(jet.domain, jet.prec):
        r = _coerce(R, jet.domain)
        return TruncatedSeries._raw([c / r for c in jet.coeffs], jet.domain, jet.prec)


def uniformize(data: LocalMapData, sheet: int = 1) -> TruncatedSeries:
    """Jet of ``h`` with ``h(0) = 0`` and ``lambda(h(w)) = 1 - w^2``.

    ``sheet = 1`` gives ``h'(0) > 0``; ``sheet = -1`` the other solution ``h(-w)``.
    A jet of ``lambda`` through order ``N`` determines ``h`` through ``N - 1``,
    which is exactly what ``lambda(h(w))`` through order ``N`` requires.
    """
    if sheet not in (1, -1):
        raise PreconditionError("sheet must be +1 or -1")
    lam = data.lambda_jet
    # 1 - lambda = z^2 * tail(z), tail(0) = -lambda_2 > 0
    _, tail = series_decompose(1 - lam, 2)
    root = series_sqrt(tail)  # exact mode needs -lambda_2 to be a rational square
    h = series_reversion(root.shift(1))
    if sheet == -1:
        h = TruncatedSeries._raw(
            [c if k % 2 == 0 else -c for k, c in enumerate(h.coeffs)], h.domain, h.prec
        )
    return h


def compose_observable(g_jet: TruncatedSeries, h_jet: TruncatedSeries) -> TruncatedSeries:
    """Jet of ``g(h(w))``."""
    return series_compose(g_jet, h_jet)
