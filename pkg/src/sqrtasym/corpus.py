"""Built-in models with known answers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .models import EquivariantEnvelope, InteriorPole, RawLocalMap, SqrtHolomorphic, SqrtPole
from .series import RationalFunction, TruncatedSeries, polynomial, series_mul, series_reciprocal


def catalan_value(n: int) -> Fraction:
    """``Cat_n / 4^n``."""
    return Fraction(math.comb(2 * n, n), (n + 1) * 4**n)


def central_binomial_value(n: int) -> Fraction:
    return Fraction(math.comb(2 * n, n), 4**n)


def catalan_local_map(order: int = 16) -> RawLocalMap:
    """Catalan numbers through a critical point: ``lambda(s) = 4(1-s)/(2-s)^2``, ``g = 2 - s``.

    Solving ``lambda(s) = 1 - w^2`` on the principal sheet gives
    ``s = 2w/(1+w)`` and ``g(s(w)) = 2/(1+w)``.
    """
    num = TruncatedSeries.from_coeffs([4, -4], order)
    den = TruncatedSeries.from_coeffs([4, -4, 1], order)
    lam = series_mul(num, series_reciprocal(den))
    g = TruncatedSeries.from_coeffs([2, -1], order)
    return RawLocalMap(lam, g)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    model: object
    description: str
    K: int = 2
    closed_form: Optional[Callable] = None


def _envelope_closed(inner: Callable, d: int, r: int) -> Callable:
    def f(n):
        if n < r or (n - r) % d:
            return Fraction(0)
        return inner((n - r) // d)

    return f


def _corpus() -> tuple:
    w = polynomial(0, 1)
    cat = SqrtHolomorphic(RationalFunction((2,), (1, 1)))
    return (
        CorpusEntry("catalan", cat, "h(w) = 2/(1+w): Catalan numbers over 4^n", 3, catalan_value),
        CorpusEntry("root-half", SqrtHolomorphic(w), "h(w) = w: coefficients of sqrt(1-z)", 2),
        CorpusEntry("cube-mode", SqrtHolomorphic(polynomial(0, 0, 0, 1)), "h(w) = w^3: vanishing h'(0)", 2),
        CorpusEntry("mixed-modes", SqrtHolomorphic(polynomial(1, -3, Fraction(1, 2), 2, 0, Fraction(-1, 3))), "polynomial h with several odd and even modes", 3),
        CorpusEntry("central-binomial", SqrtPole((1,)), "1/sqrt(1-z): simple pole in w", 2, central_binomial_value),
        CorpusEntry("geometric", SqrtPole((1, 0)), "1/(1-z): exact polynomial family", 2),
        CorpusEntry("pole-superposition", SqrtPole((2,), w), "2/w + w", 2),
        CorpusEntry("pole-order-three", SqrtPole((1, -1, 2), polynomial(0, 1, 1)), "w^-3 - w^-2 + 2/w + w + w^2", 2),
        CorpusEntry("general-alpha-third", SqrtHolomorphic(w, Fraction(1, 3)), "(1-z)^(1/3)", 3),
        CorpusEntry(
            "uniformized-cubic",
            RawLocalMap(TruncatedSeries.from_coeffs([1, 0, -1, 1], 14), TruncatedSeries.from_coeffs([0, 1], 14)),
            "lambda = 1 - s^2 + s^3, g = s",
            2,
        ),
        CorpusEntry("uniformized-catalan", catalan_local_map(16), "Catalan local map, pulled back", 2),
        CorpusEntry(
            "uniformized-pole",
            RawLocalMap(
                TruncatedSeries.from_coeffs([1, 0, -1], 12),
                TruncatedSeries.from_coeffs([1, 1], 12),
                pole_order=1,
            ),
            "lambda = 1 - s^2, g = 1/s + 1",
            2,
        ),
        CorpusEntry(
            "uniformized-scaled",
            RawLocalMap(
                TruncatedSeries.from_coeffs([2, 0, -2, 1, Fraction(1, 3)], 14),
                TruncatedSeries.from_coeffs([1, 1, Fraction(-1, 2)], 14),
                R=Fraction(2),
            ),
            "lambda(0) = 2: radius 2",
            2,
        ),
        CorpusEntry("equivariant-d2", EquivariantEnvelope(SqrtHolomorphic(w), 2, 0), "sqrt(1 - z^2)", 2),
        CorpusEntry(
            "equivariant-d3-catalan",
            EquivariantEnvelope(cat, 3, 1),
            "z * Catalan(z^3)",
            2,
            _envelope_closed(catalan_value, 3, 1),
        ),
        CorpusEntry("equivariant-pole", EquivariantEnvelope(SqrtPole((1,)), 3, 1), "z / sqrt(1 - z^3)", 2),
        CorpusEntry(
            "interior-pole",
            InteriorPole(
                Fraction(1), (1,), 2, 0, rest=EquivariantEnvelope(SqrtHolomorphic(w), 2, 0, Fraction(2))
            ),
            "1/(z^2 - 1) + sqrt(1 - (z/2)^2)",
        ),
        CorpusEntry(
            "interior-pole-double",
            InteriorPole(
                Fraction(1),
                (1, Fraction(1, 2)),
                3,
                1,
                rest=EquivariantEnvelope(SqrtPole((1,)), 3, 1, Fraction(3, 2)),
            ),
            "z/(z^3-1)^2 + (z/2)/(z^3-1) + z/sqrt(1 - (2z/3)^3)",
        ),
    )


CORPUS = {e.name: e for e in _corpus()}


def get(name: str) -> CorpusEntry:
    try:
        return CORPUS[name]
    except KeyError:
        raise KeyError(f"unknown corpus model {name!r}; known: {', '.join(CORPUS)}") from None
