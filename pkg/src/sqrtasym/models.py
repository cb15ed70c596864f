"""Data describing a generating function near its dominant singularity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import PreconditionError
from .series import EXACT, RationalFunction, TruncatedSeries

Observable = Union[TruncatedSeries, RationalFunction]


def _is_exact(h) -> bool:
    return h is None or isinstance(h, RationalFunction) or h.domain == EXACT


@dataclass(frozen=True)
class SqrtHolomorphic:
    """``g(z) = h((1 - z)^alpha)`` with ``h`` analytic at 0 and ``0 < alpha < 1``.

    ``alpha = 1/2`` is the square-root case.
    """

    h: Observable
    alpha: Fraction = Fraction(1, 2)

    def __post_init__(self):
        a = Fraction(self.alpha)
        if not 0 < a < 1:
            raise PreconditionError("alpha must lie in (0, 1)")
        object.__setattr__(self, "alpha", a)

    @property
    def exact(self) -> bool:
        return _is_exact(self.h)


@dataclass(frozen=True)
class SqrtPole:
    """``g(z) = sum_j D_j w^(-j) + h(w)`` with ``w = sqrt(1 - z)``.

    ``principal`` lists ``(D_M, ..., D_1)``; ``h = None`` means no holomorphic part.
    """

    principal: tuple
    h: Optional[Observable] = None

    def __post_init__(self):
        pr = tuple(self.principal)
        if not pr:
            raise PreconditionError("principal part must have at least one coefficient")
        if pr[0] == 0:
            raise PreconditionError("leading principal coefficient D_M must be non-zero")
        object.__setattr__(self, "principal", tuple(Fraction(c) if isinstance(c, (int, str)) else c for c in pr))

    @property
    def M(self) -> int:
        return len(self.principal)

    def D(self, j: int):
        """Coefficient of ``w^(-j)``."""
        return self.principal[self.M - j] if 1 <= j <= self.M else Fraction(0)

    @property
    def exact(self) -> bool:
        return _is_exact(self.h) and all(isinstance(c, (int, Fraction)) for c in self.principal)


@dataclass(frozen=True)
class RawLocalMap:
    """Data before uniformization: ``lambda`` and the observable near the critical point.

    ``lambda_jet`` is the jet of ``lambda`` at the critical point ``z = 0`` with
    ``lambda(0) = R`` and ``lambda'(0) = 0``.  With ``pole_order = M > 0`` the
    observable has a pole of order ``M`` there and ``g_jet`` holds the jet of
    ``z^M g(z)``.  ``sheet = -1`` picks the other solution of
    ``lambda(h(w)) = R (1 - w^2)``.
    """

    lambda_jet: TruncatedSeries
    g_jet: TruncatedSeries
    R: object = Fraction(1)
    pole_order: int = 0
    sheet: int = 1

    def __post_init__(self):
        if self.sheet not in (1, -1):
            raise PreconditionError("sheet must be +1 or -1")
        if self.pole_order < 0:
            raise PreconditionError("pole_order must be non-negative")

    @property
    def exact(self) -> bool:
        return self.lambda_jet.domain == EXACT and self.g_jet.domain == EXACT


@dataclass(frozen=True)
class EquivariantEnvelope:
    """``g(z) = z^r * G((z / R)^d)`` where ``G`` is described by ``inner``.

    Coefficients vanish off the class ``r mod d`` and
    ``a_{d n + r} = R^(-d n) * [y^n] G(y)``.
    """

    inner: Union[SqrtHolomorphic, SqrtPole, RawLocalMap]
    d: int = 1
    r: int = 0
    R: object = Fraction(1)

    def __post_init__(self):
        if self.d < 1 or not 0 <= self.r < self.d:
            raise PreconditionError("need d >= 1 and 0 <= r < d")
        if isinstance(self.R, (int, str)):
            object.__setattr__(self, "R", Fraction(self.R))
        if self.R <= 0:
            raise PreconditionError("R must be positive")

    @property
    def exact(self) -> bool:
        return self.inner.exact and isinstance(self.R, Fraction)


@dataclass(frozen=True)
class InteriorPole:
    """``g(z) = z^r * sum_m c_m (z^d - Rp^d)^(-m) + rest`` with ``Rp < R``.

    ``principal`` lists ``(c_M, ..., c_1)``; ``rest`` is an envelope of radius
    ``R`` in the same residue class (or ``None``).
    """

    Rprime: Fraction
    principal: tuple
    d: int = 1
    r: int = 0
    rest: Optional[EquivariantEnvelope] = None
    R: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "Rprime", Fraction(self.Rprime))
        object.__setattr__(self, "principal", tuple(Fraction(c) for c in self.principal))
        if not self.principal or self.principal[0] == 0:
            raise PreconditionError("leading pole coefficient must be non-zero")
        if self.d < 1 or not 0 <= self.r < self.d:
            raise PreconditionError("need d >= 1 and 0 <= r < d")
        if self.Rprime <= 0:
            raise PreconditionError("Rprime must be positive")
        R = self.R
        if self.rest is not None:
            if (self.rest.d, self.rest.r) != (self.d, self.r):
                raise PreconditionError("rest must live in the same residue class")
            if R is None:
                R = self.rest.R
            elif Fraction(R) != self.rest.R:
                raise PreconditionError("R must match the radius of rest")
        if R is not None:
            R = Fraction(R)
            if not self.Rprime < R:
                raise PreconditionError("need Rprime < R")
        object.__setattr__(self, "R", R)

    @property
    def M(self) -> int:
        return len(self.principal)

    @property
    def exact(self) -> bool:
        return self.rest is None or self.rest.exact
