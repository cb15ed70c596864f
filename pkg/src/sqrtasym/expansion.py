"""Finite asymptotic expansions of coefficient sequences."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import mpmath

from .errors import PreconditionError
from .series import DEFAULT_PRECISION, ExactScalar, to_mpf


def _is_zero(c) -> bool:
    return c == 0


def _add_scalars(a, b):
    if isinstance(a, mpmath.mpf) or isinstance(b, mpmath.mpf):
        return to_mpf(a) + to_mpf(b)
    return a + b


def _mul_scalars(a, b):
    if isinstance(a, mpmath.mpf) or isinstance(b, mpmath.mpf):
        return to_mpf(a) * to_mpf(b)
    return a * b


@dataclass(frozen=True)
class AsymptoticExpansion:
    """Describes a subsequence of coefficients as ``n -> oo``:

        a_{d n + r} = radius^(-d n) * ( sum_i polynomial[i] * n^i
                                       + sum_e terms[e] * n^(-e)
                                       + O(n^(-remainder_exponent)) )

    with ``d = period`` and ``r = residue``.  ``remainder_exponent = None``
    means the bracket is exact for every ``n >= 1`` (up to a geometric
    remainder ``O((radius/remainder_radius)^(d n))`` if ``remainder_radius`` is
    set).  Exponents of ``terms`` may be non-positive; they then describe
    growing powers.
    """

    terms: Mapping = field(default_factory=dict)
    remainder_exponent: Fraction | None = None
    polynomial: tuple = ()
    radius: object = Fraction(1)
    period: int = 1
    residue: int = 0
    remainder_radius: object = None
    notes: tuple = ()

    def __post_init__(self):
        terms = {}
        for e, c in self.terms.items():
            e = Fraction(e)
            if _is_zero(c):
                continue
            terms[e] = _add_scalars(terms[e], c) if e in terms else c
        terms = {e: c for e, c in sorted(terms.items()) if not _is_zero(c)}
        rem = None if self.remainder_exponent is None else Fraction(self.remainder_exponent)
        if rem is not None and any(e >= rem for e in terms):
            raise PreconditionError("an expansion term lies at or beyond the remainder order")
        poly = list(self.polynomial)
        while poly and _is_zero(poly[-1]):
            poly.pop()
        if self.period < 1 or not 0 <= self.residue < self.period:
            raise PreconditionError("need period >= 1 and 0 <= residue < period")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "remainder_exponent", rem)
        object.__setattr__(self, "polynomial", tuple(poly))
        object.__setattr__(self, "notes", tuple(self.notes))

    def coefficient(self, exponent):
        """Constant in front of ``n^(-exponent)`` (exact 0 when absent)."""
        return self.terms.get(Fraction(exponent), Fraction(0))

    @property
    def exponents(self) -> tuple:
        return tuple(self.terms)

    @property
    def leading_exponent(self) -> Fraction | None:
        """Smallest ``e`` with a non-zero ``n^(-e)`` contribution (polynomial included)."""
        cands = list(self.terms)
        if self.polynomial:
            cands.append(Fraction(-(len(self.polynomial) - 1)))
        return min(cands) if cands else None

    @property
    def leading_constant(self):
        e = self.leading_exponent
        if e is None:
            return Fraction(0)
        c = self.coefficient(e)
        if e <= 0 and self.polynomial and -e == len(self.polynomial) - 1:
            c = _add_scalars(c, self.polynomial[-1])
        return c

    @property
    def is_exact(self) -> bool:
        return self.remainder_exponent is None

    @property
    def is_exact_rational(self) -> bool:
        """No sqrt(pi) or float constants: the bracket is a rational polynomial."""
        return (
            self.is_exact
            and all(isinstance(c, Fraction) or (isinstance(c, ExactScalar) and c.k == 0) for c in self.terms.values())
            and all(isinstance(c, (int, Fraction)) for c in self.polynomial)
            and isinstance(self.radius, (int, Fraction))
        )

    def _envelope(self):
        return (self.radius, self.period, self.residue)

    def __add__(self, other: "AsymptoticExpansion") -> "AsymptoticExpansion":
        if not isinstance(other, AsymptoticExpansion):
            return NotImplemented
        if self._envelope() != other._envelope():
            raise PreconditionError("cannot add expansions with different radius/period/residue")
        rems = [x for x in (self.remainder_exponent, other.remainder_exponent) if x is not None]
        rem = min(rems) if rems else None
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = _add_scalars(terms[e], c) if e in terms else c
        if rem is not None:
            terms = {e: c for e, c in terms.items() if e < rem}
        n = max(len(self.polynomial), len(other.polynomial))
        p1 = list(self.polynomial) + [Fraction(0)] * (n - len(self.polynomial))
        p2 = list(other.polynomial) + [Fraction(0)] * (n - len(other.polynomial))
        rr = [x for x in (self.remainder_radius, other.remainder_radius) if x is not None]
        return AsymptoticExpansion(
            terms=terms,
            remainder_exponent=rem,
            polynomial=tuple(_add_scalars(a, b) for a, b in zip(p1, p2)),
            radius=self.radius,
            period=self.period,
            residue=self.residue,
            remainder_radius=min(rr) if rr else None,
            notes=self.notes + tuple(x for x in other.notes if x not in self.notes),
        )

    def scale(self, c) -> "AsymptoticExpansion":
        return self.replace(
            terms={e: _mul_scalars(c, v) for e, v in self.terms.items()},
            polynomial=tuple(_mul_scalars(c, v) for v in self.polynomial),
        )

    def replace(self, **kw) -> "AsymptoticExpansion":
        base = dict(
            terms=self.terms,
            remainder_exponent=self.remainder_exponent,
            polynomial=self.polynomial,
            radius=self.radius,
            period=self.period,
            residue=self.residue,
            remainder_radius=self.remainder_radius,
            notes=self.notes,
        )
        base.update(kw)
        return AsymptoticExpansion(**base)

    def truncated(self, cutoff) -> "AsymptoticExpansion":
        """Drop terms at exponents ``>= cutoff`` and declare that order as remainder."""
        cutoff = Fraction(cutoff)
        if self.remainder_exponent is not None and cutoff > self.remainder_exponent:
            raise PreconditionError("cannot truncate past the known remainder order")
        return self.replace(
            terms={e: c for e, c in self.terms.items() if e < cutoff},
            remainder_exponent=cutoff,
        )

    def __str__(self):
        parts = []
        for i, c in enumerate(self.polynomial):
            if not _is_zero(c):
                parts.append(f"({c})" + ("" if i == 0 else f"*n^{i}"))
        for e, c in self.terms.items():
            parts.append(f"({c})*n^({-e})")
        body = " + ".join(parts) or "0"
        if self.remainder_exponent is not None:
            body += f" + O(n^({-self.remainder_exponent}))"
        return body


def evaluate_expansion(exp: AsymptoticExpansion, n: int, raw: bool = False, prec: int | None = None):
    """Numerical value of the expansion at index ``n`` of the subsequence.

    With ``raw=False`` this is the predicted ``a_{d n + r}`` (including the
    ``radius^(-d n)`` factor); ``raw=True`` returns only the bracket.
    """
    prec = prec or DEFAULT_PRECISION
    if n < 1:
        raise PreconditionError("expansions are evaluated at n >= 1")
    with mpmath.workprec(prec + 16):
        nn = mpmath.mpf(n)
        s = mpmath.mpf(0)
        for i, c in enumerate(exp.polynomial):
            s += to_mpf(c, prec + 16) * nn**i
        for e, c in exp.terms.items():
            s += to_mpf(c, prec + 16) * mpmath.power(nn, -to_mpf(e, prec + 16))
        if not raw and exp.radius != 1:
            s *= mpmath.power(to_mpf(exp.radius, prec + 16), -exp.period * n)
    with mpmath.workprec(prec):
        return +s


def exact_value(exp: AsymptoticExpansion, n: int, raw: bool = False) -> Fraction:
    """Exact rational value of an exact-rational expansion at ``n``."""
    if not exp.is_exact_rational:
        raise PreconditionError("expansion is not an exact rational formula")
    s = Fraction(0)
    for i, c in enumerate(exp.polynomial):
        s += Fraction(c) * n**i
    for e, c in exp.terms.items():
        c = c.q if isinstance(c, ExactScalar) else c
        if e.denominator != 1:
            raise PreconditionError("fractional power of n is not rational")
        s += Fraction(c) * Fraction(n) ** int(-e)
    if not raw and exp.radius != 1:
        s *= Fraction(exp.radius) ** (-exp.period * n)
    return s


def evaluate_at_index(exp: AsymptoticExpansion, m: int, prec: int | None = None):
    """Predicted raw coefficient ``a_m``; ``m`` must lie in the residue class."""
    d, r = exp.period, exp.residue
    if m < r + d or (m - r) % d:
        raise PreconditionError(f"index {m} is not of the form {d} n + {r} with n >= 1")
    return evaluate_expansion(exp, (m - r) // d, prec=prec)
