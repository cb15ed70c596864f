"""Rotational symmetry of order ``d``: residue classes, reduction, interior poles."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError
from .expansion import AsymptoticExpansion
from .models import EquivariantEnvelope, InteriorPole, RawLocalMap, SqrtHolomorphic, SqrtPole
from .tauber import binom_polynomial, expand_model


def check_vanishing(coeffs: Sequence, d: int, r: int) -> bool:
    """True iff every coefficient at an index ``!= r (mod d)`` is exactly zero."""
    if d < 1:
        raise PreconditionError("d must be >= 1")
    return all(c == 0 for n, c in enumerate(coeffs) if n % d != r % d)


def reduce_to_invariant(coeffs: Sequence, r: int, d: int = 1) -> list:
    """Drop the factor ``z^r``: ``a_n -> a_{n+r}``.  The result lives on multiples of ``d``."""
    coeffs = list(coeffs)
    if any(c != 0 for c in coeffs[:r]):
        raise PreconditionError("coefficients below index r must vanish")
    if not check_vanishing(coeffs, d, r):
        raise PreconditionError(f"coefficients do not vanish off the class {r} mod {d}")
    return coeffs[r:]


def lift_from_invariant(coeffs: Sequence, r: int) -> list:
    """Inverse of :func:`reduce_to_invariant`: multiply by ``z^r``."""
    return [0] * r + list(coeffs)


def _envelope(inner_exp: AsymptoticExpansion, env: EquivariantEnvelope) -> AsymptoticExpansion:
    if inner_exp.radius != 1:
        if env.d != 1:
            raise PreconditionError("inner model of a periodic envelope must have radius 1")
        radius = env.R * inner_exp.radius
    else:
        radius = env.R
    rr = inner_exp.remainder_radius
    return inner_exp.replace(
        radius=radius,
        period=env.d,
        residue=env.r,
        remainder_radius=None if rr is None else env.R * rr,
        notes=inner_exp.notes + (f"coefficients vanish off the class {env.r} mod {env.d}",)
        if env.d > 1
        else inner_exp.notes,
    )


def equivariant_expansion(env: EquivariantEnvelope, K, *, prec=None) -> AsymptoticExpansion:
    """Expansion of ``a_{d n + r}`` for an envelope around an analytic square-root model."""
    if not isinstance(env.inner, (SqrtHolomorphic, RawLocalMap)):
        raise PreconditionError("equivariant_expansion needs an analytic inner model")
    return _envelope(expand_model(env.inner, K, prec=prec), env)


def equivariant_pole_expansion(env: EquivariantEnvelope, K, *, prec=None) -> AsymptoticExpansion:
    """Envelope around a :class:`SqrtPole` (or a pole-type raw local map)."""
    inner = env.inner
    if not (isinstance(inner, SqrtPole) or (isinstance(inner, RawLocalMap) and inner.pole_order)):
        raise PreconditionError("equivariant_pole_expansion needs a pole-type inner model")
    return _envelope(expand_model(inner, K, prec=prec), env)


def interior_pole_polynomial(Rprime, principal: Sequence, d: int) -> tuple:
    """Coefficients in ``n`` of ``P(n)`` with
    ``[y^n] sum_m c_m (y - Rp^d)^(-m) = Rp^(-d n) P(n)``; ``principal = (c_M..c_1)``."""
    Rp = Fraction(Rprime)
    M = len(principal)
    poly = [Fraction(0)] * M
    for m in range(1, M + 1):
        c = Fraction(principal[M - m])
        if c == 0:
            continue
        # (y - a)^(-m) = (-a)^(-m) (1 - y/a)^(-m),  a = Rp^d
        scale = c * Fraction(-1) ** m * Rp ** (-m * d)
        for i, b in enumerate(binom_polynomial(m)):
            poly[i] += scale * b
    return tuple(poly)


def interior_pole_expansion(model: InteriorPole) -> AsymptoticExpansion:
    """Exact polynomial-times-geometric description of ``a_{d n + r}``.

    The pole part is reproduced exactly; ``rest`` only contributes a geometric
    remainder ``O((Rp/R)^(d n))`` relative to the main term.
    """
    return AsymptoticExpansion(
        polynomial=interior_pole_polynomial(model.Rprime, model.principal, model.d),
        remainder_exponent=None,
        radius=model.Rprime,
        period=model.d,
        residue=model.r,
        remainder_radius=model.R if model.rest is not None else None,
        notes=(f"poles at the {model.d}-th roots of Rprime^{model.d}",),
    )


def expand(model, K=2, *, prec=None) -> AsymptoticExpansion:
    """Asymptotic expansion of the coefficients of any supported model."""
    if isinstance(model, EquivariantEnvelope):
        inner = model.inner
        if isinstance(inner, SqrtPole) or (isinstance(inner, RawLocalMap) and inner.pole_order):
            return equivariant_pole_expansion(model, K, prec=prec)
        return equivariant_expansion(model, K, prec=prec)
    if isinstance(model, InteriorPole):
        return interior_pole_expansion(model)
    return expand_model(model, K, prec=prec)
