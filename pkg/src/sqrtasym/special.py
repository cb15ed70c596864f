"""Exact special constants: binomial series coefficients, generalized Bernoulli
polynomials, Gamma-ratio expansion constants, Stirling (Laplace) constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath

from .errors import PreconditionError
from .series import (
    DEFAULT_PRECISION,
    ExactScalar,
    TruncatedSeries,
    series_exp,
    series_pow,
    series_reciprocal,
    to_mpf,
)


@dataclass(frozen=True, order=True)
class HalfInteger:
    """An element of (1/2)Z, stored as twice its value."""

    twice: int

    @classmethod
    def of(cls, x) -> "HalfInteger":
        q = Fraction(x) * 2
        if q.denominator != 1:
            raise PreconditionError(f"{x} is not a half-integer")
        return cls(int(q))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __str__(self):
        return str(self.twice // 2) if self.is_integer else f"{self.twice}/2"


Exponent = Union[Fraction, int, HalfInteger]


def as_fraction(x) -> Fraction:
    if isinstance(x, HalfInteger):
        return x.value
    if isinstance(x, float):
        raise PreconditionError("exact rational expected, got a float")
    return Fraction(x)


def binom_coeff(beta, n: int) -> Fraction:
    """``[z^n] (1 - z)**beta`` for rational ``beta``."""
    if n < 0:
        raise PreconditionError("n must be non-negative")
    b = as_fraction(beta)
    p, q = b.numerator, b.denominator
    num = math.prod(p - i * q for i in range(n))
    return Fraction((-1) ** n * num, q**n * math.factorial(n))


def gen_binom(x, l: int) -> Fraction:
    """``x (x-1) ... (x-l+1) / l!`` for rational ``x``."""
    x = as_fraction(x)
    out = Fraction(1)
    for i in range(l):
        out *= (x - i) / (i + 1)
    return out


@lru_cache(maxsize=None)
def _bernoulli_jet(beta: Fraction, z: Fraction, L: int) -> tuple:
    # t/(e^t - 1) = 1 / sum t^k/(k+1)!
    base = TruncatedSeries.from_coeffs([Fraction(1, math.factorial(k + 1)) for k in range(L + 1)])
    f = series_pow(series_reciprocal(base), beta)
    ez = TruncatedSeries.from_coeffs([z**k / math.factorial(k) for k in range(L + 1)])
    return tuple(c * math.factorial(k) for k, c in enumerate((f * ez).coeffs))


def gen_bernoulli_table(L: int, beta, z) -> tuple:
    """``B_0^{(beta)}(z), ..., B_L^{(beta)}(z)``."""
    if L < 0:
        raise PreconditionError("L must be non-negative")
    return _bernoulli_jet(as_fraction(beta), as_fraction(z), L)


def gen_bernoulli(l: int, beta, z) -> Fraction:
    """Generalized Bernoulli polynomial: ``l! [t^l] (t/(e^t-1))**beta * e^(z t)``."""
    return gen_bernoulli_table(l, beta, z)[l]


def tricomi_erdelyi_e(a, b, l: int) -> Fraction:
    """Coefficient of ``z^(-l)`` in ``z^(b-a) Gamma(z+a)/Gamma(z+b)`` as ``z -> oo``.

    Equals ``binom(a-b, l) * B_l^{(a-b+1)}(a)``.
    """
    a, b = as_fraction(a), as_fraction(b)
    if l == 0:
        return Fraction(1)
    return gen_binom(a - b, l) * gen_bernoulli(l, a - b + 1, a)


@dataclass(frozen=True)
class ETable:
    """Constants ``e_0 = 1, e_1, ..., e_L`` of the Gamma-ratio expansion for ``(a, b)``.

    ``beta`` is the order ``a - b + 1`` of the Bernoulli family involved.
    """

    a: Fraction
    b: Fraction
    entries: tuple

    @property
    def beta(self) -> Fraction:
        return self.a - self.b + 1

    @property
    def L(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, l: int) -> Fraction:
        return self.entries[l]


@lru_cache(maxsize=None)
def _e_entries(a: Fraction, b: Fraction, L: int) -> tuple:
    B = gen_bernoulli_table(L, a - b + 1, a)
    return tuple(gen_binom(a - b, l) * B[l] for l in range(L + 1))


def e_table(a, b, L: int) -> ETable:
    if L < 0:
        raise PreconditionError("L must be non-negative")
    a, b = as_fraction(a), as_fraction(b)
    return ETable(a, b, _e_entries(a, b, L))


def gamma_exact(x) -> ExactScalar:
    """Gamma at a positive integer or half-integer, as ``q * sqrt(pi)^k``."""
    x = as_fraction(x)
    if x.denominator == 1:
        if x <= 0:
            raise PreconditionError(f"Gamma has a pole at {x}")
        return ExactScalar(Fraction(math.factorial(int(x) - 1)))
    if x.denominator != 2:
        raise PreconditionError(f"Gamma({x}) is not in Q*sqrt(pi)")
    # walk from Gamma(1/2) = sqrt(pi)
    q, t = Fraction(1), Fraction(1, 2)
    while t < x:
        q *= t
        t += 1
    while t > x:
        t -= 1
        q /= t
    return ExactScalar(q, 1)


def gamma_eval(x, prec: int | None = None) -> mpmath.mpf:
    """Gamma at a real argument to ``prec`` bits (mpmath backend)."""
    prec = prec or DEFAULT_PRECISION
    with mpmath.workprec(prec + 16):
        v = to_mpf(x, prec + 16)
        if v <= 0 and v == mpmath.floor(v):
            raise PreconditionError(f"Gamma has a pole at {x}")
        g = mpmath.gamma(v)
    with mpmath.workprec(prec):
        return +g


def root_constant(beta, prec: int | None = None):
    """``-beta / Gamma(1 - beta)``: the leading constant of ``[z^n](1-z)^beta``
    relative to ``n^(-beta-1)``.

    Exact (``q * sqrt(pi)^k``) when ``2*beta`` is an integer, an ``mpf`` otherwise.
    """
    b = as_fraction(beta)
    if b.denominator == 1:
        if b >= 1:
            return ExactScalar(Fraction(0))
        return ExactScalar(-b / math.factorial(int(-b)))
    if b.denominator == 2:
        return ExactScalar(-b) / gamma_exact(1 - b)
    prec = prec or DEFAULT_PRECISION
    with mpmath.workprec(prec):
        return -to_mpf(b, prec) / gamma_eval(1 - b, prec)


@dataclass(frozen=True)
class FiniteSupport:
    """``(1-z)**beta`` for a non-negative integer ``beta``: a polynomial, so its
    coefficients vanish for ``n > beta`` and admit no power-law expansion."""

    beta: int
    coeffs: tuple


def cn_asymptotic(beta, K: int, prec: int | None = None):
    """Expansion of ``[z^n](1-z)^beta`` in powers ``n^(-beta-1-l)``, ``l = 0..K``.

    Returns an :class:`~sqrtasym.expansion.AsymptoticExpansion` with remainder
    ``O(n^(-beta-2-K))``, or :class:`FiniteSupport` when ``beta`` is a
    non-negative integer.
    """
    from .expansion import AsymptoticExpansion

    if K < 0:
        raise PreconditionError("K must be non-negative")
    b = as_fraction(beta)
    if b.denominator == 1 and b >= 0:
        n = int(b)
        return FiniteSupport(n, tuple(binom_coeff(b, k) for k in range(n + 1)))
    A = root_constant(b, prec)
    E = e_table(-b, 1, K)
    terms = {}
    for l in range(K + 1):
        if isinstance(A, ExactScalar):
            terms[b + 1 + l] = A * E[l]
        else:
            with mpmath.workprec(prec or DEFAULT_PRECISION):
                terms[b + 1 + l] = A * to_mpf(E[l], prec)
    exact_tail = b.denominator == 1  # negative integer: a polynomial in n
    return AsymptoticExpansion(
        terms=terms,
        remainder_exponent=None if exact_tail and K >= -b - 1 else b + 2 + K,
    )


def laplace_constants(K: int) -> tuple:
    """``c_1..c_K`` with ``Gamma(x+1) ~ sqrt(2 pi x) (x/e)^x (1 + c_1/x + c_2/x^2 + ...)``."""
    if K < 0:
        raise PreconditionError("K must be non-negative")
    if K == 0:
        return ()
    # log of the correction is sum B_2m / (2m (2m-1) x^(2m-1))
    s = [Fraction(0)] * (K + 1)
    B = gen_bernoulli_table(K + 1, 1, 0)
    for m in range(1, K // 2 + 2):
        if 2 * m - 1 <= K:
            s[2 * m - 1] = B[2 * m] / (2 * m * (2 * m - 1))
    return series_exp(TruncatedSeries.from_coeffs(s)).coeffs[1:]
