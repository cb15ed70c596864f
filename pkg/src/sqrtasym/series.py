"""Truncated power series (jets) over exact rationals, big floats and Q*sqrt(pi)^k.

A :class:`TruncatedSeries` stores the Taylor coefficients ``c_0..c_N`` of a
function at 0 together with the promise that nothing beyond degree ``N`` is
known.  Every operation computes the provable truncation order of its result
and never reports coefficients past it.
"""

from __future__ import annotations

import contextlib
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import mpmath

from .errors import DomainMismatchError, MixedPiPowerError, PreconditionError, TruncationError

DEFAULT_PRECISION = int(os.environ.get("SQRTASYM_PRECISION", "256"))

EXACT = "exact"
FLOAT = "float"
SQRTPI = "sqrtpi"
DOMAINS = (EXACT, FLOAT, SQRTPI)


def to_mpf(x, prec: int | None = None) -> mpmath.mpf:
    """Round an exact or float scalar to an ``mpf`` at ``prec`` bits."""
    with mpmath.workprec(prec or DEFAULT_PRECISION):
        if isinstance(x, ExactScalar):
            return x.to_mpf(prec)
        if isinstance(x, Fraction):
            return mpmath.mpf(x.numerator) / x.denominator
        return mpmath.mpf(x)


def _render_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, eq=False)
class ExactScalar:
    """The real number ``q * sqrt(pi)**k`` with ``q`` rational."""

    q: Fraction
    k: int = 0

    def __post_init__(self):
        q = Fraction(self.q)
        object.__setattr__(self, "q", q)
        if q == 0:
            object.__setattr__(self, "k", 0)

    @staticmethod
    def lift(x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return ExactScalar(Fraction(x), 0)
        raise DomainMismatchError(f"cannot treat {type(x).__name__} as an exact scalar")

    def _other(self, x):
        try:
            return self.lift(x)
        except DomainMismatchError:
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.q == 0:
            return o
        if o.q == 0:
            return self
        if self.k != o.k:
            raise MixedPiPowerError(
                f"cannot add {self} and {o}: powers of sqrt(pi) differ ({self.k} vs {o.k})"
            )
        return ExactScalar(self.q + o.q, self.k)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.q, self.k)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ExactScalar(self.q * o.q, self.k + o.k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.q == 0:
            raise ZeroDivisionError("division by an exact zero")
        return ExactScalar(self.q / o.q, self.k - o.k)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.q == o.q and self.k == o.k

    def __hash__(self):
        return hash(self.q) if self.k == 0 else hash((self.q, self.k))

    def __bool__(self):
        return self.q != 0

    def to_mpf(self, prec: int | None = None) -> mpmath.mpf:
        with mpmath.workprec(prec or DEFAULT_PRECISION):
            v = mpmath.mpf(self.q.numerator) / self.q.denominator
            if self.k:
                v *= mpmath.sqrt(mpmath.pi) ** self.k
            return v

    def __str__(self):
        if self.k == 0:
            return _render_fraction(self.q)
        return f"{_render_fraction(self.q)}·π^{{{_render_fraction(Fraction(self.k, 2))}}}"

    __repr__ = __str__


Scalar = Union[Fraction, mpmath.mpf, ExactScalar]


def _coerce(c, domain: str):
    if domain == EXACT:
        if isinstance(c, ExactScalar):
            if c.k:
                raise DomainMismatchError(f"{c} is not rational")
            return c.q
        if isinstance(c, (float, mpmath.mpf, mpmath.mpc, complex)):
            raise DomainMismatchError("float coefficient in an exact series")
        return Fraction(c)
    if domain == FLOAT:
        if isinstance(c, ExactScalar):
            return c.to_mpf()
        if isinstance(c, Fraction):
            return mpmath.mpf(c.numerator) / c.denominator
        return mpmath.mpf(c)
    if domain == SQRTPI:
        if isinstance(c, str):
            c = Fraction(c)
        return ExactScalar.lift(c)
    raise ValueError(f"unknown domain {domain!r}")


def _zero(domain: str):
    if domain == FLOAT:
        return mpmath.mpf(0)
    if domain == SQRTPI:
        return ExactScalar(Fraction(0))
    return Fraction(0)


def _one(domain: str):
    if domain == FLOAT:
        return mpmath.mpf(1)
    if domain == SQRTPI:
        return ExactScalar(Fraction(1))
    return Fraction(1)


@dataclass(frozen=True)
class TruncatedSeries:
    """Jet ``c_0 + c_1 z + ... + c_N z^N + O(z^(N+1))``.

    ``order`` is ``N``; it is always ``len(coeffs) - 1``.
    """

    coeffs: tuple
    domain: str = EXACT
    prec: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise ValueError(f"unknown domain {self.domain!r}")
        if len(self.coeffs) == 0:
            raise ValueError("a jet needs at least its constant term")
        with _workprec(self.domain, self.prec):
            cs = tuple(_coerce(c, self.domain) for c in self.coeffs)
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def _raw(cls, coeffs, domain, prec) -> "TruncatedSeries":
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        object.__setattr__(obj, "domain", domain)
        object.__setattr__(obj, "prec", prec)
        return obj

    @classmethod
    def from_coeffs(
        cls,
        coeffs: Iterable,
        order: int | None = None,
        domain: str = EXACT,
        prec: int = DEFAULT_PRECISION,
    ) -> "TruncatedSeries":
        """Build a jet; ``order`` beyond the given coefficients pads with exact zeros."""
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = cs[: order + 1] + [0] * (order + 1 - len(cs))
        return cls(tuple(cs), domain, prec)

    @classmethod
    def identity(cls, order: int, domain: str = EXACT, prec: int = DEFAULT_PRECISION):
        return cls.from_coeffs([0, 1], order, domain, prec)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        if k < 0 or k > self.order:
            raise TruncationError(f"coefficient {k} lies beyond the known order {self.order}")
        return self.coeffs[k]

    def valuation(self) -> int:
        """Index of the first non-zero known coefficient (``order + 1`` if none)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.order + 1

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise TruncationError(f"cannot extend a jet of order {self.order} to {order}")
        return self._raw(self.coeffs[: order + 1], self.domain, self.prec)

    def shift(self, r: int) -> "TruncatedSeries":
        """Multiply by ``z**r``."""
        if r < 0:
            raise ValueError("shift must be non-negative")
        return self._raw((_zero(self.domain),) * r + self.coeffs, self.domain, self.prec)

    def substitute_power(self, d: int) -> "TruncatedSeries":
        """Jet of ``f(z**d)``; known through ``d*(N+1) - 1``."""
        if d < 1:
            raise ValueError("d must be a positive integer")
        zero = _zero(self.domain)
        out = [zero] * (d * (self.order + 1))
        for i, c in enumerate(self.coeffs):
            out[d * i] = c
        return self._raw(out, self.domain, self.prec)

    def scale(self, c) -> "TruncatedSeries":
        with _workprec(self.domain, self.prec):
            c = _coerce(c, self.domain)
            return self._raw([c * x for x in self.coeffs], self.domain, self.prec)

    def to_float(self, prec: int | None = None) -> "TruncatedSeries":
        prec = prec or self.prec
        return TruncatedSeries(tuple(to_mpf(c, prec) for c in self.coeffs), FLOAT, prec)

    def __call__(self, x):
        """Evaluate the jet as a polynomial (Horner)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + (c.to_mpf(self.prec) if isinstance(c, ExactScalar) else c)
        return acc

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_add(self, other)
        return series_add(self, self._constant(other))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_add(self, -other)
        return series_add(self, -self._constant(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def _constant(self, c) -> "TruncatedSeries":
        zero = _zero(self.domain)
        with _workprec(self.domain, self.prec):
            head = _coerce(c, self.domain)
        return self._raw((head,) + (zero,) * self.order, self.domain, self.prec)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            s = _render_fraction(c) if isinstance(c, Fraction) else str(c)
            terms.append(s if i == 0 else f"({s})*z^{i}")
        return " + ".join(terms or ["0"]) + f" + O(z^{self.order + 1})"


def _workprec(domain: str, prec: int):
    return mpmath.workprec(prec) if domain == FLOAT else contextlib.nullcontext()


def _same_domain(*fs: TruncatedSeries) -> tuple[str, int]:
    d, p = fs[0].domain, fs[0].prec
    for f in fs[1:]:
        if f.domain != d or (d == FLOAT and f.prec != p):
            raise DomainMismatchError(
                f"domain mismatch: {d}/{p} vs {f.domain}/{f.prec}"
            )
    return d, p


def _mul_lists(a: Sequence, b: Sequence, n_terms: int, zero) -> list:
    out = []
    la, lb = len(a), len(b)
    for n in range(n_terms):
        s = zero
        for i in range(max(0, n - lb + 1), min(n, la - 1) + 1):
            s = s + a[i] * b[n - i]
        out.append(s)
    return out


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    domain, prec = _same_domain(f, g)
    n = min(f.order, g.order)
    with _workprec(domain, prec):
        cs = [f.coeffs[i] + g.coeffs[i] for i in range(n + 1)]
    return TruncatedSeries._raw(cs, domain, prec)


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product known through ``min(N_f + v_g, N_g + v_f)``."""
    domain, prec = _same_domain(f, g)
    order = min(f.order + g.valuation(), g.order + f.valuation())
    with _workprec(domain, prec):
        cs = _mul_lists(f.coeffs, g.coeffs, order + 1, _zero(domain))
    return TruncatedSeries._raw(cs, domain, prec)


def series_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Jet of ``f(g(z))`` for ``g(0) = 0`` by Horner evaluation in the series ring."""
    domain, prec = _same_domain(f, g)
    if g.coeffs[0] != 0:
        raise PreconditionError("composition needs g(0) = 0")
    vg = g.valuation()
    k_min = next((k for k in range(1, f.order + 1) if f.coeffs[k] != 0), f.order + 1)
    order = min(vg * (f.order + 1) - 1, g.order + vg * (k_min - 1))
    zero = _zero(domain)
    # g_j past N_g cannot reach degree <= order (see the valuation bound above)
    gc = list(g.coeffs[: order + 1]) + [zero] * max(0, order - g.order)
    with _workprec(domain, prec):
        acc = [f.coeffs[-1]] + [zero] * order
        for c in reversed(f.coeffs[:-1]):
            acc = _mul_lists(acc, gc, order + 1, zero)
            acc[0] = acc[0] + c
    return TruncatedSeries._raw(acc, domain, prec)


def series_reciprocal(f: TruncatedSeries) -> TruncatedSeries:
    if f.coeffs[0] == 0:
        raise PreconditionError("reciprocal needs a non-zero constant term")
    domain, prec = f.domain, f.prec
    a = f.coeffs
    with _workprec(domain, prec):
        inv0 = _one(domain) / a[0]
        out = [inv0]
        for n in range(1, f.order + 1):
            s = _zero(domain)
            for k in range(1, n + 1):
                s = s + a[k] * out[n - k]
            out.append(-s * inv0)
    return TruncatedSeries._raw(out, domain, prec)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    from math import isqrt

    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def series_sqrt(f: TruncatedSeries) -> TruncatedSeries:
    """Principal square root.

    Exact mode needs a constant term that is the square of a rational
    (normally 1); float mode accepts any positive constant term.
    """
    domain, prec = f.domain, f.prec
    a0 = f.coeffs[0]
    if domain == SQRTPI:
        raise DomainMismatchError("square roots are not closed over Q*sqrt(pi)^k")
    if a0 == 0:
        raise PreconditionError("square root of a jet with zero constant term")
    with _workprec(domain, prec):
        if domain == EXACT:
            s0 = _rational_sqrt(a0)
            if s0 is None:
                raise PreconditionError(
                    f"constant term {a0} has no rational square root; use float mode"
                )
        else:
            if a0 < 0:
                raise PreconditionError("real float square root needs a positive constant term")
            s0 = mpmath.sqrt(a0)
        out = [s0]
        two_s0 = 2 * s0
        for n in range(1, f.order + 1):
            s = f.coeffs[n]
            for k in range(1, n):
                s = s - out[k] * out[n - k]
            out.append(s / two_s0)
    return TruncatedSeries._raw(out, domain, prec)


def series_reversion(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse by Lagrange inversion: ``[w^n] g = [z^(n-1)] (z/f)^n / n``."""
    if f.coeffs[0] != 0:
        raise PreconditionError("reversion needs f(0) = 0")
    if f.order < 1 or f.coeffs[1] == 0:
        raise PreconditionError("reversion needs f'(0) != 0")
    domain, prec = f.domain, f.prec
    N = f.order
    zero = _zero(domain)
    if N == 1:
        with _workprec(domain, prec):
            return TruncatedSeries._raw([zero, _one(domain) / f.coeffs[1]], domain, prec)
    phi = series_reciprocal(TruncatedSeries._raw(f.coeffs[1:], domain, prec)).coeffs
    out = [zero]
    with _workprec(domain, prec):
        power = [_one(domain)] + [zero] * (N - 1)
        for n in range(1, N + 1):
            power = _mul_lists(power, phi, N, zero)
            out.append(power[n - 1] / n)
    return TruncatedSeries._raw(out, domain, prec)


def series_decompose(h: TruncatedSeries, m: int) -> tuple[tuple, TruncatedSeries]:
    """Split ``h = head + z^m * tail`` with ``head`` of degree ``m - 1``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m > h.order:
        raise TruncationError(f"cannot split at {m}: jet known only through {h.order}")
    return tuple(h.coeffs[:m]), TruncatedSeries._raw(h.coeffs[m:], h.domain, h.prec)


def series_log(f: TruncatedSeries) -> TruncatedSeries:
    domain, prec = f.domain, f.prec
    a = f.coeffs
    with _workprec(domain, prec):
        if domain == FLOAT:
            if a[0] <= 0:
                raise PreconditionError("log needs a positive constant term")
            out = [mpmath.log(a[0])]
        else:
            if a[0] != 1:
                raise PreconditionError("exact log needs constant term 1")
            out = [_zero(domain)]
        for n in range(1, f.order + 1):
            s = n * a[n]
            for k in range(1, n):
                s = s - k * out[k] * a[n - k]
            out.append(s / (n * a[0]))
    return TruncatedSeries._raw(out, domain, prec)


def series_exp(f: TruncatedSeries) -> TruncatedSeries:
    domain, prec = f.domain, f.prec
    a = f.coeffs
    with _workprec(domain, prec):
        if domain == FLOAT:
            out = [mpmath.exp(a[0])]
        else:
            if a[0] != 0:
                raise PreconditionError("exact exp needs constant term 0")
            out = [_one(domain)]
        for n in range(1, f.order + 1):
            s = _zero(domain)
            for k in range(1, n + 1):
                s = s + k * a[k] * out[n - k]
            out.append(s / n)
    return TruncatedSeries._raw(out, domain, prec)


def series_pow(f: TruncatedSeries, beta) -> TruncatedSeries:
    """``f**beta`` on the principal branch, via ``exp(beta * log f)``."""
    return series_exp(series_log(f).scale(beta))


@dataclass(frozen=True)
class RationalFunction:
    """An exactly known function ``num(w) / den(w)`` with rational coefficients.

    Models use it when the whole function is known (polynomials included), as
    opposed to a :class:`TruncatedSeries`, which only carries a jet.
    """

    num: tuple
    den: tuple = (Fraction(1),)

    def __post_init__(self):
        num = [Fraction(c) for c in self.num] or [Fraction(0)]
        den = [Fraction(c) for c in self.den]
        while len(num) > 1 and num[-1] == 0:
            num.pop()
        while len(den) > 1 and den[-1] == 0:
            den.pop()
        if not den or den[0] == 0:
            raise PreconditionError("denominator must not vanish at 0")
        d0 = den[0]
        object.__setattr__(self, "num", tuple(c / d0 for c in num))
        object.__setattr__(self, "den", tuple(c / d0 for c in den))

    @property
    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    @property
    def degree(self) -> int:
        """Degree of the numerator (of the polynomial when ``is_polynomial``)."""
        return len(self.num) - 1

    def jet(self, order: int) -> TruncatedSeries:
        n = TruncatedSeries.from_coeffs(self.num, order)
        if self.is_polynomial:
            return n
        return series_mul(n, series_reciprocal(TruncatedSeries.from_coeffs(self.den, order)))

    def __call__(self, x):
        def horner(cs):
            acc = 0
            for c in reversed(cs):
                acc = acc * x + (mpmath.mpf(c.numerator) / c.denominator if not isinstance(x, Fraction) else c)
            return acc

        return horner(self.num) / horner(self.den) if not self.is_polynomial else horner(self.num)


def polynomial(*coeffs) -> RationalFunction:
    """Exact polynomial ``c_0 + c_1 w + ...``."""
    return RationalFunction(tuple(coeffs))
