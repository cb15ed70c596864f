import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sqrtasym.corpus import CORPUS, catalan_value, central_binomial_value
from sqrtasym.equivariant import (
    check_vanishing,
    equivariant_expansion,
    equivariant_pole_expansion,
    expand,
    interior_pole_expansion,
    interior_pole_polynomial,
    lift_from_invariant,
    reduce_to_invariant,
)
from sqrtasym.errors import PreconditionError
from sqrtasym.expansion import exact_value
from sqrtasym.models import EquivariantEnvelope, InteriorPole, SqrtHolomorphic, SqrtPole
from sqrtasym.oracle import _interior_pole_coeffs, exact_coeffs, geometric_ratio
from sqrtasym.series import polynomial
from sqrtasym.special import binom_coeff
from sqrtasym.tauber import pole_expansion, sqrt_expansion

HALF = Fraction(1, 2)


def test_check_vanishing():
    assert check_vanishing([0, 1, 0, 0, 1, 0, 0, 1], 3, 1)
    assert not check_vanishing([1] * 6, 2, 0)
    assert check_vanishing([1, 2, 3], 1, 0)


def test_reduce_to_invariant():
    assert reduce_to_invariant([0, 1, 0, 0, 1, 0, 0], 1, 3) == [1, 0, 0, 1, 0, 0]
    seq = [3, 1, 4]
    assert reduce_to_invariant(seq, 0) == seq
    with pytest.raises(PreconditionError):
        reduce_to_invariant([1, 1, 0], 1)
    with pytest.raises(PreconditionError):
        reduce_to_invariant([0, 1, 1], 1, 2)


@given(st.lists(st.integers(-5, 5), max_size=30), st.integers(0, 5))
def test_shift_round_trip(seq, r):
    assert reduce_to_invariant(lift_from_invariant(seq, r), r) == seq


def test_aperiodic_envelope_is_plain_expansion():
    inner = SqrtHolomorphic(polynomial(0, 1, 3))
    e = equivariant_expansion(EquivariantEnvelope(inner, 1, 0), 2)
    assert e.terms == sqrt_expansion(inner.h, 2).terms and e.period == 1


def test_even_envelope_coefficients():
    model = EquivariantEnvelope(SqrtHolomorphic(polynomial(0, 1)), 2, 0)
    seq = exact_coeffs(model, 60)
    assert all(seq[2 * n] == binom_coeff(HALF, n) for n in range(31))
    assert all(seq[2 * n + 1] == 0 for n in range(30))
    e = expand(model, 2)
    assert (e.period, e.residue) == (2, 0)
    assert e.terms == sqrt_expansion(polynomial(0, 1), 2).terms


def test_odd_residue_shifts_by_one():
    even = exact_coeffs(EquivariantEnvelope(SqrtHolomorphic(polynomial(0, 1)), 2, 0), 60)
    odd = exact_coeffs(EquivariantEnvelope(SqrtHolomorphic(polynomial(0, 1)), 2, 1), 61)
    assert odd == [0] + even


def test_pole_envelopes():
    model = EquivariantEnvelope(SqrtPole((1,)), 2, 0)
    seq = exact_coeffs(model, 40)
    assert all(seq[2 * n] == central_binomial_value(n) for n in range(21))
    assert equivariant_pole_expansion(EquivariantEnvelope(SqrtPole((1,)), 1, 0), 2).terms == pole_expansion((1,), None, 2).terms
    model3 = CORPUS["equivariant-pole"].model
    seq3 = exact_coeffs(model3, 60)
    assert check_vanishing(seq3, 3, 1)
    assert all(seq3[3 * n + 1] == central_binomial_value(n) for n in range(20))


def test_envelope_wrong_kind():
    with pytest.raises(PreconditionError):
        equivariant_expansion(EquivariantEnvelope(SqrtPole((1,)), 2, 0), 1)
    with pytest.raises(PreconditionError):
        equivariant_pole_expansion(EquivariantEnvelope(SqrtHolomorphic(polynomial(0, 1)), 2, 0), 1)


def test_catalan_envelope_exact():
    model = CORPUS["equivariant-d3-catalan"].model
    seq = exact_coeffs(model, 900)
    assert check_vanishing(seq, 3, 1)
    assert all(seq[3 * n + 1] == catalan_value(n) for n in range(300))


@pytest.mark.parametrize("d", [2, 3, 5])
def test_substitution_consistency(d):
    inner = CORPUS["mixed-modes"].model
    base = exact_coeffs(inner, 200)
    lifted = exact_coeffs(EquivariantEnvelope(inner, d, 0), d * 200)
    assert all(lifted[d * n] == base[n] for n in range(201))


# --- interior poles --------------------------------------------------------


def test_interior_pole_geometric():
    model = InteriorPole(Fraction(1), (1,), 2, 0)
    e = interior_pole_expansion(model)
    assert e.polynomial == (-1,) and e.is_exact
    seq = exact_coeffs(model, 50)
    assert all(seq[2 * n] == -1 for n in range(26)) and check_vanishing(seq, 2, 0)


def test_interior_pole_double_at_half():
    # 1/(z - 1/2)^2 = sum (n+1) 2^(n+2) z^n
    model = InteriorPole(HALF, (1, 0), 1, 0)
    e = interior_pole_expansion(model)
    assert all(exact_value(e, n) == (n + 1) * 2 ** (n + 2) for n in range(1, 60))
    assert exact_coeffs(model, 30) == [(n + 1) * 2 ** (n + 2) for n in range(31)]


def test_interior_pole_square_is_convolution():
    N = 2000
    simple = _interior_pole_coeffs(InteriorPole(Fraction(1), (1,), 2, 0), N)
    square = [sum(simple[i] * simple[n - i] for i in range(0, n + 1, 2)) if n % 2 == 0 else 0 for n in range(N + 1)]
    e = interior_pole_expansion(InteriorPole(Fraction(1), (1, 0), 2, 0))
    assert all(exact_value(e, n) == square[2 * n] for n in range(1, N // 2 + 1))


def test_interior_pole_polynomial_sign():
    # 1/(y - 1) = -sum y^n; 1/(y - 1)^2 = sum (n+1) y^n
    assert interior_pole_polynomial(1, (1,), 1) == (-1,)
    assert interior_pole_polynomial(1, (1, 0), 1) == (1, 1)


def test_interior_pole_remainder_ratio():
    model = CORPUS["interior-pole"].model
    e = expand(model)
    ratio, res = geometric_ratio(exact_coeffs(model, 400), e)
    assert e.remainder_radius == 2
    assert float(ratio) <= 0.5 + 0.02


def test_interior_pole_requires_separation():
    with pytest.raises(PreconditionError):
        InteriorPole(Fraction(2), (1,), 1, 0, rest=EquivariantEnvelope(SqrtHolomorphic(polynomial(0, 1)), 1, 0, Fraction(2)))


@given(st.integers(0, 2**32))
def test_random_periodic_vanishing(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 4)
    r = rng.randrange(d)
    cs = [Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(rng.randint(2, 6))]
    seq = exact_coeffs(EquivariantEnvelope(SqrtHolomorphic(polynomial(*cs)), d, r), 80)
    assert check_vanishing(seq, d, r)
    assert math.isclose(len(reduce_to_invariant(seq, r, d)), 81 - r)
