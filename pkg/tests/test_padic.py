"""Truncated p-adic scalars: valuations, units, the geometric resolvent."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from drwkz.padic import (
    INFINITE_VALUATION,
    NonUnitError,
    PadicScalar,
    geometric_resolvent,
    invert_unit,
    teichmuller_unit,
    val_p,
)


def test_val_p_examples():
    assert val_p(50, 5) == 2
    assert val_p(1, 7) == 0
    assert val_p(Fraction(3, 4), 2) == -2


def test_val_p_zero_is_infinite():
    v = val_p(0, 5)
    assert v is INFINITE_VALUATION
    assert v > 10**9
    assert not (v < 0)
    assert v >= 0


def test_val_p_requires_prime():
    with pytest.raises(ValueError):
        val_p(10, 6)


def test_invert_unit_examples():
    x = PadicScalar(5, 2, 2)
    y = invert_unit(x)
    assert y.value == 13
    assert (x * y).value == 1
    assert invert_unit(PadicScalar(5, 2, 1)).value == 1
    assert invert_unit(PadicScalar(3, 1, 2)).value == 2


def test_invert_non_unit_rejected():
    with pytest.raises(NonUnitError):
        invert_unit(PadicScalar(5, 2, 10))


def test_invert_unit_involution():
    rng = random.Random(0)
    for _ in range(50):
        p = rng.choice([3, 5, 7])
        a = rng.randrange(1, 5)
        v = rng.randrange(1, p**a)
        if v % p == 0:
            continue
        x = PadicScalar(p, a, v)
        assert invert_unit(invert_unit(x)) == x


def test_valuation_and_zero_class():
    x = PadicScalar(5, 3, 50)
    assert x.valuation == 2
    z = PadicScalar(5, 3, 0)
    assert z.valuation == 3  # reported as ">= precision"
    assert z.is_zero_class()


def test_mixed_precision_reduces():
    x = PadicScalar(5, 3, 7)
    y = PadicScalar(5, 2, 24)
    assert (x + y).precision == 2
    assert (x + y).value == (7 + 24) % 25


def test_geometric_resolvent_examples():
    # a = 1: only the i = 0 term survives
    x = PadicScalar(5, 1, 3)
    assert geometric_resolvent(lambda s: s * 2, x).value == 3
    # p = 5, a = 2, F = identity: 1 + 5 = 6
    one = PadicScalar(5, 2, 1)
    assert geometric_resolvent(lambda s: s, one).value == 6
    zero = PadicScalar(5, 2, 0)
    assert geometric_resolvent(lambda s: s, zero).value == 0


def test_geometric_resolvent_inverts_one_minus_pF():
    rng = random.Random(1)
    for _ in range(60):
        p = rng.choice([3, 5, 7])
        a = rng.randrange(1, 5)
        c = rng.randrange(0, p**a)
        x = PadicScalar(p, a, rng.randrange(0, p**a))

        def F(s, c=c):
            return s * c

        y = geometric_resolvent(F, x)
        assert (y - F(y) * p) == x


@given(
    st.sampled_from([2, 3, 5, 7]),
    st.integers(min_value=1, max_value=4),
    st.integers(),
    st.integers(),
    st.integers(),
)
def test_ring_axioms(p, a, u, v, w):
    x, y, z = (PadicScalar(p, a, t) for t in (u, v, w))
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == PadicScalar(p, a, 0)


def test_teichmuller_unit():
    assert teichmuller_unit(2, 5, 2) == 7
    assert 7**5 % 25 == 7
    assert teichmuller_unit(1, 7, 3) == 1
    for p, a in ((3, 3), (5, 4), (7, 2)):
        for c in range(1, p):
            t = teichmuller_unit(c, p, a)
            assert pow(t, p, p**a) == t
            assert t % p == c
    with pytest.raises(NonUnitError):
        teichmuller_unit(5, 5, 2)
