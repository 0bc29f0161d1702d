from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from copoly import multiindex as mi
from copoly.errors import OrderViolation

idx = st.lists(st.integers(0, 6), min_size=1, max_size=3).map(tuple)


def test_enumerate_counts_and_order():
    for n in range(1, 4):
        for d in range(6):
            out = mi.enumerate_indices(n, d)
            assert len(out) == comb(n + d, n)
            assert out == sorted(out, key=lambda a: (sum(a), a))
    assert mi.enumerate_indices(2, 1) == [(0, 0), (0, 1), (1, 0)]


def test_below_is_down_set():
    assert sorted(mi.below((1, 2))) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]


def test_sub_requires_order():
    assert mi.sub((3, 2), (1, 2)) == (2, 0)
    with pytest.raises(OrderViolation):
        mi.sub((1, 0), (0, 1))


@given(beta=idx)
def test_falling_factorial_identity(beta):
    for alpha in mi.below(beta):
        ff = mi.falling_factorial(beta, alpha)
        assert ff == mi.binomial(beta, alpha) * mi.factorial(alpha)
        assert ff * mi.factorial(mi.sub(beta, alpha)) == mi.factorial(beta)


@given(beta=idx)
def test_binomial_sum(beta):
    assert sum(mi.binomial(beta, a) for a in mi.below(beta)) == 2 ** sum(beta)


@given(alpha=idx)
def test_multinomial(alpha):
    assert mi.multinomial(alpha) * mi.factorial(alpha) == mi.factorial((sum(alpha),))


def test_power_and_units():
    assert mi.power((2, 3), (2, 1)) == 12
    assert mi.unit(3, 1) == (0, 1, 0)
    assert mi.add((1, 2), (3, 0)) == (4, 2)
    assert mi.leq((1, 2), (1, 3)) and not mi.leq((2, 0), (1, 3))
