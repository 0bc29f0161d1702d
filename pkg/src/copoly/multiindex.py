"""Multi-index helpers.

A multi-index is a plain tuple of nonnegative ints.  All combinatorial
quantities are exact Python integers.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import OrderViolation

MultiIndex = tuple[int, ...]


def as_index(alpha: Sequence[int]) -> MultiIndex:
    alpha = tuple(alpha)
    for a in alpha:
        if not isinstance(a, int) or isinstance(a, bool) or a < 0:
            raise ValueError(f"multi-index entries must be nonnegative ints: {alpha!r}")
    return alpha


def zero(n: int) -> MultiIndex:
    return (0,) * n


def unit(n: int, j: int) -> MultiIndex:
    return tuple(1 if i == j else 0 for i in range(n))


def degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def leq(alpha: MultiIndex, beta: MultiIndex) -> bool:
    """Componentwise partial order ``alpha <= beta``."""
    return all(a <= b for a, b in zip(alpha, beta))


def add(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(a + b for a, b in zip(alpha, beta))


def sub(beta: MultiIndex, alpha: MultiIndex) -> MultiIndex:
    if not leq(alpha, beta):
        raise OrderViolation(f"{alpha} <= {beta} fails")
    return tuple(b - a for a, b in zip(alpha, beta))


def factorial(alpha: MultiIndex) -> int:
    return math.prod(math.factorial(a) for a in alpha)


def binomial(beta: MultiIndex, alpha: MultiIndex) -> int:
    if not leq(alpha, beta):
        raise OrderViolation(f"binomial({beta}, {alpha}) needs alpha <= beta")
    return math.prod(math.comb(b, a) for a, b in zip(alpha, beta))


def falling_factorial(beta: MultiIndex, alpha: MultiIndex) -> int:
    """``beta!/(beta-alpha)!`` as a product of integers (no division)."""
    if not leq(alpha, beta):
        raise OrderViolation(f"falling_factorial({beta}, {alpha}) needs alpha <= beta")
    return math.prod(math.perm(b, a) for a, b in zip(alpha, beta))


def multinomial(alpha: MultiIndex) -> int:
    """``|alpha|!/alpha!``."""
    return math.factorial(sum(alpha)) // factorial(alpha)


def power(point: Sequence, alpha: MultiIndex):
    """``point**alpha`` for a vector of ring elements; returns int 1 for alpha = 0."""
    r = 1
    for h, a in zip(point, alpha):
        if a:
            r = r * h ** a
    return r


@lru_cache(maxsize=None)
def _compositions(n: int, d: int) -> tuple[MultiIndex, ...]:
    # exponent vectors of total degree exactly d, lexicographically ascending
    if n == 1:
        return ((d,),)
    out = []
    for first in range(d + 1):
        for rest in _compositions(n - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


def homogeneous(n: int, d: int) -> tuple[MultiIndex, ...]:
    """All multi-indices with ``|alpha| == d``, lexicographically ascending."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return _compositions(n, d)


def enumerate_indices(n: int, d: int) -> list[MultiIndex]:
    """All ``alpha`` with ``|alpha| <= d`` in graded lexicographic order.

    >>> enumerate_indices(2, 1)
    [(0, 0), (0, 1), (1, 0)]
    """
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return [a for k in range(d + 1) for a in _compositions(n, k)]


def graded_key(alpha: MultiIndex) -> tuple:
    return (sum(alpha), alpha)


def below(beta: MultiIndex) -> Iterator[MultiIndex]:
    """All ``alpha <= beta`` (the down-set of ``beta``)."""
    return itertools.product(*(range(b + 1) for b in beta))


@lru_cache(maxsize=65536)
def splits(alpha: MultiIndex) -> tuple[tuple[MultiIndex, MultiIndex, int], ...]:
    """``(beta, alpha - beta, binomial(alpha, beta))`` for every ``beta <= alpha``."""
    return tuple((beta, tuple(a - b for a, b in zip(alpha, beta)),
                  math.prod(math.comb(a, b) for a, b in zip(alpha, beta)))
                 for beta in below(alpha))
