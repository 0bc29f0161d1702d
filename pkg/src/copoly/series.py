"""Truncated multivariate power series and finite Laurent polynomials."""

from __future__ import annotations

from typing import Mapping, Sequence

from . import multiindex as mi
from .errors import TruncationMismatch
from .multiindex import MultiIndex
from .rings import Ring


class TruncatedSeries:
    """A power series in ``n`` variables known exactly for ``|alpha| <= N``.

    Arithmetic discards every term above the truncation degree.  Combining
    series with different ``N`` is an error rather than a silent
    re-truncation.
    """

    __slots__ = ("ring", "n", "N", "_coeffs")

    def __init__(self, ring: Ring, n: int, N: int, coeffs: Mapping[Sequence[int], object] | None = None):
        if N < 0:
            raise ValueError("truncation degree must be nonnegative")
        self.ring, self.n, self.N = ring, n, N
        self._coeffs: dict[MultiIndex, object] = {}
        for alpha, c in (coeffs or {}).items():
            alpha = mi.as_index(alpha)
            if len(alpha) != n:
                raise ValueError(f"exponent {alpha} has wrong length for n={n}")
            if sum(alpha) <= N:
                c = ring(c)
                if c:
                    self._coeffs[alpha] = c

    @classmethod
    def one(cls, ring: Ring, n: int, N: int) -> TruncatedSeries:
        return cls(ring, n, N, {mi.zero(n): 1})

    def coefficient(self, alpha: Sequence[int]):
        return self._coeffs.get(tuple(alpha), self.ring.zero)

    def items(self):
        return sorted(self._coeffs.items(), key=lambda kv: mi.graded_key(kv[0]))

    def table(self) -> list[tuple[MultiIndex, object]]:
        """Every coefficient up to ``N`` (zeros included) in graded lex order."""
        return [(a, self.coefficient(a)) for a in mi.enumerate_indices(self.n, self.N)]

    def _check(self, other: TruncatedSeries):
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected a TruncatedSeries, got {type(other).__name__}")
        if other.n != self.n or other.ring != self.ring:
            raise ValueError("series live in different rings")
        if other.N != self.N:
            raise TruncationMismatch(f"truncation degrees differ: {self.N} vs {other.N}")

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        return self._coeffs == other._coeffs

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        out = dict(self._coeffs)
        for a, c in other._coeffs.items():
            out[a] = out.get(a, 0) + c
        return TruncatedSeries(self.ring, self.n, self.N, out)

    def __neg__(self) -> TruncatedSeries:
        return self.scale(-1)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def scale(self, c) -> TruncatedSeries:
        c = self.ring(c)
        return TruncatedSeries(self.ring, self.n, self.N,
                               {a: c * v for a, v in self._coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        out: dict[MultiIndex, object] = {}
        for a, c in self._coeffs.items():
            da = sum(a)
            for b, d in other._coeffs.items():
                if da + sum(b) <= self.N:
                    k = mi.add(a, b)
                    out[k] = out.get(k, 0) + c * d
        return TruncatedSeries(self.ring, self.n, self.N, out)

    __rmul__ = scale

    def reflect(self) -> TruncatedSeries:
        """Substitute ``z -> -z``."""
        return TruncatedSeries(self.ring, self.n, self.N,
                               {a: (-c if sum(a) % 2 else c) for a, c in self._coeffs.items()})

    def inverse(self) -> TruncatedSeries:
        """Multiplicative inverse; needs an invertible constant term."""
        c0inv = self.ring.invert(self.coefficient(mi.zero(self.n)))
        out: dict[MultiIndex, object] = {}
        for alpha in mi.enumerate_indices(self.n, self.N):
            acc = 1 if not any(alpha) else 0
            for beta, c in self._coeffs.items():
                if any(beta) and mi.leq(beta, alpha):
                    prev = out.get(mi.sub(alpha, beta))
                    if prev:
                        acc = acc - c * prev
            out[alpha] = self.ring(c0inv * acc)
        return TruncatedSeries(self.ring, self.n, self.N, out)

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly(self.ring, self.n, self._coeffs)

    def __repr__(self):
        return f"TruncatedSeries(N={self.N}, {dict(self.items())})"


class LaurentPoly:
    """Finitely supported Laurent polynomial with integer exponent vectors."""

    __slots__ = ("ring", "n", "_coeffs")

    def __init__(self, ring: Ring, n: int, coeffs: Mapping[Sequence[int], object] | None = None):
        self.ring, self.n = ring, n
        self._coeffs: dict[tuple[int, ...], object] = {}
        for e, c in (coeffs or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} has wrong length for n={n}")
            c = ring(c)
            if c:
                self._coeffs[e] = c

    def coefficient(self, e: Sequence[int]):
        return self._coeffs.get(tuple(e), self.ring.zero)

    def items(self):
        return sorted(self._coeffs.items())

    def exponents(self):
        return list(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        if other.n != self.n or other.ring != self.ring:
            raise ValueError("Laurent polynomials live in different rings")
        out: dict[tuple[int, ...], object] = {}
        for a, c in self._coeffs.items():
            for b, d in other._coeffs.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + c * d
        return LaurentPoly(self.ring, self.n, out)

    def residue(self):
        """Coefficient at exponent ``(-1, ..., -1)``."""
        return self.coefficient((-1,) * self.n)

    def __repr__(self):
        return f"LaurentPoly({dict(self.items())})"
