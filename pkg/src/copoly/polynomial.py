"""Sparse multivariate polynomials over an exact ring."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from . import multiindex as mi
from .multiindex import MultiIndex
from .rings import Ring


class Polynomial:
    """Finite map from exponent vectors to nonzero ring elements.

    Instances are treated as immutable.  The zero polynomial has an empty
    term map and degree ``-1``.
    """

    __slots__ = ("ring", "n", "_terms")

    def __init__(self, ring: Ring, n: int, terms: Mapping[Sequence[int], object] | None = None):
        if n < 1:
            raise ValueError("a polynomial needs at least one variable")
        self.ring = ring
        self.n = n
        clean: dict[MultiIndex, object] = {}
        for alpha, c in (terms or {}).items():
            alpha = mi.as_index(alpha)
            if len(alpha) != n:
                raise ValueError(f"exponent {alpha} has wrong length for n={n}")
            c = ring(c)
            if c:
                clean[alpha] = clean.get(alpha, ring.zero) + c
                if not clean[alpha]:
                    del clean[alpha]
        self._terms = clean

    @classmethod
    def _raw(cls, ring: Ring, n: int, terms: dict) -> Polynomial:
        p = cls.__new__(cls)
        p.ring, p.n, p._terms = ring, n, {a: c for a, c in terms.items() if c}
        return p

    @classmethod
    def monomial(cls, ring: Ring, alpha: Sequence[int], c=1) -> Polynomial:
        alpha = mi.as_index(alpha)
        return cls(ring, len(alpha), {alpha: c})

    @classmethod
    def constant(cls, ring: Ring, n: int, c) -> Polynomial:
        return cls(ring, n, {mi.zero(n): c})

    @classmethod
    def variable(cls, ring: Ring, n: int, j: int) -> Polynomial:
        return cls(ring, n, {mi.unit(n, j): 1})

    # container protocol

    @property
    def terms(self) -> dict[MultiIndex, object]:
        return dict(self._terms)

    def items(self) -> Iterable[tuple[MultiIndex, object]]:
        return sorted(self._terms.items(), key=lambda kv: mi.graded_key(kv[0]))

    def coefficient(self, alpha: Sequence[int]):
        return self._terms.get(tuple(alpha), self.ring.zero)

    @property
    def degree(self) -> int:
        return max((sum(a) for a in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    # arithmetic

    def _check(self, other: Polynomial):
        if other.n != self.n or other.ring != self.ring:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        out = dict(self._terms)
        for a, c in other._terms.items():
            out[a] = out.get(a, 0) + c
        return Polynomial._raw(self.ring, self.n, out)

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.ring, self.n, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def scale(self, c) -> Polynomial:
        c = self.ring(c)
        return Polynomial._raw(self.ring, self.n, {a: c * v for a, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict[MultiIndex, object] = {}
        for a, c in self._terms.items():
            for b, d in other._terms.items():
                k = mi.add(a, b)
                out[k] = out.get(k, 0) + c * d
        return Polynomial._raw(self.ring, self.n, out)

    def __rmul__(self, c):
        return self.scale(c)

    # calculus

    def derivative(self, alpha: Sequence[int]) -> Polynomial:
        """``D^alpha p``; terms with ``alpha`` not below the exponent vanish."""
        alpha = tuple(alpha)
        out = {}
        for beta, c in self._terms.items():
            if mi.leq(alpha, beta):
                out[mi.sub(beta, alpha)] = c * mi.falling_factorial(beta, alpha)
        return Polynomial._raw(self.ring, self.n, out)

    def taylor_coefficient(self, alpha: Sequence[int]) -> Polynomial:
        """Coefficient of ``h^alpha`` in ``p(x + h)``.

        Computed by binomial expansion so it is valid in every characteristic;
        over a field of characteristic 0 it equals ``D^alpha p / alpha!``.
        """
        alpha = tuple(alpha)
        out = {}
        for beta, c in self._terms.items():
            if mi.leq(alpha, beta):
                out[mi.sub(beta, alpha)] = c * mi.binomial(beta, alpha)
        return Polynomial._raw(self.ring, self.n, out)

    def shift(self, h: Sequence) -> Polynomial:
        """``p(x + h)`` assembled from Taylor coefficients."""
        if len(h) != self.n:
            raise ValueError(f"shift vector needs {self.n} entries")
        h = [self.ring(v) for v in h]
        alphas = set()
        for beta in self._terms:
            alphas.update(mi.below(beta))
        out = Polynomial(self.ring, self.n)
        for alpha in alphas:
            out = out + self.taylor_coefficient(alpha).scale(mi.power(h, alpha))
        return out

    def evaluate(self, point: Sequence):
        if len(point) != self.n:
            raise ValueError(f"evaluation point needs {self.n} entries")
        point = [self.ring(v) for v in point]
        total = self.ring.zero
        for beta, c in self._terms.items():
            total = total + c * mi.power(point, beta)
        return total

    def __call__(self, *point):
        return self.evaluate(point)

    # display / serialization

    def to_json(self) -> list[dict]:
        return [{"alpha": list(a), "c": self.ring.format(c)} for a, c in self.items()]

    @classmethod
    def from_json(cls, ring: Ring, items: list[dict], n: int | None = None) -> Polynomial:
        if n is None:
            if not items:
                raise ValueError("cannot infer the number of variables of an empty literal")
            n = len(items[0]["alpha"])
        return cls(ring, n, {tuple(t["alpha"]): ring(t["c"]) for t in items})

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        names = ["x"] if self.n == 1 else [f"x{j + 1}" for j in range(self.n)]
        parts = []
        for alpha, c in sorted(self._terms.items(), key=lambda kv: mi.graded_key(kv[0]), reverse=True):
            mono = "*".join(
                names[j] + (f"^{e}" if e > 1 else "") for j, e in enumerate(alpha) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")
