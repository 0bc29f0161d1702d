"""Copolynomials: linear functionals on K[x_1, ..., x_n] given by their moments.

A :class:`Copolynomial` wraps a moment oracle ``alpha -> (T, x^alpha)``.
Every operation here returns a new oracle built on top of its inputs, so
nothing is ever truncated: a degree bound only appears when a caller asks
for finitely many moments.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from . import multiindex as mi
from .multiindex import MultiIndex
from .polynomial import Polynomial
from .rings import Ring

Oracle = Callable[[MultiIndex], object]


class Copolynomial:
    """A moment oracle over ``ring`` in ``n`` variables.

    Moments are cached on first use.  The cache is filled with values that
    depend only on ``alpha``, so concurrent fills are harmless.

    ``label`` is a human-readable construction trace; ``literal`` is the
    job-file literal that rebuilds this object, or ``None`` when the
    object came from an operation without a literal form.
    """

    __slots__ = ("ring", "n", "_oracle", "_cache", "label", "literal")

    def __init__(self, ring: Ring, n: int, oracle: Oracle, label: str = "T",
                 literal: dict | None = None):
        if n < 1:
            raise ValueError("a copolynomial needs at least one variable")
        self.ring = ring
        self.n = n
        self._oracle = oracle
        self._cache: dict[MultiIndex, object] = {}
        self.label = label
        self.literal = literal

    def __repr__(self):
        return f"<Copolynomial {self.label} over {self.ring}, n={self.n}>"

    # evaluation

    def moment(self, alpha: Sequence[int]):
        """``(T, x^alpha)``."""
        alpha = tuple(alpha)
        try:
            return self._cache[alpha]
        except KeyError:
            pass
        if len(alpha) != self.n:
            raise ValueError(f"moment index {alpha} has wrong length for n={self.n}")
        value = self.ring(self._oracle(alpha))
        self._cache[alpha] = value
        return value

    def apply(self, p: Polynomial):
        """``(T, p)``: only moments up to ``deg p`` are read."""
        if p.n != self.n:
            raise ValueError(f"polynomial in {p.n} variables, copolynomial in {self.n}")
        total = self.ring.zero
        for alpha, c in p.items():
            total = total + c * self.moment(alpha)
        return total

    __call__ = apply

    def moments(self, N: int) -> list[tuple[MultiIndex, object]]:
        """All moments with ``|alpha| <= N`` in graded lexicographic order."""
        return [(a, self.moment(a)) for a in mi.enumerate_indices(self.n, N)]

    def equal_up_to(self, other: Copolynomial, N: int) -> bool:
        _same_space(self, other)
        return all(self.moment(a) == other.moment(a) for a in mi.enumerate_indices(self.n, N))

    # module structure

    def scale(self, c) -> Copolynomial:
        c = self.ring(c)
        return Copolynomial(
            self.ring, self.n, lambda a: c * self.moment(a), f"{c}·{self.label}",
            _lit_linear([(c, self)], self.ring))

    def __add__(self, other: Copolynomial) -> Copolynomial:
        return linear_combination([(1, self), (1, other)])

    def __sub__(self, other: Copolynomial) -> Copolynomial:
        return linear_combination([(1, self), (-1, other)])

    def __neg__(self) -> Copolynomial:
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, Copolynomial):
            return self.convolve(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    # calculus

    def derivative(self, alpha: Sequence[int]) -> Copolynomial:
        """``D^alpha T`` defined by ``(D^alpha T, p) = (-1)^|alpha| (T, D^alpha p)``."""
        alpha = mi.as_index(alpha)
        self._check_index(alpha)
        sign = -1 if sum(alpha) % 2 else 1

        def oracle(beta):
            if not mi.leq(alpha, beta):
                return 0
            return sign * mi.falling_factorial(beta, alpha) * self.moment(mi.sub(beta, alpha))

        return Copolynomial(
            self.ring, self.n, oracle, f"D^{alpha}{self.label}",
            _lit_wrap(self, kind="derivative", alpha=list(alpha)))

    def scaled_derivative(self, alpha: Sequence[int]) -> Copolynomial:
        """``D^alpha T / alpha!``, well defined over every ring."""
        alpha = mi.as_index(alpha)
        self._check_index(alpha)
        sign = -1 if sum(alpha) % 2 else 1

        def oracle(beta):
            if not mi.leq(alpha, beta):
                return 0
            return sign * mi.binomial(beta, alpha) * self.moment(mi.sub(beta, alpha))

        return Copolynomial(
            self.ring, self.n, oracle, f"D^{alpha}{self.label}/{alpha}!",
            _lit_wrap(self, kind="derivative", alpha=list(alpha), scaled=True))

    def shift(self, h: Sequence) -> Copolynomial:
        """``T(x + h)``, i.e. ``(T(x+h), p) = (T, p(x - h))``."""
        if len(h) != self.n:
            raise ValueError(f"shift vector needs {self.n} entries")
        h = [self.ring(v) for v in h]
        minus_h = [-v for v in h]
        ring = self.ring

        def oracle(beta):
            return self.apply(Polynomial.monomial(ring, beta).shift(minus_h))

        return Copolynomial(
            ring, self.n, oracle, f"{self.label}(x+{_vec(h)})",
            _lit_wrap(self, kind="shift", h=[ring.format(v) for v in h]))

    def convolve(self, other: Copolynomial) -> Copolynomial:
        """Binomial convolution of moment sequences."""
        _same_space(self, other)

        def oracle(alpha):
            total = 0
            for beta, rest, c in mi.splits(alpha):
                total = total + c * self.moment(rest) * other.moment(beta)
            return total

        literal = None
        if self.literal is not None and other.literal is not None:
            literal = {"kind": "convolve", "left": self.literal, "right": other.literal}
        return Copolynomial(self.ring, self.n, oracle, f"({self.label} * {other.label})", literal)

    def tensor(self, other: Copolynomial) -> Copolynomial:
        """``T1 ⊗ T2`` in ``n1 + n2`` variables, the first block belonging to ``self``."""
        if other.ring != self.ring:
            raise ValueError("copolynomials over different rings")
        n1 = self.n

        def oracle(alpha):
            return self.moment(alpha[:n1]) * other.moment(alpha[n1:])

        literal = None
        if self.literal is not None and other.literal is not None:
            literal = {"kind": "tensor", "left": self.literal, "right": other.literal}
        return Copolynomial(self.ring, n1 + other.n, oracle,
                            f"({self.label} ⊗ {other.label})", literal)

    def convolve_poly(self, p: Polynomial) -> Polynomial:
        """``(T * p)(x) = (T(y), p(x - y))``, a polynomial of degree at most ``deg p``."""
        if p.n != self.n:
            raise ValueError(f"polynomial in {p.n} variables, copolynomial in {self.n}")
        out = Polynomial(self.ring, self.n)
        for alpha in mi.enumerate_indices(self.n, max(p.degree, 0)):
            m = self.moment(alpha)
            if m:
                c = -m if sum(alpha) % 2 else m
                out = out + p.taylor_coefficient(alpha).scale(c)
        return out

    def delta_expansion(self, N: int) -> list[tuple[MultiIndex, object]]:
        """Nonzero coefficients ``c_alpha`` of ``T = sum c_alpha D^alpha delta / alpha!``, ``|alpha| <= N``."""
        out = []
        for alpha, m in self.moments(N):
            if m:
                out.append((alpha, -m if sum(alpha) % 2 else m))
        return out

    def _check_index(self, alpha: MultiIndex):
        if len(alpha) != self.n:
            raise ValueError(f"multi-index {alpha} has wrong length for n={self.n}")


def _same_space(a: Copolynomial, b: Copolynomial):
    if a.n != b.n or a.ring != b.ring:
        raise ValueError(f"{a.label} and {b.label} live in different spaces")


def _vec(h) -> str:
    return "(" + ",".join(str(v) for v in h) + ")"


def _lit_wrap(T: Copolynomial, **fields) -> dict | None:
    if T.literal is None:
        return None
    kind = fields.pop("kind")
    out = {"kind": kind, "of": T.literal}
    out.update(fields)
    return out


def _lit_linear(terms, ring: Ring) -> dict | None:
    if any(T.literal is None for _, T in terms):
        return None
    return {"kind": "linear",
            "terms": [{"c": ring.format(ring(c)), "of": T.literal} for c, T in terms]}


# constructors

def delta(ring: Ring, n: int = 1) -> Copolynomial:
    """``(delta, p) = p(0)``."""
    z = mi.zero(n)
    return Copolynomial(ring, n, lambda a: 1 if a == z else 0, "δ",
                        {"kind": "delta", "n": n})


def delta_derivative(ring: Ring, alpha: Sequence[int], scaled: bool = False) -> Copolynomial:
    """``D^alpha delta`` (or ``D^alpha delta / alpha!`` when ``scaled``)."""
    alpha = mi.as_index(alpha)
    sign = -1 if sum(alpha) % 2 else 1
    value = sign if scaled else sign * mi.factorial(alpha)
    label = f"D^{alpha}δ" + (f"/{alpha}!" if scaled else "")
    literal = {"kind": "delta_derivative", "alpha": list(alpha)}
    if scaled:
        literal["scaled"] = True
    return Copolynomial(ring, len(alpha), lambda b: value if b == alpha else 0, label, literal)


def exp_family(ring: Ring, a) -> Copolynomial:
    """One-variable ``E_a`` with moments ``(E_a, x^k) = a^k k!``."""
    a = ring(a)
    fact = [1]

    def oracle(alpha):
        (k,) = alpha
        while len(fact) <= k:
            fact.append(fact[-1] * len(fact))
        return a ** k * fact[k]

    return Copolynomial(ring, 1, oracle, f"E_{a}",
                        {"kind": "exp_family", "a": ring.format(a)})


def from_moments(ring: Ring, n: int, table) -> Copolynomial:
    """Copolynomial with the given finitely many moments and zero elsewhere.

    ``table`` maps multi-indices to values (a dict or an iterable of pairs).
    """
    items = table.items() if hasattr(table, "items") else table
    values: dict[MultiIndex, object] = {}
    for alpha, v in items:
        alpha = mi.as_index(alpha)
        if len(alpha) != n:
            raise ValueError(f"moment index {alpha} has wrong length for n={n}")
        values[alpha] = ring(v)
    literal = {
        "kind": "moments", "n": n,
        "table": [{"alpha": list(a), "value": ring.format(values[a])}
                  for a in sorted(values, key=mi.graded_key) if values[a]],
    }
    return Copolynomial(ring, n, lambda a: values.get(a, 0), "moments", literal)


def linear_combination(terms: Iterable[tuple[object, Copolynomial]]) -> Copolynomial:
    """``sum c_i T_i`` for ring scalars ``c_i``."""
    terms = list(terms)
    if not terms:
        raise ValueError("empty linear combination")
    first = terms[0][1]
    for _, T in terms[1:]:
        _same_space(first, T)
    ring = first.ring
    terms = [(ring(c), T) for c, T in terms]

    def oracle(alpha):
        total = 0
        for c, T in terms:
            total = total + c * T.moment(alpha)
        return total

    label = " + ".join(f"{c}·{T.label}" for c, T in terms)
    return Copolynomial(ring, first.n, oracle, f"({label})", _lit_linear(terms, ring))


def convolve(T1: Copolynomial, T2: Copolynomial) -> Copolynomial:
    return T1.convolve(T2)


def tensor(T1: Copolynomial, T2: Copolynomial) -> Copolynomial:
    return T1.tensor(T2)


def equal_up_to(T1: Copolynomial, T2: Copolynomial, N: int) -> bool:
    return T1.equal_up_to(T2, N)
