"""Constant-coefficient differential operators of infinite order.

An operator ``F = sum a_alpha D^alpha`` is stored as a coefficient oracle.
Applied to a copolynomial it gives

    (F T, x^beta) = sum_{alpha <= beta} a_alpha (-1)^|alpha| beta!/(beta-alpha)! (T, x^(beta-alpha)),

which is a finite sum for every ``beta``.  When ``a_0`` is invertible, ``F``
is inverted by the Neumann series ``a_0^{-1} sum_k (I - a_0^{-1} F)^k``,
evaluated moment by moment: ``I - a_0^{-1} F`` has no constant term, so its
k-th power vanishes on ``x^beta`` once ``k > |beta|``.

The inversion never splits ``F`` as ``a_0 (I - sum_j d/dx_j G_j)``; the
per-moment evaluation above gives the same numbers without choosing the
``G_j``.
"""

from __future__ import annotations

import math

import threading
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from . import multiindex as mi
from .copolynomial import Copolynomial, delta
from .errors import NoTerminationWitness, SolutionCheckFailed
from .multiindex import MultiIndex
from .polynomial import Polynomial
from .rings import Ring
from .series import TruncatedSeries


class DiffOperator:
    """``sum a_alpha D^alpha`` over ``ring`` in ``n`` variables.

    ``coeffs`` is either a finite mapping ``alpha -> a_alpha`` or a callable
    returning ``a_alpha`` for every ``alpha`` (for genuinely infinite
    operators).
    """

    def __init__(self, ring: Ring, n: int, coeffs: Mapping | Callable[[MultiIndex], object],
                 label: str = "F", literal: dict | None = None):
        if n < 1:
            raise ValueError("an operator needs at least one variable")
        self.ring = ring
        self.n = n
        self.label = label
        self.literal = literal
        if callable(coeffs):
            self._oracle = coeffs
            self._support = None
            self._cache: dict[MultiIndex, object] = {}
        else:
            support = {}
            for alpha, a in coeffs.items():
                alpha = mi.as_index(alpha)
                if len(alpha) != n:
                    raise ValueError(f"coefficient index {alpha} has wrong length for n={n}")
                a = ring(a)
                if a:
                    support[alpha] = support.get(alpha, ring.zero) + a
            self._support = {k: v for k, v in support.items() if v}
            self._oracle = None
        self.a0 = self.coefficient(mi.zero(n))

    def __repr__(self):
        return f"<DiffOperator {self.label} over {self.ring}, n={self.n}>"

    @property
    def is_finite(self) -> bool:
        return self._support is not None

    def coefficient(self, alpha: Sequence[int]):
        alpha = tuple(alpha)
        if self._support is not None:
            return self._support.get(alpha, self.ring.zero)
        try:
            return self._cache[alpha]
        except KeyError:
            value = self._cache[alpha] = self.ring(self._oracle(alpha))
            return value

    def terms(self) -> dict[MultiIndex, object]:
        if self._support is None:
            raise ValueError(f"{self.label} has infinitely many coefficients")
        return dict(self._support)

    def terms_below(self, beta: MultiIndex):
        """Nonzero ``(alpha, a_alpha)`` with ``alpha <= beta``."""
        if self._support is not None:
            for alpha, a in self._support.items():
                if mi.leq(alpha, beta):
                    yield alpha, a
        else:
            for alpha in mi.below(beta):
                a = self.coefficient(alpha)
                if a:
                    yield alpha, a

    # action

    def apply(self, T: Copolynomial) -> Copolynomial:
        """``F T`` as a new moment oracle."""
        if T.n != self.n or T.ring != self.ring:
            raise ValueError(f"{self.label} cannot act on {T.label}")

        def oracle(beta):
            total = 0
            for alpha, a in self.terms_below(beta):
                ff = math.prod(math.perm(b, k) for k, b in zip(alpha, beta))
                rest = tuple(b - k for k, b in zip(alpha, beta))
                total = total + (-ff if sum(alpha) % 2 else ff) * a * T.moment(rest)
            return total

        return Copolynomial(self.ring, self.n, oracle, f"{self.label}[{T.label}]")

    def apply_poly(self, p: Polynomial) -> Polynomial:
        """Classical action ``sum a_alpha D^alpha p`` on a polynomial."""
        if p.n != self.n:
            raise ValueError(f"{self.label} cannot act on a polynomial in {p.n} variables")
        out = Polynomial(self.ring, self.n)
        for alpha in mi.enumerate_indices(self.n, max(p.degree, 0)):
            a = self.coefficient(alpha)
            if a:
                out = out + p.derivative(alpha).scale(a)
        return out

    def __call__(self, arg):
        if isinstance(arg, Polynomial):
            return self.apply_poly(arg)
        return self.apply(arg)

    # operator algebra

    def _combine(self, other: DiffOperator, fn, label: str) -> DiffOperator:
        if other.n != self.n or other.ring != self.ring:
            raise ValueError("operators live in different spaces")
        if self.is_finite and other.is_finite:
            keys = set(self._support) | set(other._support)
            return DiffOperator(self.ring, self.n,
                                {k: fn(self.coefficient(k), other.coefficient(k)) for k in keys},
                                label)
        return DiffOperator(self.ring, self.n,
                            lambda a: fn(self.coefficient(a), other.coefficient(a)), label)

    def __add__(self, other: DiffOperator) -> DiffOperator:
        return self._combine(other, lambda x, y: x + y, f"({self.label} + {other.label})")

    def __sub__(self, other: DiffOperator) -> DiffOperator:
        return self._combine(other, lambda x, y: x - y, f"({self.label} - {other.label})")

    def scale(self, c) -> DiffOperator:
        c = self.ring(c)
        if self.is_finite:
            return DiffOperator(self.ring, self.n, {k: c * v for k, v in self._support.items()},
                                f"{c}·{self.label}")
        return DiffOperator(self.ring, self.n, lambda a: c * self.coefficient(a), f"{c}·{self.label}")

    def __neg__(self) -> DiffOperator:
        return self.scale(-1)

    def compose(self, other: DiffOperator) -> DiffOperator:
        """``self ∘ other``; symbols multiply."""
        if other.n != self.n or other.ring != self.ring:
            raise ValueError("operators live in different spaces")
        label = f"{self.label}∘{other.label}"
        if self.is_finite and other.is_finite:
            out: dict[MultiIndex, object] = {}
            for a, x in self._support.items():
                for b, y in other._support.items():
                    k = mi.add(a, b)
                    out[k] = out.get(k, 0) + x * y
            return DiffOperator(self.ring, self.n, out, label)

        def oracle(gamma):
            total = 0
            for a, x in self.terms_below(gamma):
                total = total + x * other.coefficient(mi.sub(gamma, a))
            return total

        return DiffOperator(self.ring, self.n, oracle, label)

    def lift(self, n_total: int, positions: Sequence[int]) -> DiffOperator:
        """The same operator acting on the variables ``positions`` of an ``n_total``-variable space."""
        positions = list(positions)
        if len(positions) != self.n or len(set(positions)) != self.n:
            raise ValueError("need one distinct position per variable")
        others = [j for j in range(n_total) if j not in positions]

        def embed(alpha):
            out = [0] * n_total
            for j, a in zip(positions, alpha):
                out[j] = a
            return tuple(out)

        label = f"{self.label}↑{n_total}"
        if self.is_finite:
            return DiffOperator(self.ring, n_total,
                                {embed(a): v for a, v in self._support.items()}, label)

        def oracle(alpha):
            if any(alpha[j] for j in others):
                return 0
            return self.coefficient(tuple(alpha[j] for j in positions))

        return DiffOperator(self.ring, n_total, oracle, label)

    def residual(self) -> DiffOperator:
        """``I - a_0^{-1} F``; raises NotInvertible if ``a_0`` is not a unit."""
        a0inv = self.ring.invert(self.a0)
        z = mi.zero(self.n)
        label = f"(I - {self.label}/a0)"
        if self.is_finite:
            return DiffOperator(self.ring, self.n,
                                {k: -a0inv * v for k, v in self._support.items() if k != z},
                                label)
        return DiffOperator(self.ring, self.n,
                            lambda a: 0 if a == z else -a0inv * self.coefficient(a), label)

    def symbol(self, N: int) -> TruncatedSeries:
        return symbol(self, N)


# constructors

def _finite_literal(ring: Ring, coeffs: Mapping) -> dict:
    items = sorted(((mi.as_index(a), ring(v)) for a, v in coeffs.items() if ring(v)),
                   key=lambda kv: mi.graded_key(kv[0]))
    return {"op": [{"alpha": list(a), "a": ring.format(v)} for a, v in items]}


def from_terms(ring: Ring, n: int, coeffs: Mapping, label: str = "F") -> DiffOperator:
    """Finite operator from ``{alpha: a_alpha}``."""
    lit = _finite_literal(ring, coeffs)
    if not lit["op"]:
        lit["n"] = n
    return DiffOperator(ring, n, coeffs, label, lit)


def identity(ring: Ring, n: int = 1, c=1) -> DiffOperator:
    return from_terms(ring, n, {mi.zero(n): c}, "I" if ring(c) == 1 else f"{c}·I")


def partial(ring: Ring, alpha: Sequence[int], c=1) -> DiffOperator:
    alpha = mi.as_index(alpha)
    return from_terms(ring, len(alpha), {alpha: c}, f"D^{alpha}")


def neumann_sum(ring: Ring, n: int = 1) -> DiffOperator:
    """``sum_k (sum_j d/dx_j)^k``, whose coefficients are the multinomials ``|alpha|!/alpha!``."""
    return DiffOperator(ring, n, mi.multinomial, "Σ_k(Σ_j ∂_j)^k",
                        {"op_family": "neumann_sum", "params": {"n": n}})


def laplacian(ring: Ring, n: int = 1, a=1) -> DiffOperator:
    """``a Δ`` in ``n`` variables."""
    op = from_terms(ring, n, {tuple(2 * e for e in mi.unit(n, j)): a for j in range(n)},
                    f"{a}·Δ")
    op.literal = {"op_family": "laplacian", "params": {"n": n, "a": ring.format(ring(a))}}
    return op


def helmholtz(ring: Ring, c=1, n: int = 3) -> DiffOperator:
    """``Δ + c I``."""
    coeffs = {tuple(2 * e for e in mi.unit(n, j)): 1 for j in range(n)}
    coeffs[mi.zero(n)] = c
    op = from_terms(ring, n, coeffs, f"(Δ + {c}·I)")
    op.literal = {"op_family": "helmholtz", "params": {"n": n, "c": ring.format(ring(c))}}
    return op


def heat(ring: Ring, a=1, c=1) -> DiffOperator:
    """``d/dt - a d²/dx² + c I`` in the variables ``(t, x)``."""
    op = from_terms(ring, 2, {(1, 0): 1, (0, 2): -ring(a), (0, 0): c},
                    f"(∂t - {a}·∂x² + {c}·I)")
    op.literal = {"op_family": "heat",
                  "params": {"a": ring.format(ring(a)), "c": ring.format(ring(c))}}
    return op


def transport(ring: Ring, s: Sequence) -> DiffOperator:
    """``d/dt + sum s_i d/dx_i + I`` in the variables ``(t, x_1, ..., x_n)``."""
    n = len(s) + 1
    coeffs = {mi.unit(n, 0): 1, mi.zero(n): 1}
    for i, si in enumerate(s):
        coeffs[mi.unit(n, i + 1)] = si
    op = from_terms(ring, n, coeffs, "(∂t + s·∇ + I)")
    op.literal = {"op_family": "transport",
                  "params": {"s": [ring.format(ring(v)) for v in s]}}
    return op


def directional(ring: Ring, s: Sequence) -> DiffOperator:
    """``sum s_j d/dx_j``."""
    n = len(s)
    op = from_terms(ring, n, {mi.unit(n, j): v for j, v in enumerate(s)}, "s·∇")
    op.literal = {"op_family": "directional",
                  "params": {"s": [ring.format(ring(v)) for v in s]}}
    return op


def mixed_xt(ring: Ring) -> DiffOperator:
    """``d²/dxdt + d/dx - d/dt - I`` in the variables ``(x, t)``."""
    op = from_terms(ring, 2, {(1, 1): 1, (1, 0): 1, (0, 1): -1, (0, 0): -1},
                    "(∂x∂t + ∂x - ∂t - I)")
    op.literal = {"op_family": "mixed_xt", "params": {}}
    return op


def _p_n(params, default=1):
    n = params.get("n", default)
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"bad dimension {n!r}")
    return n


FAMILIES: dict[str, Callable[[Ring, dict], DiffOperator]] = {
    "neumann_sum": lambda r, p: neumann_sum(r, _p_n(p)),
    "laplacian": lambda r, p: laplacian(r, _p_n(p), r(p.get("a", "1"))),
    "helmholtz": lambda r, p: helmholtz(r, r(p.get("c", "1")), _p_n(p, 3)),
    "heat": lambda r, p: heat(r, r(p.get("a", "1")), r(p.get("c", "1"))),
    "transport": lambda r, p: transport(r, [r(v) for v in p["s"]]),
    "directional": lambda r, p: directional(r, [r(v) for v in p["s"]]),
    "mixed_xt": lambda r, p: mixed_xt(r),
}


# moment transformers

@dataclass(frozen=True)
class MomentTransformer:
    """A named map on copolynomials with an order-reduction witness.

    ``reduction = r >= 1`` promises that the output moment at ``x^beta``
    depends only on input moments of degree at most ``|beta| - r``; ``0``
    makes no promise.
    """

    name: str
    fn: Callable[[Copolynomial], Copolynomial]
    reduction: int = 0

    def __call__(self, T: Copolynomial) -> Copolynomial:
        return self.fn(T)

    def compose(self, other: MomentTransformer) -> MomentTransformer:
        """``self ∘ other``: reductions add."""
        return MomentTransformer(f"{self.name}∘{other.name}",
                                 lambda T: self.fn(other.fn(T)),
                                 self.reduction + other.reduction)


def operator_transformer(F: DiffOperator) -> MomentTransformer:
    return MomentTransformer(F.label, F.apply, 1 if not F.a0 else 0)


def derivative_transformer(alpha: Sequence[int]) -> MomentTransformer:
    alpha = mi.as_index(alpha)
    return MomentTransformer(f"D^{alpha}", lambda T: T.derivative(alpha), sum(alpha))


def inverse_transformer(F: DiffOperator) -> MomentTransformer:
    return MomentTransformer(f"{F.label}⁻¹", lambda T: neumann_inverse_apply(F, T), 0)


def neumann_inverse_transformer(A: MomentTransformer) -> MomentTransformer:
    """``sum_{k>=0} A^k``, exact on ``x^beta`` because ``A^k`` vanishes there for ``k > |beta|/r``."""
    if A.reduction < 1:
        raise NoTerminationWitness(
            f"{A.name} has no order-reduction witness; its Neumann series need not terminate")
    r = A.reduction

    def fn(T: Copolynomial) -> Copolynomial:
        powers = [T]
        lock = threading.Lock()

        def power(k):
            if k >= len(powers):
                with lock:
                    while len(powers) <= k:
                        powers.append(A(powers[-1]))
            return powers[k]

        def oracle(beta):
            total = 0
            for k in range(sum(beta) // r + 1):
                total = total + power(k).moment(beta)
            return total

        return Copolynomial(T.ring, T.n, oracle, f"Σ_k({A.name})^k[{T.label}]")

    return MomentTransformer(f"Σ_k({A.name})^k", fn, 0)


# inversion and solving

def neumann_inverse_apply(F: DiffOperator, T: Copolynomial) -> Copolynomial:
    """``F⁻¹ T = a_0^{-1} sum_k (I - a_0^{-1} F)^k T``.

    Raises NotInvertible when ``a_0`` is not a unit: no fundamental solution
    exists then.
    """
    if T.n != F.n or T.ring != F.ring:
        raise ValueError(f"{F.label} cannot act on {T.label}")
    a0inv = F.ring.invert(F.a0)
    step = F.residual()
    series = neumann_inverse_transformer(MomentTransformer(step.label, step.apply, 1))(T)
    if a0inv == 1:
        out = series
    else:
        out = Copolynomial(F.ring, F.n, lambda b: a0inv * series.moment(b), "")
    out.label = f"{F.label}⁻¹[{T.label}]"
    return out


def fundamental_solution(F: DiffOperator) -> Copolynomial:
    """The unique ``E`` with ``F E = delta``."""
    E = neumann_inverse_apply(F, delta(F.ring, F.n))
    E.label = f"E[{F.label}]"
    return E


def solve(F: DiffOperator, T: Copolynomial, verify: int | None = None) -> Copolynomial:
    """Unique solution of ``F u = T``.

    With ``verify=N`` the result is checked up to degree ``N`` against
    ``F u = T`` and ``u = E * T``; a mismatch raises SolutionCheckFailed.
    """
    u = neumann_inverse_apply(F, T)
    if verify is not None:
        if not F.apply(u).equal_up_to(T, verify):
            raise SolutionCheckFailed(f"F u != T below degree {verify}")
        if not u.equal_up_to(fundamental_solution(F).convolve(T), verify):
            raise SolutionCheckFailed(f"u != E * T below degree {verify}")
    return u


def solve_polynomial(F: DiffOperator, p: Polynomial) -> Polynomial:
    """Unique polynomial ``u`` with ``F u = p``; ``deg u <= deg p``."""
    a0inv = F.ring.invert(F.a0)
    step = F.residual()
    u = Polynomial(F.ring, F.n)
    term = p
    while term:
        u = u + term
        term = step.apply_poly(term)
    return u.scale(a0inv)


def symbol(F: DiffOperator, N: int) -> TruncatedSeries:
    """``sum_{|alpha| <= N} a_alpha z^alpha``."""
    if F.is_finite:
        coeffs = F.terms()
    else:
        coeffs = {a: F.coefficient(a) for a in mi.enumerate_indices(F.n, N)}
    return TruncatedSeries(F.ring, F.n, N, coeffs)
