"""Cauchy problems ``du/dt = F u, u(0) = Q`` in power series with copolynomial coefficients.

A solution is a :class:`CopolySeries` ``u = sum u_k t^k``.  The solver uses
the recursion ``(k+1) u_{k+1} = F u_k`` and divides moment by moment, so
over the integers a missing solution shows up as a
:class:`~copoly.errors.DivisibilityFailure` at the first moment that is not
divisible.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import multiindex as mi
from .copolynomial import Copolynomial, delta
from .diffop import (
    DiffOperator,
    derivative_transformer,
    fundamental_solution,
    inverse_transformer,
    laplacian,
    neumann_inverse_apply,
    neumann_inverse_transformer,
)
from .errors import DivisibilityFailure, HypothesisViolation, NotDivisible, RingCapability
from .polynomial import Polynomial
from .rings import Ring


class CopolySeries:
    """Formal power series in ``t`` whose coefficients are copolynomials.

    Coefficients are produced on demand by ``coefficient(k)`` and then kept;
    the producer must be deterministic, which makes racing readers safe.
    """

    def __init__(self, ring: Ring, n: int, make: Callable[[int], Copolynomial],
                 label: str = "u", guaranteed: bool = True):
        self.ring = ring
        self.n = n
        self.label = label
        self.guaranteed = guaranteed
        self._make = make
        self._coeffs: list[Copolynomial] = []
        self._lock = threading.RLock()

    def __repr__(self):
        return f"<CopolySeries {self.label} over {self.ring}, n={self.n}>"

    def coefficient(self, k: int) -> Copolynomial:
        if k < 0:
            raise IndexError("series coefficients start at t^0")
        if k >= len(self._coeffs):
            with self._lock:
                while len(self._coeffs) <= k:
                    self._coeffs.append(self._make(len(self._coeffs)))
        return self._coeffs[k]

    __getitem__ = coefficient

    def materialize(self, kmax: int) -> CopolySeries:
        self.coefficient(kmax)
        return self

    def pairing(self, p: Polynomial, kmax: int) -> list:
        """``(u(t, .), p)`` as its list of t-coefficients up to ``t^kmax``."""
        return [self.coefficient(k).apply(p) for k in range(kmax + 1)]

    def table(self, kmax: int, N: int) -> list[tuple[int, mi.MultiIndex, object]]:
        """Rows ``(k, alpha, (u_k, x^alpha))`` ordered by ``k`` then graded lex ``alpha``."""
        rows = []
        for k in range(kmax + 1):
            for alpha, v in self.coefficient(k).moments(N):
                rows.append((k, alpha, v))
        return rows

    def equal_up_to(self, other: CopolySeries, kmax: int, N: int) -> bool:
        return all(self.coefficient(k).equal_up_to(other.coefficient(k), N)
                   for k in range(kmax + 1))

    # coefficient-wise operations

    def d_dt(self) -> CopolySeries:
        return CopolySeries(self.ring, self.n,
                            lambda k: self.coefficient(k + 1).scale(k + 1),
                            f"∂t[{self.label}]", self.guaranteed)

    def apply_op(self, F: DiffOperator) -> CopolySeries:
        return CopolySeries(self.ring, self.n, lambda k: F.apply(self.coefficient(k)),
                            f"{F.label}[{self.label}]", self.guaranteed)

    def convolve(self, T: Copolynomial) -> CopolySeries:
        return CopolySeries(self.ring, self.n, lambda k: T.convolve(self.coefficient(k)),
                            f"({T.label} * {self.label})", self.guaranteed)


def series_d_dt(u: CopolySeries) -> CopolySeries:
    return u.d_dt()


def series_apply_op(F: DiffOperator, u: CopolySeries) -> CopolySeries:
    return u.apply_op(F)


def series_convolve(T: Copolynomial, u: CopolySeries) -> CopolySeries:
    return u.convolve(T)


def from_coefficients(ring: Ring, n: int, coeffs: list[Copolynomial],
                      label: str = "u") -> CopolySeries:
    """Series with the given leading coefficients and zero beyond."""
    zero = Copolynomial(ring, n, lambda a: 0, "0")
    return CopolySeries(ring, n, lambda k: coeffs[k] if k < len(coeffs) else zero, label)


def _divided(ring: Ring, source: Copolynomial, k: int, label: str) -> Copolynomial:
    # source / k, reporting the series index k on failure
    def oracle(alpha):
        value = source.moment(alpha)
        try:
            return ring.exact_div(value, k)
        except DivisibilityFailure:
            raise
        except NotDivisible:
            raise DivisibilityFailure(k, alpha, value, k) from None

    return Copolynomial(ring, source.n, oracle, label)


def cauchy_solve(F: DiffOperator, Q: Copolynomial, kmax: int | None = None,
                 unsafe: bool = False) -> CopolySeries:
    """The series ``sum F^k Q / k! t^k`` solving ``du/dt = F u, u(0) = Q``.

    Existence is guaranteed when the ring has characteristic 0 and
    ``a_0 = 0``, or when it contains the rationals (``guaranteed`` records
    which case applies).  Other characteristic-0 rings are still attempted:
    if a solution exists it is this one, and if not, querying a moment that
    would need a non-exact division raises DivisibilityFailure.  Positive
    characteristic is refused unless ``unsafe`` is set.
    """
    ring = F.ring
    if Q.n != F.n or Q.ring != ring:
        raise ValueError(f"{F.label} cannot act on {Q.label}")
    if ring.characteristic != 0 and not unsafe:
        raise HypothesisViolation(
            f"the Cauchy solver needs characteristic 0, {ring} has characteristic {ring.characteristic}")
    guaranteed = ring.characteristic == 0 and (not F.a0 or ring.contains_rationals)

    series: CopolySeries

    def make(k):
        if k == 0:
            return Q
        return _divided(ring, F.apply(series.coefficient(k - 1)), k, f"u_{k}")

    series = CopolySeries(ring, F.n, make, f"u[{F.label}, {Q.label}]", guaranteed)
    if kmax is not None:
        series.materialize(kmax)
    return series


def cauchy_fundamental(F: DiffOperator, kmax: int | None = None,
                       unsafe: bool = False) -> CopolySeries:
    """``E_C(t, x) = sum F^k delta / k! t^k``."""
    E = cauchy_solve(F, delta(F.ring, F.n), kmax, unsafe)
    E.label = f"E_C[{F.label}]"
    return E


def cauchy_solve_by_convolution(F: DiffOperator, Q: Copolynomial, kmax: int | None = None,
                                unsafe: bool = False) -> CopolySeries:
    """The Cauchy solution written as ``E_C * Q``."""
    u = cauchy_fundamental(F, kmax, unsafe).convolve(Q)
    if kmax is not None:
        u.materialize(kmax)
    return u


def check_cauchy_solution(u: CopolySeries, F: DiffOperator, Q: Copolynomial | None,
                          kmax: int, N: int) -> bool:
    """``du/dt = F u`` for the t-coefficients below ``kmax`` and ``u_0 = Q``, all up to degree ``N``."""
    if Q is not None and not u.coefficient(0).equal_up_to(Q, N):
        return False
    lhs, rhs = u.d_dt(), u.apply_op(F)
    return all(lhs[k].equal_up_to(rhs[k], N) for k in range(kmax))


def cauchy_solve_polynomial(a, Q: Polynomial, kmax: int | None = None) -> list[Polynomial]:
    """Polynomial solution of ``du/dt = a² d²u/dx², u(0) = Q`` as its t-coefficients.

    The k-th coefficient ``a^{2k} Q^{(2k)} / k!`` is built by the recursion
    ``k P_k = a² P_{k-1}''`` with exact division, so it stays inside the
    ring; the list ends at the last nonzero coefficient (or at ``kmax``).
    """
    ring = Q.ring
    if Q.n != 1:
        raise ValueError("the polynomial heat solver is one-dimensional")
    if ring.characteristic != 0:
        raise HypothesisViolation(f"need characteristic 0, got {ring}")
    a2 = ring(a) ** 2
    out = [Q]
    k = 1
    while kmax is None or k <= kmax:
        second = out[-1].derivative((2,)).scale(a2)
        if not second:
            break
        terms = {}
        for e, c in second.items():
            try:
                terms[e] = ring.exact_div(c, k)
            except NotDivisible:
                raise DivisibilityFailure(k, e, c, k) from None
        out.append(Polynomial(ring, 1, terms))
        k += 1
    return out


def as_polynomial_in_t(coeffs: list[Polynomial]) -> Polynomial:
    """Assemble ``sum P_k t^k`` as a polynomial in the variables ``(t, x_1, ..., x_n)``."""
    if not coeffs:
        raise ValueError("empty series")
    ring, n = coeffs[0].ring, coeffs[0].n
    terms = {}
    for k, P in enumerate(coeffs):
        for alpha, c in P.items():
            terms[(k,) + alpha] = c
    return Polynomial(ring, n + 1, terms)


def solve_inhomogeneous_heat(a, Q: Copolynomial, kmax: int | None = None) -> CopolySeries:
    """``v = sum a^k Δ^k Q t^{k+1}/(k+1)!`` solving ``dv/dt = a Δ v + Q, v(0) = 0``."""
    ring = Q.ring
    if not ring.contains_rationals:
        raise RingCapability(f"the inhomogeneous heat solver needs QQ, got {ring}")
    u = cauchy_solve(laplacian(ring, Q.n, a), Q)
    zero = Copolynomial(ring, Q.n, lambda alpha: 0, "0")

    def make(k):
        if k == 0:
            return zero
        return _divided(ring, u.coefficient(k - 1), k, f"v_{k}")

    v = CopolySeries(ring, Q.n, make, f"v[{a}·Δ, {Q.label}]")
    if kmax is not None:
        v.materialize(kmax)
    return v


def nonuniqueness_witness(F: DiffOperator,
                          free: Callable[[int], Copolynomial] | None = None) -> CopolySeries:
    """A nonzero solution of ``du/dt = F u, u(0) = 0`` in characteristic 2.

    ``u_0 = u_1 = 0``, ``u_{2k} = free(k)`` (default ``delta``) and
    ``u_{2k+1} = F u_{2k}``.  This works because over Z/2Z an operator with
    ``a_0 = 0`` squares to zero on copolynomials.
    """
    ring = F.ring
    if ring.characteristic != 2:
        raise HypothesisViolation(f"the witness lives in characteristic 2, not {ring}")
    if F.a0:
        raise HypothesisViolation("the witness needs an operator with a_0 = 0")
    free = free or (lambda k: delta(ring, F.n))
    zero = Copolynomial(ring, F.n, lambda alpha: 0, "0")

    def make(k):
        if k < 2:
            return zero
        if k % 2 == 0:
            return free(k // 2)
        return F.apply(series.coefficient(k - 1))

    series = CopolySeries(ring, F.n, make, f"witness[{F.label}]", guaranteed=False)
    return series


@dataclass
class ConnectionsReport:
    operator_from_cauchy: bool
    cauchy_from_operator: bool
    time_operator: bool

    @property
    def passed(self) -> bool:
        return self.operator_from_cauchy and self.cauchy_from_operator and self.time_operator

    def to_json(self) -> dict:
        return {
            "E = (F^-1 E_C)(0,x)": self.operator_from_cauchy,
            "E_C = sum F^(k+1) E / k! t^k": self.cauchy_from_operator,
            "E~ = (F^-1 d/dt - I)^-1 (delta(t) x E(x))": self.time_operator,
            "passed": self.passed,
        }


def cross_check_connections(F: DiffOperator, kmax: int, N: int) -> ConnectionsReport:
    """Check the identities linking ``E``, ``E_C`` and the fundamental solution of ``d/dt - F``."""
    ring = F.ring
    if not ring.contains_rationals:
        raise RingCapability(f"the connection identities need QQ, got {ring}")
    E = fundamental_solution(F)
    EC = cauchy_fundamental(F, kmax)

    first = neumann_inverse_apply(F, EC.coefficient(0)).equal_up_to(E, N)

    second = True
    power = E
    for k in range(kmax + 1):
        power = F.apply(power)
        if not power.scale(Fraction(1, math.factorial(k))).equal_up_to(EC.coefficient(k), N):
            second = False
            break

    n1 = F.n + 1
    lifted = F.lift(n1, range(1, n1))
    time_op = DiffOperator(ring, n1, {mi.unit(n1, 0): 1}, "∂t") - lifted
    direct = fundamental_solution(time_op)
    step = inverse_transformer(lifted).compose(derivative_transformer(mi.unit(n1, 0)))
    routed = -neumann_inverse_transformer(step)(delta(ring, 1).tensor(E))
    third = direct.equal_up_to(routed, N)

    return ConnectionsReport(first, second, third)
