"""Acceptance criteria 1-12, all checked by exact equality.

Run alone with ``pytest tests/test_acceptance.py`` (or ``python
tests/test_acceptance.py``); the terminal summary prints one PASS/FAIL line
per criterion.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial, prod

import pytest

from copoly import (
    QQ, ZZ, Polynomial, Zmod, cauchy_fundamental, cauchy_solve, cauchy_solve_by_convolution,
    cauchy_solve_polynomial, check_cauchy_solution, cross_check_connections, delta,
    exp_family, fundamental_solution, laplace, laplace_poly, neumann_inverse_apply,
    nonuniqueness_witness, residue_pairing, solve,
)
from copoly import diffop
from copoly import multiindex as mi
from copoly.errors import DivisibilityFailure
from copoly.series import TruncatedSeries

from _gen import rand_copoly, rand_operator, rand_poly, rand_unit_a0

CASES = 1000


def ffact(a):
    return prod(factorial(x) for x in a)


def test_criterion_01_helmholtz():
    """Helmholtz fundamental solution matches its closed form, c in {1, 2}, |beta| <= 6"""
    for c in (1, 2):
        E = fundamental_solution(diffop.helmholtz(QQ, c, 3))
        for beta in mi.enumerate_indices(3, 6):
            if any(b % 2 for b in beta):
                want = 0
            else:
                alpha = tuple(b // 2 for b in beta)
                k = sum(alpha)
                want = Fraction((-1) ** k * factorial(k) * ffact(beta), ffact(alpha) * c ** (k + 1))
            assert E.moment(beta) == want, (c, beta)


def test_criterion_02_heat_with_mass():
    """Heat-with-mass fundamental solution closed form and Laplace relation to degree 6"""
    E = fundamental_solution(diffop.heat(QQ, 1, 1))
    for l, m in mi.enumerate_indices(2, 6):  # variables (t, x)
        want = 0 if m % 2 else factorial(m) * factorial(l + m // 2) // factorial(m // 2)
        assert E.moment((l, m)) == want, (l, m)
    phi = TruncatedSeries(QQ, 2, 6, {(0, 0): 1, (0, 2): -1, (1, 0): -1})  # c - a z2^2 - z1
    assert phi * laplace(E, 6) == TruncatedSeries.one(QQ, 2, 6)


def test_criterion_03_mixed_operator():
    """Mixed-derivative operator: C_sl = (-1)^(s+1) l! s! for s, l <= 4"""
    E = fundamental_solution(diffop.mixed_xt(ZZ))
    for s in range(5):
        for l in range(5):
            assert E.moment((s, l)) == (-1) ** (s + 1) * factorial(l) * factorial(s), (s, l)
    assert [E.moment((s, 0)) for s in range(5)] == [(-1) ** (s + 1) * factorial(s) for s in range(5)]
    assert [E.moment((0, l)) for l in range(5)] == [-factorial(l) for l in range(5)]


def test_criterion_04_transport():
    """Transport operator: (E, t^l x^beta) = s^beta (|beta| + l)! for s = (2), (1, 2)"""
    for s in ([2], [1, 2]):
        E = fundamental_solution(diffop.transport(ZZ, s))
        for idx in mi.enumerate_indices(len(s) + 1, 5):
            l, beta = idx[0], idx[1:]
            assert E.moment(idx) == mi.power(s, beta) * factorial(sum(beta) + l), (s, idx)


def test_criterion_05_exp_convolution_identity():
    """(a - b)(E_a * E_b) = a E_a - b E_b for a=2, b=1 over ZZ and via Laplace over QQ"""
    a, b, N = 2, 1, 8
    lhs = exp_family(ZZ, a).convolve(exp_family(ZZ, b)).scale(a - b)
    rhs = exp_family(ZZ, a).scale(a) - exp_family(ZZ, b).scale(b)
    assert lhs.equal_up_to(rhs, N)
    assert lhs.moment((2,)) == 14
    La, Lb = laplace(exp_family(QQ, a), N), laplace(exp_family(QQ, b), N)
    assert (La * Lb).scale(a - b) == La.scale(a) - Lb.scale(b)


def test_criterion_06_heat_cauchy_fundamental():
    """Heat Cauchy fundamental solution, n in {1, 2}, |beta| <= 6, k <= 3"""
    a = 1
    for n in (1, 2):
        E = cauchy_fundamental(diffop.laplacian(QQ, n, a), kmax=3)
        for k in range(4):
            for beta in mi.enumerate_indices(n, 6):
                if any(b % 2 for b in beta) or sum(beta) != 2 * k:
                    want = 0
                else:
                    alpha = tuple(b // 2 for b in beta)
                    want = Fraction(ffact(beta), ffact(alpha)) * a ** k
                assert E[k].moment(beta) == want, (n, k, beta)


def test_criterion_07_transport_cauchy():
    """Transport Cauchy fundamental solution equals delta(x + t s), |beta| <= 5"""
    for s in ([3], [1, 2], [-2, 1, 5]):
        n = len(s)
        E = cauchy_fundamental(diffop.directional(ZZ, s))
        for beta in mi.enumerate_indices(n, 5):
            for k in range(7):
                want = (-1) ** sum(beta) * mi.power(s, beta) if k == sum(beta) else 0
                assert E[k].moment(beta) == want, (s, k, beta)
        for t in (-2, 1, 3):
            shifted = delta(ZZ, n).shift([t * v for v in s])
            for beta in mi.enumerate_indices(n, 5):
                assert sum(E[k].moment(beta) * t ** k for k in range(6)) == shifted.moment(beta)


def test_criterion_08_identity_cauchy_over_integers():
    """F = I, Q = delta: DivisibilityFailure at (k=2, alpha=0) over ZZ; 1/k! over QQ"""
    u = cauchy_solve(diffop.identity(ZZ), delta(ZZ))
    with pytest.raises(DivisibilityFailure) as info:
        for k in range(4):
            u[k].moments(3)
    assert (info.value.k, info.value.alpha) == (2, (0,))
    v = cauchy_solve(diffop.identity(QQ), delta(QQ), kmax=8)
    one = Polynomial.constant(QQ, 1, 1)
    assert v.pairing(one, 8) == [Fraction(1, factorial(k)) for k in range(9)]


def test_criterion_09_polynomial_poisson():
    """Q = x^4, a = 1 over ZZ gives x^4 + 12 x^2 t + 12 t^2 and stops at k = 2"""
    out = cauchy_solve_polynomial(1, Polynomial.monomial(ZZ, (4,)))
    assert out == [Polynomial.monomial(ZZ, (4,)), Polynomial.monomial(ZZ, (2,), 12),
                   Polynomial.constant(ZZ, 1, 12)]
    assert len(out) == 3
    assert cauchy_solve_polynomial(1, Polynomial.monomial(ZZ, (4,)), kmax=10) == out


def _props():
    """(name, check(rng)) pairs; each check draws its own random case."""

    def dims(rng):
        return rng.choice([1, 2]), rng.randint(0, 5)

    def conv_laws(rng):
        n, N = dims(rng)
        ring = rng.choice([ZZ, QQ])
        A, B, C = (rand_copoly(rng, ring, n) for _ in range(3))
        return (A.convolve(B).equal_up_to(B.convolve(A), N)
                and A.convolve(B).convolve(C).equal_up_to(A.convolve(B.convolve(C)), N)
                and delta(ring, n).convolve(A).equal_up_to(A, N))

    def operator_commutes_with_convolution(rng):
        n, N = dims(rng)
        F = rand_operator(rng, ZZ, n)
        A, B = rand_copoly(rng, ZZ, n), rand_copoly(rng, ZZ, n)
        return F.apply(A.convolve(B)).equal_up_to(F.apply(A).convolve(B), N)

    def inverse_both_sides(rng):
        n, N = dims(rng)
        ring = rng.choice([ZZ, QQ])
        F = rand_operator(rng, ring, n, a0=rand_unit_a0(rng, ring))
        T = rand_copoly(rng, ring, n)
        return (F.apply(neumann_inverse_apply(F, T)).equal_up_to(T, N)
                and neumann_inverse_apply(F, F.apply(T)).equal_up_to(T, N))

    def solve_is_convolution(rng):
        n, N = dims(rng)
        F = rand_operator(rng, ZZ, n, a0=rand_unit_a0(rng, ZZ))
        T = rand_copoly(rng, ZZ, n)
        return solve(F, T).equal_up_to(fundamental_solution(F).convolve(T), N)

    def parseval(rng):
        n, N = dims(rng)
        T, p = rand_copoly(rng, QQ, n), rand_poly(rng, QQ, n, N)
        return residue_pairing(laplace(T, N), laplace_poly(p)) == T(p)

    def convolution_theorem(rng):
        n, N = dims(rng)
        A, B = rand_copoly(rng, QQ, n), rand_copoly(rng, QQ, n)
        return laplace(A.convolve(B), N) == laplace(A, N) * laplace(B, N)

    def cauchy_routes(rng):
        n, N = dims(rng)
        F, Q = rand_operator(rng, QQ, n), rand_copoly(rng, QQ, n)
        K = 3
        return cauchy_solve(F, Q).equal_up_to(cauchy_solve_by_convolution(F, Q), K, N)

    def divisibility_sound(rng):
        n, N = dims(rng)
        F, Q = rand_operator(rng, ZZ, n, a0=0), rand_copoly(rng, ZZ, n)
        K = 4
        try:
            u = cauchy_solve(F, Q, kmax=K)
            return check_cauchy_solution(u, F, Q, K, N)
        except DivisibilityFailure:
            return False

    return [conv_laws, operator_commutes_with_convolution, inverse_both_sides,
            solve_is_convolution, parseval, convolution_theorem, cauchy_routes,
            divisibility_sound]


@pytest.mark.parametrize("prop", _props(), ids=lambda p: p.__name__)
def test_criterion_10_property_suites(prop):
    """Randomized identities, 1000 cases each, degree <= 5, coefficients in [-9, 9]"""
    rng = random.Random(f"criterion-10-{prop.__name__}")
    bad = [case for case in range(CASES) if not prop(rng)]
    assert not bad, f"{prop.__name__} failed on cases {bad[:5]}"


def test_criterion_11_connections():
    """Connection identities for F in {I, -I, d^2/dx^2 + I} at kmax 3, degree 4"""
    ops = [diffop.identity(QQ), diffop.identity(QQ, 1, -1),
           diffop.from_terms(QQ, 1, {(2,): 1, (0,): 1})]
    for F in ops:
        report = cross_check_connections(F, 3, 4)
        assert report.passed, (F.label, report)


def test_criterion_12_char2_nonuniqueness():
    """Over Z/2Z a nonzero series solves du/dt = F u, u(0) = 0 up to k = 6"""
    ring = Zmod(2)
    for F in (diffop.laplacian(ring, 1), diffop.partial(ring, (1,)),
              diffop.from_terms(ring, 2, {(1, 0): 1, (1, 1): 1, (0, 3): 1})):
        w = nonuniqueness_witness(F)
        zero = delta(ring, F.n).scale(0)
        assert check_cauchy_solution(w, F, zero, 7, 6)
        assert any(m for _, m in w[2].moments(6))


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
