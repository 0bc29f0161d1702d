"""Formal Laplace transform of copolynomials and the residue pairing.

Everything here divides by factorials, so the coefficient ring must
contain the rationals.
"""

from __future__ import annotations

from . import multiindex as mi
from .copolynomial import Copolynomial
from .diffop import DiffOperator, symbol
from .errors import RingCapability, TruncationTooLow
from .polynomial import Polynomial
from .rings import Ring
from .series import LaurentPoly, TruncatedSeries


def _require_rationals(ring: Ring, what: str):
    if not ring.contains_rationals:
        raise RingCapability(f"{what} needs a ring containing QQ, got {ring}")


def laplace(T: Copolynomial, N: int) -> TruncatedSeries:
    """``sum_{|alpha| <= N} (T, x^alpha)/alpha! z^alpha``."""
    _require_rationals(T.ring, "the Laplace transform")
    return TruncatedSeries(T.ring, T.n, N,
                           {a: m / mi.factorial(a) for a, m in T.moments(N)})


def laplace_poly(p: Polynomial) -> LaurentPoly:
    """``sum alpha! c_alpha z^(-alpha-1)``."""
    _require_rationals(p.ring, "the Laplace transform")
    return LaurentPoly(p.ring, p.n,
                       {tuple(-a - 1 for a in alpha): mi.factorial(alpha) * c
                        for alpha, c in p.items()})


def residue_pairing(Ts: TruncatedSeries, ps: LaurentPoly):
    """Formal residue of ``Ts * ps``; equals ``(T, p)`` by Parseval.

    Raises TruncationTooLow when ``ps`` reaches coefficients of ``Ts`` above
    its truncation degree.
    """
    if Ts.n != ps.n:
        raise ValueError("series and Laurent polynomial have different variable counts")
    for e in ps.exponents():
        needed = [-x - 1 for x in e]
        if all(v >= 0 for v in needed) and sum(needed) > Ts.N:
            raise TruncationTooLow(
                f"pairing needs the coefficient at {tuple(needed)} but the series stops at degree {Ts.N}")
    return (Ts.to_laurent() * ps).residue()


def convolution_theorem_holds(T1: Copolynomial, T2: Copolynomial, N: int) -> bool:
    return laplace(T1.convolve(T2), N) == laplace(T1, N) * laplace(T2, N)


def check_symbol_relation(F: DiffOperator, T: Copolynomial, N: int) -> bool:
    """Whether ``L(F T) = phi(-z) L(T)`` holds up to degree ``N``."""
    _require_rationals(F.ring, "the symbol relation")
    return laplace(F.apply(T), N) == symbol(F, N).reflect() * laplace(T, N)
