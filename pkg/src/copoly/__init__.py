"""Exact computation with copolynomials over commutative rings."""

from .cauchy import (
    ConnectionsReport,
    CopolySeries,
    as_polynomial_in_t,
    cauchy_fundamental,
    cauchy_solve,
    cauchy_solve_by_convolution,
    cauchy_solve_polynomial,
    check_cauchy_solution,
    cross_check_connections,
    nonuniqueness_witness,
    solve_inhomogeneous_heat,
)
from .copolynomial import (
    Copolynomial,
    convolve,
    delta,
    delta_derivative,
    equal_up_to,
    exp_family,
    from_moments,
    linear_combination,
    tensor,
)
from .diffop import (
    DiffOperator,
    MomentTransformer,
    fundamental_solution,
    neumann_inverse_apply,
    neumann_inverse_transformer,
    solve,
    solve_polynomial,
    symbol,
)
from .errors import (
    CopolyError,
    DivisibilityFailure,
    HypothesisViolation,
    NoTerminationWitness,
    NotDivisible,
    NotInvertible,
    OrderViolation,
    ParseError,
    RingCapability,
    TruncationMismatch,
    TruncationTooLow,
)
from .laplace import check_symbol_relation, laplace, laplace_poly, residue_pairing
from .polynomial import Polynomial
from .rings import QQ, ZZ, ModInt, Ring, Zmod
from .series import LaurentPoly, TruncatedSeries

__version__ = "0.1.0"
