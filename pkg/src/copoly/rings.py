"""Exact coefficient rings: the integers, the rationals and Z/mZ.

Elements are plain Python values wherever possible: ``int`` for the
integers, :class:`fractions.Fraction` for the rationals.  Residues modulo
``m`` are :class:`ModInt` instances so that the ordinary operators work on
every ring and generic code can be written with ``+``, ``-`` and ``*``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NotDivisible, NotInvertible, ParseError

__all__ = ["ModInt", "Ring", "ZZ", "QQ", "Zmod", "is_prime", "ring_from_json"]


class ModInt:
    """Residue class modulo ``modulus`` with canonical value in ``[0, m)``."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        self.value = value % modulus
        self.modulus = modulus

    def _coerce(self, other):
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise ValueError(f"mixed moduli {self.modulus} and {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModInt(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModInt(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModInt(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModInt(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.value, self.modulus)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        # negative exponents go through pow's modular inverse
        return ModInt(pow(self.value, e, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"ModInt({self.value}, {self.modulus})"

    def __str__(self):
        return str(self.value)


Element = Union[int, Fraction, ModInt]


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Ring:
    """A commutative ring with exact arithmetic.

    ``kind`` is one of ``"int"``, ``"rat"`` or ``"mod"``; ``modulus`` is only
    meaningful for ``"mod"``.  Use :data:`ZZ`, :data:`QQ` and :func:`Zmod`
    rather than calling the constructor directly.
    """

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in ("int", "rat", "mod"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "mod":
            if self.modulus is None or self.modulus < 2:
                raise ValueError("Z/mZ needs a modulus m >= 2")
        elif self.modulus is not None:
            raise ValueError(f"ring {self.kind!r} takes no modulus")

    # capability flags

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == "mod" else 0

    @property
    def contains_rationals(self) -> bool:
        return self.kind == "rat"

    @property
    def is_integral_domain(self) -> bool:
        return self.kind != "mod" or is_prime(self.modulus)

    @property
    def zero(self) -> Element:
        return self(0)

    @property
    def one(self) -> Element:
        return self(1)

    def __call__(self, x) -> Element:
        """Coerce an int, Fraction, ring element or string into this ring."""
        if isinstance(x, str):
            return self.parse(x)
        if self.kind == "int":
            if isinstance(x, bool):
                return int(x)
            if isinstance(x, int):
                return x
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            raise TypeError(f"cannot coerce {x!r} into ZZ")
        if self.kind == "rat":
            if type(x) is Fraction:
                return x
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot coerce {x!r} into QQ")
        if isinstance(x, ModInt):
            if x.modulus != self.modulus:
                raise TypeError(f"cannot coerce {x!r} into Z/{self.modulus}Z")
            return x
        if isinstance(x, int):
            return ModInt(x, self.modulus)
        if isinstance(x, Fraction):
            return ModInt(x.numerator, self.modulus) * self.invert(
                ModInt(x.denominator, self.modulus))
        raise TypeError(f"cannot coerce {x!r} into Z/{self.modulus}Z")

    def parse(self, text: str) -> Element:
        try:
            q = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not an exact number: {text!r}") from exc
        if self.kind == "int" and q.denominator != 1:
            raise ParseError(f"{text!r} is not an integer")
        try:
            return self(q)
        except NotInvertible as exc:
            raise ParseError(f"{text!r} has no value in Z/{self.modulus}Z") from exc

    def format(self, a: Element) -> str:
        return str(a)

    def invert(self, a: Element) -> Element:
        a = self(a)
        if self.kind == "int":
            if a in (1, -1):
                return a
        elif self.kind == "rat":
            if a != 0:
                return 1 / a
        elif math.gcd(a.value, self.modulus) == 1:
            return ModInt(pow(a.value, -1, self.modulus), self.modulus)
        raise NotInvertible(f"{a} is not invertible in {self}")

    def is_invertible(self, a: Element) -> bool:
        try:
            self.invert(a)
        except NotInvertible:
            return False
        return True

    def exact_div(self, a: Element, k: int) -> Element:
        """Return ``b`` with ``k*b == a``, raising :class:`NotDivisible` if none exists.

        In Z/mZ the solution need not be unique; the least representative
        is returned.
        """
        if k < 1:
            raise ValueError("divisor must be a positive integer")
        a = self(a)
        if self.kind == "int":
            q, r = divmod(a, k)
            if r:
                raise NotDivisible(f"{k} does not divide {a} in ZZ")
            return q
        if self.kind == "rat":
            return a / k
        m = self.modulus
        g = math.gcd(k, m)
        if a.value % g:
            raise NotDivisible(f"{k} does not divide {a} in Z/{m}Z")
        mg = m // g
        b = (a.value // g) * pow(k // g, -1, mg) % mg if mg > 1 else 0
        return ModInt(b, m)

    def to_json(self) -> dict:
        if self.kind == "mod":
            return {"ring": "mod", "m": self.modulus}
        return {"ring": self.kind}

    def __str__(self):
        return {"int": "ZZ", "rat": "QQ"}.get(self.kind) or f"Z/{self.modulus}Z"


ZZ = Ring("int")
QQ = Ring("rat")


def Zmod(m: int, unsafe: bool = False) -> Ring:
    """The ring Z/mZ.  Composite ``m`` requires ``unsafe=True``."""
    if not is_prime(m) and not unsafe:
        raise ValueError(
            f"Z/{m}Z is not an integral domain; pass unsafe=True to allow it")
    return Ring("mod", m)


def ring_from_json(obj, unsafe: bool = False) -> Ring:
    """Parse ``{"ring": "int"}``, ``{"ring": "rat"}`` or ``{"ring": "mod", "m": p}``."""
    if isinstance(obj, str):
        obj = {"ring": obj}
    if not isinstance(obj, dict) or "ring" not in obj:
        raise ParseError(f"bad ring specification: {obj!r}")
    kind = obj["ring"]
    if kind == "int":
        return ZZ
    if kind == "rat":
        return QQ
    if kind == "mod":
        m = obj.get("m")
        if not isinstance(m, int) or isinstance(m, bool) or m < 2:
            raise ParseError(f"mod ring needs an integer m >= 2, got {m!r}")
        try:
            return Zmod(m, unsafe=unsafe)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown ring {kind!r}")
