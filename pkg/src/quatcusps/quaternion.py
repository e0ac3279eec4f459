"""Quaternion algebras Q(a, b | Q), their elements, and ramification.

The algebra has basis 1, i, j, ij with i^2 = a, j^2 = b and ij = -ji.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .numtheory import (
    INFINITY,
    Place,
    hilbert_symbol,
    is_prime,
    legendre_symbol,
    relevant_places,
    squarefree_part,
)

Rational = Union[int, Fraction]

__all__ = [
    "QuaternionAlgebra",
    "QuaternionElement",
    "RamificationSet",
    "multiply",
    "conjugate",
    "reduced_trace",
    "reduced_norm",
    "reduced_char_poly",
    "ramification_set",
    "is_definite",
    "is_division",
    "discriminant",
    "algebra_for_prime",
    "class_number",
]

# guard for the search of an auxiliary prime in algebra_for_prime
_AUX_PRIME_BOUND = 10**6


@dataclass(frozen=True)
class RamificationSet:
    """Sorted tuple of the places where an algebra ramifies."""

    places: tuple[Place, ...]

    def __iter__(self):
        return iter(self.places)

    def __len__(self):
        return len(self.places)

    def __contains__(self, v):
        return v in self.places

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(v.prime for v in self.places if not v.is_infinite)

    def __str__(self):
        return "{" + ", ".join(str(v) for v in self.places) + "}"


def _to_int_param(x: Rational) -> int:
    x = Fraction(x)
    if x == 0:
        raise ValueError("quaternion algebra parameters must be nonzero")
    # scaling by a square keeps the isomorphism class
    return x.numerator * x.denominator


class QuaternionAlgebra:
    """Q(a, b | Q) for nonzero a, b.

    Rational parameters are replaced by integers in the same square class.
    """

    __slots__ = ("a", "b", "__dict__")

    def __init__(self, a: Rational, b: Rational):
        object.__setattr__(self, "a", _to_int_param(a))
        object.__setattr__(self, "b", _to_int_param(b))

    def __setattr__(self, name, value):
        if name in ("a", "b"):
            raise AttributeError("QuaternionAlgebra is immutable")
        object.__setattr__(self, name, value)

    def __repr__(self):
        return f"QuaternionAlgebra({self.a}, {self.b})"

    def __eq__(self, other):
        if not isinstance(other, QuaternionAlgebra):
            return NotImplemented
        return (self.a, self.b) == (other.a, other.b)

    def __hash__(self):
        return hash((QuaternionAlgebra, self.a, self.b))

    # Racing first reads may both compute this; the value is deterministic.
    @functools.cached_property
    def ramification(self) -> RamificationSet:
        a, b = squarefree_part(self.a), squarefree_part(self.b)
        ram = tuple(v for v in relevant_places(a, b) if hilbert_symbol(a, b, v) == -1)
        if len(ram) % 2:
            raise AssertionError(f"odd ramification set {ram} for {self!r}")
        return RamificationSet(ram)

    @property
    def is_definite(self) -> bool:
        return INFINITY in self.ramification

    @property
    def is_division(self) -> bool:
        return len(self.ramification) > 0

    @property
    def discriminant(self) -> int:
        d = 1
        for p in self.ramification.primes:
            d *= p
        return d

    # element constructors
    def element(self, x0: Rational = 0, x1: Rational = 0, x2: Rational = 0, x3: Rational = 0):
        return QuaternionElement(self, (x0, x1, x2, x3))

    def one(self) -> "QuaternionElement":
        return self.element(1)

    def basis(self) -> tuple["QuaternionElement", ...]:
        return tuple(self.element(*(int(k == n) for k in range(4))) for n in range(4))

    def gens(self) -> tuple["QuaternionElement", "QuaternionElement"]:
        _, i, j, _ = self.basis()
        return i, j


class QuaternionElement:
    """x0 + x1 i + x2 j + x3 ij with rational coordinates."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: QuaternionAlgebra, coords: Iterable[Rational]):
        c = tuple(Fraction(x) for x in coords)
        if len(c) != 4:
            raise ValueError("a quaternion has exactly 4 coordinates")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coords", c)

    def __setattr__(self, name, value):
        raise AttributeError("QuaternionElement is immutable")

    def _same(self, other: "QuaternionElement") -> None:
        if self.algebra != other.algebra:
            raise ValueError(f"elements of {self.algebra!r} and {other.algebra!r} cannot be combined")

    def _coerce(self, other):
        if isinstance(other, QuaternionElement):
            self._same(other)
            return other
        if isinstance(other, (int, Fraction)):
            return QuaternionElement(self.algebra, (other, 0, 0, 0))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuaternionElement(self.algebra, (s + t for s, t in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return QuaternionElement(self.algebra, (-s for s in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuaternionElement(self.algebra, (s * other for s in self.coords))
        if not isinstance(other, QuaternionElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuaternionElement(self.algebra, (s / other for s in self.coords))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuaternionElement(self.algebra, (other, 0, 0, 0))
        if not isinstance(other, QuaternionElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash((self.algebra, self.coords))

    def __repr__(self):
        return f"QuaternionElement({self.algebra!r}, {tuple(str(c) for c in self.coords)})"

    def __str__(self):
        terms = []
        for c, name in zip(self.coords, ("", "i", "j", "ij")):
            if c:
                terms.append(f"{c}{'*' + name if name else ''}")
        return " + ".join(terms) if terms else "0"

    def conjugate(self) -> "QuaternionElement":
        return conjugate(self)

    def reduced_trace(self) -> Fraction:
        return reduced_trace(self)

    def reduced_norm(self) -> Fraction:
        return reduced_norm(self)


def multiply(x: QuaternionElement, y: QuaternionElement) -> QuaternionElement:
    x._same(y)
    a, b = x.algebra.a, x.algebra.b
    x0, x1, x2, x3 = x.coords
    y0, y1, y2, y3 = y.coords
    return QuaternionElement(
        x.algebra,
        (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ),
    )


def conjugate(x: QuaternionElement) -> QuaternionElement:
    x0, x1, x2, x3 = x.coords
    return QuaternionElement(x.algebra, (x0, -x1, -x2, -x3))


def reduced_trace(x: QuaternionElement) -> Fraction:
    return 2 * x.coords[0]


def reduced_norm(x: QuaternionElement) -> Fraction:
    a, b = x.algebra.a, x.algebra.b
    x0, x1, x2, x3 = x.coords
    return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3


def reduced_char_poly(x: QuaternionElement) -> tuple[Fraction, Fraction]:
    """Coefficients (t, n) of the reduced characteristic polynomial X^2 - t X + n."""
    return reduced_trace(x), reduced_norm(x)


def ramification_set(A: QuaternionAlgebra) -> RamificationSet:
    return A.ramification


def is_definite(A: QuaternionAlgebra) -> bool:
    return A.is_definite


def is_division(A: QuaternionAlgebra) -> bool:
    return A.is_division


def discriminant(A: QuaternionAlgebra) -> int:
    return A.discriminant


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def algebra_for_prime(p: int) -> QuaternionAlgebra:
    """The definite algebra ramified exactly at {inf, p}.

    For p = 1 mod 4 the auxiliary prime q is the smallest prime q = 3 mod 4
    that is a non-residue mod p.
    """
    _require_prime(p)
    if p == 2:
        A = QuaternionAlgebra(-1, -1)
    elif p % 4 == 3:
        A = QuaternionAlgebra(-1, -p)
    else:
        q = 3
        while not (is_prime(q) and legendre_symbol(q, p) == -1):
            q += 4
            if q > _AUX_PRIME_BOUND:
                raise RuntimeError(f"no auxiliary prime below {_AUX_PRIME_BOUND} for p = {p}")
        A = QuaternionAlgebra(-q, -p)
    if A.ramification.places != (INFINITY, Place(p)):
        raise AssertionError(f"{A!r} ramifies at {A.ramification}, expected {{inf, {p}}}")
    return A


def class_number(p: int) -> int:
    """Class number of the definite quaternion algebra of prime discriminant p."""
    _require_prime(p)
    if p in (2, 3):
        return 1
    offset = {1: -1, 5: 7, 7: 5, 11: 13}[p % 12]
    h, rem = divmod(p + offset, 12)
    assert rem == 0 and h > 0
    return h
