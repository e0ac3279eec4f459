"""Integer primitives over Q: primality, factorization, Legendre and Hilbert symbols.

Everything here works on Python ints and is exact.  Inputs are assumed to be
desk-scale (below roughly 10**12), so factorization is plain trial division.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterator, Optional

from . import kernels

__all__ = [
    "Place",
    "INFINITY",
    "Factorization",
    "is_prime",
    "primes_up_to",
    "factorize",
    "squarefree_part",
    "legendre_symbol",
    "hilbert_symbol",
    "hilbert_symbol_oracle",
    "relevant_places",
]


@functools.total_ordering
@dataclass(frozen=True)
class Place:
    """A place of Q: the real place (``prime is None``) or a prime p."""

    prime: Optional[int] = None

    def __post_init__(self):
        if self.prime is not None and not is_prime(self.prime):
            raise ValueError(f"Finite place needs a prime, got {self.prime}")

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    def _key(self):
        return (0, 0) if self.prime is None else (1, self.prime)

    def __lt__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        return self._key() < other._key()

    def __str__(self):
        return "inf" if self.prime is None else str(self.prime)

    @classmethod
    def parse(cls, text: str) -> "Place":
        t = text.strip().lower()
        if t in ("inf", "infinity", "oo", "∞"):
            return INFINITY
        return cls(int(t))


INFINITY = Place()


@dataclass(frozen=True)
class Factorization:
    """Prime factorization ``sign * prod(p**e)`` with primes strictly ascending."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def factorize(n: int) -> Factorization:
    """Factor a nonzero integer by trial division.

    >>> factorize(-45)
    Factorization(sign=-1, factors=((3, 2), (5, 1)))
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    factors = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            factors.append((p, e))
    f = 5
    step = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e:
            factors.append((f, e))
        f += step
        step = 6 - step
    if n > 1:
        factors.append((n, 1))
    return Factorization(sign, tuple(factors))


def squarefree_part(n: int) -> int:
    """The square-free integer in the square class of ``n`` (sign kept)."""
    fac = factorize(n)
    out = fac.sign
    for p, e in fac:
        if e % 2:
            out *= p
    return out


def _split_valuation(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def legendre_symbol(a: int, p: int) -> int:
    if p == 2 or not is_prime(p):
        raise ValueError(f"Legendre symbol needs an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _check_nonzero(a: int, b: int) -> None:
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol is only defined for nonzero arguments")


def hilbert_symbol(a: int, b: int, v: Place) -> int:
    """Local Hilbert symbol (a, b)_v for nonzero integers a, b.

    Closed-form local formulas: signs at the real place, Legendre symbols of
    the unit parts at odd p, and the epsilon/omega congruence classes at 2.
    """
    _check_nonzero(a, b)
    if v.is_infinite:
        return -1 if a < 0 and b < 0 else 1
    p = v.prime
    alpha, u = _split_valuation(a, p)
    beta, w = _split_valuation(b, p)
    if p == 2:
        eps_u = ((u - 1) // 2) % 2
        eps_w = ((w - 1) // 2) % 2
        om_u = ((u * u - 1) // 8) % 2
        om_w = ((w * w - 1) // 8) % 2
        e = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        s *= legendre_symbol(u, p)
    if alpha % 2:
        s *= legendre_symbol(w, p)
    return s


def oracle_depth(p: int) -> int:
    """Hensel depth K used by the oracle: solutions are searched mod p**K."""
    return 6 if p == 2 else 3


def hilbert_symbol_oracle(a: int, b: int, v: Place) -> int:
    """Hilbert symbol by exhaustive search, independent of :func:`hilbert_symbol`.

    ``a`` and ``b`` must be square-free.  At a prime p, looks for a primitive
    solution of ``a x^2 + b y^2 = z^2`` modulo ``p**K`` (K = 6 at 2, else 3).
    """
    _check_nonzero(a, b)
    for n in (a, b):
        if squarefree_part(n) != n:
            raise ValueError(f"oracle needs square-free input, got {n}")
    if v.is_infinite:
        return -1 if a < 0 and b < 0 else 1
    p = v.prime
    found = kernels.primitive_conic_solvable(a, b, p, oracle_depth(p))
    return 1 if found else -1


def relevant_places(a: int, b: int) -> list[Place]:
    """The real place plus every prime dividing 2ab; all other symbols are +1."""
    primes = set(factorize(2 * a * b).primes)
    return [INFINITY] + [Place(p) for p in sorted(primes)]
