"""Finite group orders, congruence-subgroup indices and cusp counts.

Here G is SL_2 over a maximal order Lambda = M_2(Lambda_D) of M_2(D), an inner
form of SL_4 over Q, and Gamma(a) is its principal congruence subgroup of
level a.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import kernels
from .numtheory import Factorization, factorize, is_prime
from .quaternion import QuaternionAlgebra, class_number

__all__ = [
    "DIM_G",
    "HypothesisError",
    "CongruenceLevel",
    "IndexResult",
    "local_group_order",
    "local_index",
    "global_index",
    "resolve_class_number",
    "cusp_count_level_one",
    "cusp_count",
    "sl4_order_oracle",
]

#: dimension of the Q-group G = SL_Lambda (an inner form of SL_4)
DIM_G = 15

#: exponent of N(p^e) divided out of the index in the cusp formula
_CUSP_NORM_EXPONENT = 4


class HypothesisError(ValueError):
    """Inputs are well formed but violate a mathematical hypothesis of a formula."""


@dataclass(frozen=True)
class CongruenceLevel:
    """A level ideal a = prod p^e of Z."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("level primes must be strictly ascending")
        for p, e in self.factors:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if e < 1:
                raise ValueError(f"exponent of {p} must be at least 1, got {e}")

    @classmethod
    def from_int(cls, n: int) -> "CongruenceLevel":
        if n < 1:
            raise ValueError("level must be a positive integer")
        return cls(factorize(n).factors)

    @classmethod
    def prime_power(cls, p: int, e: int) -> "CongruenceLevel":
        return cls(((p, e),))

    @property
    def norm(self) -> int:
        return Factorization(1, self.factors).value()


@dataclass(frozen=True)
class IndexResult:
    value: int
    local_factors: tuple[tuple[int, int, int], ...]


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def local_group_order(A: QuaternionAlgebra, p: int) -> int:
    """|G_Lambda(Z/p)|: |SL_4(F_p)| where D splits, q^10 (q+1)(q^4-1) where it ramifies."""
    _require_prime(p)
    q = p
    if A.discriminant % p:
        return q**6 * (q**2 - 1) * (q**3 - 1) * (q**4 - 1)
    return q**10 * (q + 1) * (q**4 - 1)


def local_index(A: QuaternionAlgebra, p: int, e: int) -> int:
    if e < 1:
        raise ValueError(f"exponent must be at least 1, got {e}")
    return p ** (DIM_G * (e - 1)) * local_group_order(A, p)


def global_index(A: QuaternionAlgebra, level: CongruenceLevel) -> IndexResult:
    local = tuple((p, e, local_index(A, p, e)) for p, e in level.factors)
    value = 1
    for *_, idx in local:
        value *= idx
    return IndexResult(value, local)


def resolve_class_number(A: QuaternionAlgebra, h: Optional[int] = None) -> int:
    """``h`` if given, else the class number when D is definite of prime discriminant."""
    if h is not None:
        if h < 1:
            raise ValueError(f"class number must be positive, got {h}")
        return h
    d = A.discriminant
    if A.is_definite and is_prime(d):
        return class_number(d)
    raise ValueError(f"class number of {A!r} (discriminant {d}) must be supplied")


def _require_division(A: QuaternionAlgebra) -> None:
    if not A.is_division:
        raise HypothesisError(f"{A!r} is split (M_2(Q)); the cusp formulas need a division algebra")


def cusp_count_level_one(A: QuaternionAlgebra, h: Optional[int] = None) -> int:
    """Number of cusps of Gamma_Lambda: h^2 for definite D, h for indefinite D."""
    _require_division(A)
    h = resolve_class_number(A, h)
    return h * h if A.is_definite else h


def cusp_count(
    A: QuaternionAlgebra,
    h: Optional[int],
    p: int,
    e: int,
    mu: Optional[int] = None,
) -> int:
    """Number of cusps of Gamma_Lambda(p^e) for a prime p at which D splits.

    Definite D: h^2 N(p^e)^-4 [Gamma : Gamma(p^e)].  Indefinite D additionally
    divides by ``mu``, the order of Lambda_D^x modulo units congruent to 1 mod p^e,
    which has to be supplied.
    """
    _require_division(A)
    _require_prime(p)
    if e < 1:
        raise ValueError(f"exponent must be at least 1, got {e}")
    if A.discriminant % p == 0:
        raise HypothesisError(
            f"D ramifies at {p}; the cusp count of Gamma(p^e) is only established at primes where D splits"
        )
    h = resolve_class_number(A, h)
    index = local_index(A, p, e)
    if A.is_definite:
        num, den = h * h * index, p ** (_CUSP_NORM_EXPONENT * e)
    else:
        if mu is None:
            raise ValueError("indefinite D needs mu = |Lambda_D^x / Lambda_D^x(p^e)|")
        if mu < 1:
            raise ValueError(f"mu must be positive, got {mu}")
        num, den = h * index, mu * p ** (_CUSP_NORM_EXPONENT * e)
    c, rem = divmod(num, den)
    if rem:
        if A.is_definite:
            raise AssertionError(f"cusp count {num}/{den} is not an integer")
        raise HypothesisError(f"cusp count {num}/{den} is not an integer; mu = {mu} is inconsistent")
    return c


def sl4_order_oracle(q: int, workers: int = 1) -> int:
    """|SL_4(F_q)| by evaluating the determinant of all q^16 matrices.

    The first-row index range is split into ``workers`` disjoint chunks; the
    count does not depend on the split.
    """
    if q not in (2, 3):
        raise ValueError(f"enumeration is limited to q in (2, 3), got {q}")
    nrow = q**4
    workers = max(1, min(workers, nrow))
    bounds = [nrow * k // workers for k in range(workers + 1)]
    chunks = list(zip(bounds[:-1], bounds[1:]))
    if workers == 1:
        return kernels.sl4_det_one_count(q, 0, nrow)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(lambda c: kernels.sl4_det_one_count(q, *c), chunks))
