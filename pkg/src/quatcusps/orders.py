"""Orders in quaternion algebras over Q.

An order is stored as a Z-basis of four quaternions.  Every constructor
checks the ring axioms; maximal orders are reached by enlarging a given
order one prime at a time until its reduced discriminant equals the
discriminant of the algebra.
"""
from __future__ import annotations

import itertools
import json
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .numtheory import factorize
from .quaternion import QuaternionAlgebra, QuaternionElement, reduced_norm, reduced_trace

__all__ = [
    "OrderError",
    "QuaternionOrder",
    "make_order",
    "standard_order",
    "hurwitz_order",
    "reduced_discriminant",
    "is_maximal",
    "maximalize",
    "contains",
    "order_to_json",
    "order_from_json",
]


class OrderError(ValueError):
    """A proposed basis violates one of the order axioms.

    ``axiom`` is one of ``"independence"``, ``"unit"``, ``"integrality"``,
    ``"closure"`` or ``"discriminant"``.
    """

    def __init__(self, axiom: str, message: str):
        super().__init__(f"{axiom}: {message}")
        self.axiom = axiom


def _is_int(x: Fraction) -> bool:
    return Fraction(x).denominator == 1


def _det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def _inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix; zero rows dropped."""
    rows = [list(r) for r in rows if any(r)]
    ncols = len(rows[0]) if rows else 0
    out: list[list[int]] = []
    for c in range(ncols):
        active = [r for r in rows if r[c] != 0]
        rest = [r for r in rows if r[c] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            reduced = [piv]
            for r in active[1:]:
                q = r[c] // piv[c]
                r = [x - q * y for x, y in zip(r, piv)]
                (reduced if r[c] != 0 else rest).append(r)
            active = reduced
        if active:
            piv = active[0]
            if piv[c] < 0:
                piv = [-x for x in piv]
            out.append(piv)
        rows = [r for r in rest if any(r)]
    for i, piv in enumerate(out):
        c = next(k for k, x in enumerate(piv) if x)
        for j in range(i):
            q = out[j][c] // piv[c]
            if q:
                out[j] = [x - q * y for x, y in zip(out[j], piv)]
    return out


def _lattice_basis(vectors: Iterable[Sequence[Fraction]]) -> list[tuple[Fraction, ...]]:
    """A canonical Z-basis (HNF) for the lattice spanned by rational vectors."""
    vecs = [tuple(Fraction(x) for x in v) for v in vectors]
    den = 1
    for v in vecs:
        for x in v:
            den = den * x.denominator // math.gcd(den, x.denominator)
    rows = _hnf([[int(x * den) for x in v] for v in vecs])
    return [tuple(Fraction(x, den) for x in r) for r in rows]


class QuaternionOrder:
    """A Z-order given by four basis quaternions; validated on construction."""

    def __init__(self, algebra: QuaternionAlgebra, basis: Sequence[QuaternionElement]):
        basis = tuple(basis)
        if len(basis) != 4:
            raise OrderError("independence", f"need 4 basis elements, got {len(basis)}")
        for e in basis:
            if e.algebra != algebra:
                raise ValueError(f"basis element {e} does not lie in {algebra!r}")
        self.algebra = algebra
        self.basis = basis
        matrix = [list(e.coords) for e in basis]
        if _det(matrix) == 0:
            raise OrderError("independence", "basis is linearly dependent over Q")
        self._inv = _inverse(matrix)
        self._validate()

    def coordinates(self, x: QuaternionElement) -> tuple[Fraction, ...]:
        """Coordinates of ``x`` with respect to the order basis."""
        return tuple(sum((x.coords[k] * self._inv[k][j] for k in range(4)), Fraction(0)) for j in range(4))

    def contains(self, x: QuaternionElement) -> bool:
        return all(_is_int(c) for c in self.coordinates(x))

    def _validate(self) -> None:
        if not self.contains(self.algebra.one()):
            raise OrderError("unit", "1 is not in the lattice")
        for e in self.basis:
            t, n = reduced_trace(e), reduced_norm(e)
            if not (_is_int(t) and _is_int(n)):
                raise OrderError("integrality", f"{e} has reduced trace {t} and reduced norm {n}")
        for e, f in itertools.product(self.basis, repeat=2):
            prod = e * f
            if not self.contains(prod):
                raise OrderError("closure", f"product ({e})*({f}) = {prod} leaves the lattice")
            t = reduced_trace(prod)
            if not _is_int(t):
                raise OrderError("integrality", f"product ({e})*({f}) has reduced trace {t}")

    def gram_matrix(self) -> list[list[Fraction]]:
        return [[reduced_trace(e * f) for f in self.basis] for e in self.basis]

    @property
    def reduced_discriminant(self) -> int:
        return reduced_discriminant(self)

    def __repr__(self):
        return f"QuaternionOrder({self.algebra!r}, basis=[{'; '.join(str(e) for e in self.basis)}])"

    def __eq__(self, other):
        if not isinstance(other, QuaternionOrder):
            return NotImplemented
        return self.algebra == other.algebra and all(other.contains(e) for e in self.basis) and all(
            self.contains(e) for e in other.basis
        )

    __hash__ = None


def make_order(A: QuaternionAlgebra, basis: Sequence[QuaternionElement]) -> QuaternionOrder:
    return QuaternionOrder(A, basis)


def standard_order(A: QuaternionAlgebra) -> QuaternionOrder:
    """The order Z<1, i, j, ij>.  For Q(-1, -1) this is the Lipschitz order."""
    return QuaternionOrder(A, A.basis())


def hurwitz_order(A: QuaternionAlgebra | None = None) -> QuaternionOrder:
    """The Hurwitz order Z<1, i, j, (1 + i + j + ij)/2> in Q(-1, -1)."""
    if A is None:
        A = QuaternionAlgebra(-1, -1)
    if (A.a, A.b) != (-1, -1):
        raise ValueError("the Hurwitz order lives in Q(-1, -1)")
    return QuaternionOrder(A, [A.one(), A.element(0, 1), A.element(0, 0, 1), A.element(1, 1, 1, 1) / 2])


def reduced_discriminant(O: QuaternionOrder) -> int:
    det = _det(O.gram_matrix())
    if not _is_int(det):
        raise OrderError("discriminant", f"trace form determinant {det} is not an integer")
    n = abs(int(det))
    d = math.isqrt(n)
    if d * d != n:
        raise OrderError("discriminant", f"|det| = {n} is not a perfect square")
    return d


def is_maximal(O: QuaternionOrder) -> bool:
    return reduced_discriminant(O) == O.algebra.discriminant


def contains(O: QuaternionOrder, x: QuaternionElement) -> bool:
    return O.contains(x)


def _ring_closure(A: QuaternionAlgebra, gens: Sequence[QuaternionElement]):
    """Smallest order containing ``gens``, or None if that ring is not integral.

    Termination: while the trace form stays integral, |det| is a positive
    integer that drops by the square of the index at every proper enlargement.
    """
    basis = [A.element(*v) for v in _lattice_basis(g.coords for g in gens)]
    if len(basis) != 4:
        return None
    while True:
        if not all(_is_int(reduced_trace(e)) and _is_int(reduced_norm(e)) for e in basis):
            return None
        products = [e * f for e, f in itertools.product(basis, repeat=2)]
        if not all(_is_int(reduced_trace(x)) for x in products):
            return None
        new = [A.element(*v) for v in _lattice_basis([e.coords for e in basis] + [x.coords for x in products])]
        if [e.coords for e in new] == [e.coords for e in basis]:
            return QuaternionOrder(A, basis)
        basis = new


def _enlarge_at(O: QuaternionOrder, p: int) -> QuaternionOrder | None:
    """An order strictly containing O with index a power of p, or None if O is p-maximal."""
    A = O.algebra
    for c in itertools.product(range(p), repeat=4):
        if not any(c):
            continue
        x = sum((e * ci for e, ci in zip(O.basis, c)), A.element()) / p
        if not (_is_int(reduced_trace(x)) and _is_int(reduced_norm(x))):
            continue
        bigger = _ring_closure(A, list(O.basis) + [x])
        if bigger is not None:
            return bigger
    return None


def maximalize(O: QuaternionOrder) -> QuaternionOrder:
    """A maximal order containing ``O``.

    While the reduced discriminant exceeds the algebra discriminant, take the
    smallest prime p dividing their ratio, scan the cosets of (1/p)O / O for
    an integral element x, and replace O by the ring generated by O and x.
    """
    disc = O.algebra.discriminant
    while True:
        d = reduced_discriminant(O)
        if d == disc:
            return O
        if d % disc:
            raise AssertionError(f"reduced discriminant {d} not divisible by {disc}")
        for p in factorize(d // disc).primes:
            bigger = _enlarge_at(O, p)
            if bigger is not None:
                break
        else:
            raise AssertionError(f"no enlargement found for {O!r} with d = {d}")
        assert reduced_discriminant(bigger) < d
        O = bigger


def order_to_json(O: QuaternionOrder) -> str:
    """Serialize as {"a", "b", "basis"}; basis is a 4x4 array of "n/d" strings."""
    return json.dumps(
        {
            "a": str(O.algebra.a),
            "b": str(O.algebra.b),
            "basis": [[f"{c.numerator}/{c.denominator}" for c in e.coords] for e in O.basis],
        },
        sort_keys=True,
    )


def order_from_json(text: str) -> QuaternionOrder:
    data = json.loads(text)
    A = QuaternionAlgebra(int(data["a"]), int(data["b"]))
    basis = data["basis"]
    if len(basis) != 4 or any(len(row) != 4 for row in basis):
        raise OrderError("independence", "basis must be a 4x4 array")
    return QuaternionOrder(A, [A.element(*(Fraction(s) for s in row)) for row in basis])
