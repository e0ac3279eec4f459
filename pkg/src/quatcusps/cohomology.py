"""Dimension bookkeeping for the boundary of the Borel-Serre compactification.

For definite D every boundary component is a 4-torus, so with c cusps
H^q(boundary) has dimension c * C(4, q).  The image R^q of restriction has
dim R^0 = 1, dim R^2 = 3c, dim R^1 + dim R^3 = 4c and dim R^4 = c - 1.  Only
the sum of R^1 and R^3 is known, so that is all the report carries.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .groups import HypothesisError
from .quaternion import QuaternionAlgebra

__all__ = [
    "TORUS_DIM",
    "CuspCohomologyReport",
    "BoundaryDescriptor",
    "torus_betti",
    "boundary_report",
    "boundary_descriptor",
]

TORUS_DIM = 4


def torus_betti(q: int) -> int:
    if not 0 <= q <= TORUS_DIM:
        raise ValueError(f"degree must lie in [0, {TORUS_DIM}], got {q}")
    return comb(TORUS_DIM, q)


@dataclass(frozen=True)
class CuspCohomologyReport:
    cusp_count: int
    boundary_betti: tuple[int, ...]
    r0: int
    r13_sum: int
    r2: int
    r4: int

    @property
    def total_boundary(self) -> int:
        return sum(self.boundary_betti)

    @property
    def total_image(self) -> int:
        return self.r0 + self.r13_sum + self.r2 + self.r4

    def check(self) -> None:
        """Raise AssertionError unless the image is exactly half of H^*(boundary)."""
        c, betti = self.cusp_count, self.boundary_betti
        assert betti == tuple(c * torus_betti(q) for q in range(TORUS_DIM + 1)), betti
        assert self.r0 == 1
        assert 2 * self.r2 == betti[2]
        assert self.r13_sum == betti[3]
        assert self.r4 == betti[4] - 1
        assert 2 * self.total_image == self.total_boundary, (self.total_image, self.total_boundary)


def boundary_report(c: int) -> CuspCohomologyReport:
    """Betti numbers of the boundary and dimensions of R^q for c cusps (definite D)."""
    if c < 1:
        raise ValueError(f"cusp count must be at least 1, got {c}")
    betti = tuple(c * torus_betti(q) for q in range(TORUS_DIM + 1))
    report = CuspCohomologyReport(
        cusp_count=c,
        boundary_betti=betti,
        r0=1,
        r13_sum=betti[3],
        r2=betti[2] // 2,
        # codimension one inside the top boundary degree
        r4=betti[4] - 1,
    )
    report.check()
    return report


@dataclass(frozen=True)
class BoundaryDescriptor:
    case: str
    component_type: str
    fibre_dim: int
    base_dim: int
    total_manifold_dim: int


def boundary_descriptor(A: QuaternionAlgebra) -> BoundaryDescriptor:
    """Shape of a boundary component of X_G / Gamma.

    Definite D: X_G is hyperbolic 5-space and each component is a 4-torus.
    Indefinite D: X_G has dimension 9 and each component is a 4-torus bundle
    over a compact quotient of the product of two upper half planes.
    """
    if not A.is_division:
        raise HypothesisError(f"{A!r} is split; boundary structure is only described for division algebras")
    if A.is_definite:
        return BoundaryDescriptor("definite", "torus", TORUS_DIM, 0, 5)
    return BoundaryDescriptor("indefinite", "torus-bundle", TORUS_DIM, 4, 9)
