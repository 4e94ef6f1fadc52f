"""Exact linear solving over field scalars, plus componentwise solving
over finite product rings.

Deterministic by construction: pivots are the first nonzero coefficient
in column order with rows taken in the given order, and free variables
are assigned zero, so equal systems always produce equal answers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import UnsupportedOperationError
from .rings import ProductRing, Ring

INCONSISTENT = "inconsistent"
UNIQUE = "unique"
UNDERDETERMINED = "underdetermined"


@dataclass
class LinearSystem:
    ring: Ring
    num_unknowns: int
    rows: list  # list of (coefficient list, rhs scalar)

    def __post_init__(self):
        for coeffs, _ in self.rows:
            if len(coeffs) != self.num_unknowns:
                raise ValueError("coefficient vector length mismatch")


@dataclass
class Solution:
    status: str
    values: Optional[list]  # None iff inconsistent

    @property
    def ok(self) -> bool:
        return self.values is not None


def solve(system: LinearSystem) -> Solution:
    ring = system.ring
    if isinstance(ring, ProductRing):
        return _solve_product(system)
    if not ring.is_field():
        raise UnsupportedOperationError(f"cannot solve over {ring.kind} ring")
    return _solve_field(system)


def _solve_field(system: LinearSystem) -> Solution:
    ring = system.ring
    m = system.num_unknowns
    rows = [(list(c), r) for c, r in system.rows]
    pivots = []  # (row index, column index)
    rank = 0
    for col in range(m):
        pivot = None
        for ri in range(rank, len(rows)):
            if not ring.is_zero(rows[ri][0][col]):
                pivot = ri
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        coeffs, rhs = rows[rank]
        scale = ring.inv(coeffs[col])
        coeffs = [ring.mul(scale, v) for v in coeffs]
        rhs = ring.mul(scale, rhs)
        rows[rank] = (coeffs, rhs)
        for ri in range(len(rows)):
            if ri == rank:
                continue
            factor = rows[ri][0][col]
            if ring.is_zero(factor):
                continue
            rc, rr = rows[ri]
            rc = [ring.sub(u, ring.mul(factor, v)) for u, v in zip(rc, coeffs)]
            rr = ring.sub(rr, ring.mul(factor, rhs))
            rows[ri] = (rc, rr)
        pivots.append((rank, col))
        rank += 1
    for ri in range(rank, len(rows)):
        if not ring.is_zero(rows[ri][1]):
            return Solution(INCONSISTENT, None)
    values = [ring.zero()] * m  # free variables stay zero
    for rowi, col in pivots:
        values[col] = rows[rowi][1]
    status = UNIQUE if rank == m else UNDERDETERMINED
    return Solution(status, values)


def _solve_product(system: LinearSystem) -> Solution:
    ring: ProductRing = system.ring  # type: ignore[assignment]
    base = ring.base
    per_component = []
    for k in range(ring.size):
        sub = LinearSystem(
            base,
            system.num_unknowns,
            [([c[k] for c in coeffs], rhs[k]) for coeffs, rhs in system.rows],
        )
        sol = solve(sub)
        if not sol.ok:
            return Solution(INCONSISTENT, None)
        per_component.append(sol)
    values = [
        tuple(per_component[k].values[i] for k in range(ring.size))
        for i in range(system.num_unknowns)
    ]
    status = (
        UNIQUE if all(s.status == UNIQUE for s in per_component) else UNDERDETERMINED
    )
    return Solution(status, values)
