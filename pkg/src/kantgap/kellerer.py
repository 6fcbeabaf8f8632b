"""Cover and capacity functionals on cell sets, with their flow duals.

For a cell set L inside the grid X x Y:

* the cover value m(L) is the least mu(A) + nu(B) over band covers
  L subset (A x Y) u (X x B);
* the matching mass is the largest total mass of a partial coupling
  supported inside L;
* on a single space with one shared weighting, the capacity gamma(L) is
  the least integral of f: X -> [0, 1] with f(x) + f(y) >= 1 on L.

Cover and matching mass agree exactly on every instance (max-flow min-cut in
LP clothing), and the capacity sandwiches the cover within a factor of 4:
gamma <= m <= 4 gamma, via the threshold set {f >= 1/2} on one side and
indicator functions on the other.

The zero level of all of these is the Kellerer-type dichotomy: either L is
covered by weightless bands (so every coupling ignores it), or some full
coupling charges it; ``kellerer_decompose`` returns whichever object exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterator, Optional, Sequence, Tuple

from . import modes
from .core import (
    INF,
    CostMatrix,
    Coupling,
    Marginal,
    make_cost_matrix,
    make_coupling,
    product_coupling,
)
from .errors import (
    DimensionMismatchError,
    InputError,
    MassMismatchError,
    NotSquareError,
    PostconditionError,
)
from .flow import _run_ssp
from .primal import _require_probability, primal_value
from .simplex import OPTIMAL, solve_lp


@dataclass(frozen=True)
class CellSet:
    """Boolean membership matrix of a subset of the grid."""

    rows: Tuple[Tuple[bool, ...], ...]

    @property
    def nx(self) -> int:
        return len(self.rows)

    @property
    def ny(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def cells(self) -> Iterator[Tuple[int, int]]:
        for i, row in enumerate(self.rows):
            for j, flag in enumerate(row):
                if flag:
                    yield i, j

    def __contains__(self, ij: Tuple[int, int]) -> bool:
        i, j = ij
        return bool(self.rows[i][j])

    def is_empty(self) -> bool:
        return not any(any(row) for row in self.rows)


def cellset_from_pairs(nx: int, ny: int, pairs: Sequence[Tuple[int, int]]) -> CellSet:
    grid = [[False] * ny for _ in range(nx)]
    for i, j in pairs:
        if not (0 <= i < nx and 0 <= j < ny):
            raise InputError(f"cell ({i}, {j}) outside a {nx}x{ny} grid")
        grid[i][j] = True
    return CellSet(rows=tuple(tuple(row) for row in grid))


def cellset_from_matrix(rows: Sequence[Sequence]) -> CellSet:
    if not rows or not rows[0]:
        raise InputError("cell-set matrix needs at least one row and column")
    width = len(rows[0])
    out = []
    for row in rows:
        if len(row) != width:
            raise DimensionMismatchError("ragged cell-set matrix")
        out.append(tuple(bool(v) for v in row))
    return CellSet(rows=tuple(out))


def _check_shape(L: CellSet, mu: Marginal, nu: Marginal) -> None:
    if L.nx != mu.space.size or L.ny != nu.space.size:
        raise DimensionMismatchError("cell set does not match the marginals")


def _indicator_cost(L: CellSet) -> CostMatrix:
    """Zero on L, forbidden elsewhere: plans under this cost live inside L."""
    return make_cost_matrix(
        [[0 if flag else INF for flag in row] for row in L.rows]
    )


@dataclass(frozen=True)
class CoverCertificate:
    rows: FrozenSet[int]
    cols: FrozenSet[int]
    value: object


def max_mass_on(L: CellSet, mu: Marginal, nu: Marginal) -> Tuple[object, Coupling]:
    """Largest mass of a partial coupling supported inside L, with witness."""
    _check_shape(L, mu, nu)
    run = _run_ssp(_indicator_cost(L), mu, nu)
    witness = make_coupling(mu.space, nu.space, run.flows)
    return run.shipped, witness


def cover_value(L: CellSet, mu: Marginal, nu: Marginal) -> Tuple[object, CoverCertificate]:
    """Exact minimum of mu(A) + nu(B) over band covers of L.

    Solved as the [0, 1]-relaxed covering program; a basic optimum of that
    program is integral (the constraint matrix is an incidence matrix of a
    bipartite graph plus box rows), so thresholding at 1/2 recovers sets.
    If a degenerate fractional optimum ever slips through, the residual cut
    of the matching flow provides the integral cover at the same value; the
    certificate is verified against the LP value either way.
    """
    _check_shape(L, mu, nu)
    nx, ny = L.nx, L.ny
    n = nx + ny
    constraints = []
    for i, j in L.cells():
        coeffs = [0] * n
        coeffs[i] = 1
        coeffs[nx + j] = 1
        constraints.append((coeffs, ">=", 1))
    for k in range(n):
        coeffs = [0] * n
        coeffs[k] = 1
        constraints.append((coeffs, "<=", 1))
    objective = list(mu.weights) + list(nu.weights)
    res = solve_lp(n, objective, constraints)
    assert res.status == OPTIMAL  # the all-ones vector is always feasible
    half = modes.div(1, 2)
    rows = frozenset(i for i in range(nx) if modes.geq(res.x[i], half))
    cols = frozenset(j for j in range(ny) if modes.geq(res.x[nx + j], half))
    value = sum((mu.weights[i] for i in rows), 0) + sum(
        (nu.weights[j] for j in cols), 0
    )
    covers = all(i in rows or j in cols for i, j in L.cells())
    if not covers or not modes.eq(value, res.value):
        run = _run_ssp(_indicator_cost(L), mu, nu)
        rows = frozenset(i for i in range(nx) if i not in run.reachable_rows)
        cols = frozenset(run.reachable_cols)
        value = sum((mu.weights[i] for i in rows), 0) + sum(
            (nu.weights[j] for j in cols), 0
        )
        covers = all(i in rows or j in cols for i, j in L.cells())
    if not covers:
        raise PostconditionError("cover certificate does not cover the cell set")
    if not modes.eq(value, res.value):
        raise PostconditionError("integral cover does not match the LP optimum")
    return res.value, CoverCertificate(rows=rows, cols=cols, value=value)


def capacity_value(L: CellSet, lam: Marginal) -> Tuple[object, Tuple]:
    """Least integral of f: X -> [0, 1] with f(x) + f(y) >= 1 on L, for a
    square cell set over one space with one shared weighting.

    Unlike the two-sided cover program this one lives on a single function,
    so genuinely fractional optima (f = 1/2) occur; the optimal vector is
    returned as-is."""
    if L.nx != L.ny:
        raise NotSquareError("capacity needs a square cell set")
    if lam.space.size != L.nx:
        raise NotSquareError("capacity needs one shared marginal on the square")
    n = L.nx
    constraints = []
    for i, j in L.cells():
        coeffs = [0] * n
        coeffs[i] += 1
        coeffs[j] += 1  # the diagonal cell (i, i) contributes 2 f_i
        constraints.append((coeffs, ">=", 1))
    for k in range(n):
        coeffs = [0] * n
        coeffs[k] = 1
        constraints.append((coeffs, "<=", 1))
    res = solve_lp(n, list(lam.weights), constraints)
    assert res.status == OPTIMAL
    return res.value, res.x


def null_for_all_couplings(L: CellSet, mu: Marginal, nu: Marginal) -> bool:
    """True when every full coupling of (mu, nu) gives L mass zero.

    Certified by optimization: the largest mass any full coupling puts on L
    is 1 minus the cheapest full transport under the indicator cost of the
    complement, so L is null for all couplings exactly when that cheapest
    value is the whole unit mass."""
    _check_shape(L, mu, nu)
    _require_probability(mu, nu)
    complement_cost = make_cost_matrix(
        [[0 if flag else 1 for flag in row] for row in L.rows]
    )
    off_mass = primal_value(complement_cost, mu, nu)
    return modes.geq(off_mass, 1)


@dataclass(frozen=True)
class Decomposition:
    """Either weightless bands covering L, or a full coupling charging it."""

    null_rows: Optional[FrozenSet[int]]
    null_cols: Optional[FrozenSet[int]]
    witness: Optional[Coupling]

    @property
    def is_null(self) -> bool:
        return self.witness is None


def kellerer_decompose(L: CellSet, mu: Marginal, nu: Marginal) -> Decomposition:
    """The zero-mass dichotomy for L.

    If no partial coupling can charge L, every L-cell must sit on a
    weightless row or column; the weightless rows meeting L, plus the
    weightless columns meeting L elsewhere, form the null cover.  Otherwise
    some cell of L has positive weights on both sides and the product
    coupling already charges it."""
    _check_shape(L, mu, nu)
    mass, _ = max_mass_on(L, mu, nu)
    if not modes.is_positive(mass):
        null_rows = frozenset(
            i
            for i in range(L.nx)
            if mu.weights[i] == 0 and any(L.rows[i])
        )
        null_cols = frozenset(
            j
            for j in range(L.ny)
            if nu.weights[j] == 0
            and any(L.rows[i][j] for i in range(L.nx) if i not in null_rows)
        )
        for i, j in L.cells():
            if i not in null_rows and j not in null_cols:
                raise PostconditionError(
                    "zero matching mass must force a weightless band cover"
                )
        return Decomposition(null_rows=null_rows, null_cols=null_cols, witness=None)
    if not modes.eq(mu.mass, nu.mass):
        raise MassMismatchError(
            "a charging witness must be a full coupling; marginal masses differ"
        )
    witness = product_coupling(mu, nu, modes.div(1, mu.mass))
    charged = sum((m for (i, j), m in witness.entries.items() if (i, j) in L), 0)
    if not modes.is_positive(charged):
        raise PostconditionError("product coupling failed to charge the cell set")
    return Decomposition(null_rows=None, null_cols=None, witness=witness)
