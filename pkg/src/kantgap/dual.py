"""Dual-side values and certificates.

A feasible pair is (phi over X, psi over Y), both valued in [-oo, oo), with
phi_i + psi_j <= c(i, j) on every cell.  Infinite cells impose no constraint
and -oo makes a constraint vacuous.  Objectives use (-oo) * 0 = 0, so a -oo
potential on a weightless atom costs nothing; that is also why optimal pairs
can always be kept finite here: atoms the marginals charge receive flow
potentials, weightless atoms get 0, lowered just enough to stay feasible.

The dual optimum is read off the flow potentials at full mass.  When full
transport is infeasible through the finite cells, the dual is unbounded; the
residual min cut then yields an improving ray (phi up on reachable rows, psi
down on reachable columns) whose objective slope is exactly the infeasibility
deficit, reported alongside the INF value.

The "relaxed" dual keeps the constraint phi_i + psi_j <= c(i, j) only on
chargeable cells, those carried by some finite-cost full coupling.  The
chargeable set is certified cell by cell with an exact optimization (max
mass through the cell over finite-cost plans), never by inspecting one
plan's support.

On these finite instances the plain, relaxed-dual and primal values always
coincide; a genuinely smaller relaxed dual needs continuum structure and is
out of reach at desk scale by design.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Optional, Sequence, Tuple

from . import modes
from .core import (
    INF,
    NEG_INF,
    CostMatrix,
    Coupling,
    Marginal,
    cost_of,
    is_inf,
    is_neg_inf,
    make_cost_matrix,
    truncate_at,
    truncate_cost,
)
from .errors import (
    InputError,
    NotApplicableError,
    PostconditionError,
    PreconditionError,
)
from .flow import _run_ssp, evaluate_profile, solve_profile
from .primal import _require_probability, primal_value


@dataclass(frozen=True)
class DualPair:
    """Potentials (phi, psi) with the objective sum(phi mu) + sum(psi nu)
    cached under the (-oo) * 0 = 0 convention."""

    phi: Tuple
    psi: Tuple
    objective: object


def make_dual_pair(phi: Sequence, psi: Sequence, mu: Marginal, nu: Marginal) -> DualPair:
    phi = tuple(p if is_neg_inf(p) else modes.coerce(p) for p in phi)
    psi = tuple(p if is_neg_inf(p) else modes.coerce(p) for p in psi)
    if len(phi) != mu.space.size or len(psi) != nu.space.size:
        raise InputError("potential lengths do not match the spaces")
    obj = 0
    for p, w in tuple(zip(phi, mu.weights)) + tuple(zip(psi, nu.weights)):
        if w == 0:
            continue  # (-oo) * 0 = 0
        if is_neg_inf(p):
            return DualPair(phi=phi, psi=psi, objective=NEG_INF)
        obj += p * w
    return DualPair(phi=phi, psi=psi, objective=obj)


@dataclass(frozen=True)
class FeasibilityCheck:
    ok: bool
    violation: Optional[Tuple[int, int]]  # first offending cell, row-major
    excess: Optional[object]  # phi_i + psi_j - c(i, j) there


def verify_feasible(pair: DualPair, c: CostMatrix) -> FeasibilityCheck:
    """Exhaustive feasibility check of phi_i + psi_j <= c(i, j)."""
    for i, p in enumerate(pair.phi):
        if is_neg_inf(p):
            continue
        row = c.rows[i]
        for j, q in enumerate(pair.psi):
            if is_neg_inf(q):
                continue
            v = row[j]
            if v is INF:
                continue
            if not modes.leq(p + q, v):
                return FeasibilityCheck(ok=False, violation=(i, j), excess=p + q - v)
    return FeasibilityCheck(ok=True, violation=None, excess=None)


@dataclass(frozen=True)
class ImprovingRay:
    """Direction (d_phi, d_psi) with d_phi_i + d_psi_j <= 0 on finite cells
    and positive objective slope: a certificate of dual unboundedness."""

    d_phi: Tuple
    d_psi: Tuple
    slope: object


@dataclass(frozen=True)
class DualReport:
    value: object  # sup of the dual objective, possibly INF
    pair: DualPair  # optimal when value is finite, else a feasible base point
    ray: Optional[ImprovingRay]  # present exactly when value is INF


def _finalize_pair(
    phi: list, psi: list, c: CostMatrix, mu: Marginal, nu: Marginal
) -> DualPair:
    """Zero-weight atoms get potential 0 when feasible, lowered otherwise.

    Mirrors modifying potentials on null sets: objectives cannot change, but
    the pair must stay feasible on every cell, not only charged ones.
    """
    for i in range(mu.space.size):
        if mu.weights[i] == 0:
            slack = [
                v - psi[j]
                for j, v in enumerate(c.rows[i])
                if v is not INF and not is_neg_inf(psi[j])
            ]
            phi[i] = min([0] + slack)
    for j in range(nu.space.size):
        if nu.weights[j] == 0:
            slack = [
                c.rows[i][j] - phi[i]
                for i in range(mu.space.size)
                if c.rows[i][j] is not INF and not is_neg_inf(phi[i])
            ]
            psi[j] = min([0] + slack)
    return make_dual_pair(phi, psi, mu, nu)


def dual_value(c: CostMatrix, mu: Marginal, nu: Marginal) -> DualReport:
    """The dual optimum with a certificate.

    Finite case: potentials from the flow at full mass, post-processed so
    feasibility holds on all cells; the objective equals the primal value
    (no gap on finite instances).  Infeasible case: value INF plus an
    improving ray from the residual cut.
    """
    _require_probability(mu, nu)
    run = _run_ssp(c, mu, nu)
    if modes.eq(run.shipped, 1):
        pots = run.final_potentials
        pair = _finalize_pair(list(pots.u), list(pots.v), c, mu, nu)
        return DualReport(value=pair.objective, pair=pair, ray=None)
    # full transport infeasible: dual unbounded along the cut direction
    d_phi = tuple(1 if i in run.reachable_rows else 0 for i in range(c.nx))
    d_psi = tuple(-1 if j in run.reachable_cols else 0 for j in range(c.ny))
    slope = sum(
        (mu.weights[i] for i in run.reachable_rows), 0
    ) - sum((nu.weights[j] for j in run.reachable_cols), 0)
    base = make_dual_pair((0,) * c.nx, (0,) * c.ny, mu, nu)
    return DualReport(
        value=INF, pair=base, ray=ImprovingRay(d_phi=d_phi, d_psi=d_psi, slope=slope)
    )


def j_functional(pair: DualPair, pi: Coupling, c: CostMatrix):
    """Plan-averaged potential sum: sum over charged cells of
    (phi_i + psi_j) * pi_ij, in [-oo, oo).

    Defined for feasible pairs against finite-cost full couplings; the value
    does not depend on which finite-cost coupling is used, which is what
    makes it a sound extension of the dual objective to non-summable pairs.
    """
    if is_inf(cost_of(c, pi)):
        raise PreconditionError("plan must have finite cost")
    check = verify_feasible(pair, c)
    if not check.ok:
        raise PreconditionError(f"pair is infeasible at cell {check.violation}")
    total = 0
    for (i, j), m in pi.entries.items():
        p, q = pair.phi[i], pair.psi[j]
        if is_neg_inf(p) or is_neg_inf(q):
            return NEG_INF
        total += (p + q) * m
    return total


def chargeable_cells(c: CostMatrix, mu: Marginal, nu: Marginal) -> FrozenSet:
    """Cells that some finite-cost full coupling charges.

    Certified per cell: the largest mass a finite-cost plan can put on the
    cell equals 1 minus the cheapest full transport under the 0/1 cost that
    charges every *other* finite cell; the cell is chargeable when that
    maximum is positive.
    """
    _require_probability(mu, nu)
    out = set()
    for i in range(c.nx):
        for j in range(c.ny):
            if c.rows[i][j] is INF:
                continue
            indicator = make_cost_matrix(
                [
                    [
                        INF
                        if c.rows[a][b] is INF
                        else (0 if (a, b) == (i, j) else 1)
                        for b in range(c.ny)
                    ]
                    for a in range(c.nx)
                ]
            )
            off_mass = primal_value(indicator, mu, nu)
            if not is_inf(off_mass) and modes.is_positive(1 - off_mass):
                out.add((i, j))
    return frozenset(out)


@dataclass(frozen=True)
class RelaxedDualReport:
    value: object
    pair: DualPair
    chargeable: FrozenSet


def relaxed_dual_value(c: CostMatrix, mu: Marginal, nu: Marginal) -> RelaxedDualReport:
    """Dual optimum with constraints kept only on chargeable cells.

    By LP duality this equals the cheapest full transport restricted to the
    chargeable support, so it sits between the plain dual value and the
    primal value.  Requires at least one finite-cost full coupling."""
    _require_probability(mu, nu)
    base = solve_profile(c, mu, nu)
    if not modes.geq(base.max_mass, 1):
        raise NotApplicableError(
            "no finite-cost full coupling exists; the relaxed dual is undefined"
        )
    cells = chargeable_cells(c, mu, nu)
    restricted = make_cost_matrix(
        [
            [c.rows[i][j] if (i, j) in cells else INF for j in range(c.ny)]
            for i in range(c.nx)
        ]
    )
    run = _run_ssp(restricted, mu, nu)
    if not modes.eq(run.shipped, 1):
        # every finite-cost plan is supported on chargeable cells, so the
        # restricted instance inherits feasibility
        raise PostconditionError("chargeable support lost feasibility")
    pots = run.final_potentials
    pair = _finalize_pair(list(pots.u), list(pots.v), restricted, mu, nu)
    return RelaxedDualReport(value=pair.objective, pair=pair, chargeable=cells)


@dataclass(frozen=True)
class AttainmentReport:
    attained: bool
    level: Optional[object]  # least grid level reaching the relaxed value
    pair: Optional[DualPair]
    h: Optional[CostMatrix]  # (phi_i + psi_j)_+ , a finite attaining ladder
    certified_bound: Optional[object]  # max cell of h; truncating there attains
    relaxed: object


def attainment_check(
    c: CostMatrix, mu: Marginal, nu: Marginal, m_grid: Sequence
) -> AttainmentReport:
    """Scan an ascending grid of constant truncation levels for the least one
    whose truncated value already equals the relaxed value.

    When the relaxed value is finite, the optimal pair yields the finite
    ladder h = (phi_i + psi_j)_+ with truncated value equal to the relaxed
    value, so truncation at max(h) is a certified sufficient level; both
    facts are asserted here rather than trusted.
    """
    _require_probability(mu, nu)
    grid = [modes.coerce(m) for m in m_grid]
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise InputError("truncation grid must be ascending")
    profile = solve_profile(c, mu, nu)
    feasible = modes.geq(profile.max_mass, 1)
    relaxed = evaluate_profile(profile, 1) if feasible else INF
    if not feasible:
        return AttainmentReport(
            attained=False,
            level=None,
            pair=None,
            h=None,
            certified_bound=None,
            relaxed=INF,
        )
    rep = dual_value(c, mu, nu)
    pair = rep.pair
    h = make_cost_matrix(
        [
            [max(pair.phi[i] + pair.psi[j], 0) for j in range(c.ny)]
            for i in range(c.nx)
        ]
    )
    bound = max(v for _, _, v in h.cells())
    if not modes.eq(primal_value(truncate_cost(c, h), mu, nu), relaxed):
        raise PostconditionError("attainment ladder failed to reach the relaxed value")
    if not modes.eq(primal_value(truncate_at(c, bound), mu, nu), relaxed):
        raise PostconditionError("certified bound failed to reach the relaxed value")
    level = None
    for m in grid:
        if modes.eq(primal_value(truncate_at(c, m), mu, nu), relaxed):
            level = m
            break
    return AttainmentReport(
        attained=level is not None,
        level=level,
        pair=pair,
        h=h,
        certified_bound=bound,
        relaxed=relaxed,
    )
