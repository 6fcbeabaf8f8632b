"""Exact parametric min-cost flow over the finite-cost cells of a grid.

The engine runs successive shortest augmenting paths with node potentials on
the bipartite network

    source --(cap mu_i)--> X_i --(finite cells, uncapped)--> Y_j --(cap nu_j)--> sink

All arc costs are nonnegative, so zero potentials are valid initially and
Dijkstra stays correct throughout.  Successive shortest-path costs are
nondecreasing, which makes the shipped-mass -> cost profile convex piecewise
linear; the profile is the central output, since every partial, relaxed and
truncated transport value is a point evaluation on it.

Why mass is pinned exactly: the partial problem asks for plans of mass at
least a target, but with costs >= 0 the profile is nondecreasing in mass, so
the optimum over "mass >= t" is attained at mass exactly t.  The solver
therefore parametrizes by exact shipped mass.

Infinite cells are never added to the network.  Zero-weight atoms keep their
nodes (with zero-capacity source/sink arcs) so indices line up with inputs.

Certificates: cell arcs are uncapped, hence always residual, so the running
potentials satisfy cost(i,j) - u_i - v_j >= 0 on *every* finite cell at every
stage, and cells carrying flow satisfy equality (their reverse arcs are
residual too).  The potentials recorded at each breakpoint are thus exact
dual certificates for the profile value there.

Determinism: adjacency lists are built in a fixed order (sources, sinks,
then cells row-major) and Dijkstra breaks distance ties by node index with
strict-improvement relaxation, so profiles, couplings and potentials are
reproducible byte for byte.

Not intended for instances much past ~10^4 finite cells in exact mode.
"""

from __future__ import annotations

import heapq
from bisect import bisect_right
from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import modes
from .core import (
    INF,
    CostMatrix,
    Coupling,
    Marginal,
    make_coupling,
)
from .errors import (
    DimensionMismatchError,
    InfeasibleMassError,
    InputError,
)


@dataclass(frozen=True)
class PotentialPair:
    """Node potentials (u over X, v over Y) with c(i,j) - u_i - v_j >= 0
    on all finite cells of the instance they certify."""

    u: Tuple
    v: Tuple


@dataclass(frozen=True)
class TransportProfile:
    """Convex piecewise-linear map: shipped mass -> minimum cost.

    ``breakpoints`` starts at (0, 0) and ends at ``max_mass``, the largest
    mass the finite-cost cells can carry.  ``potentials[k]`` certifies
    ``breakpoints[k]``.
    """

    breakpoints: Tuple[Tuple[object, object], ...]
    potentials: Tuple[PotentialPair, ...]
    max_mass: object

    def __post_init__(self):
        bps = self.breakpoints
        if not bps or bps[0] != (0, 0):
            raise InputError("profile must start at (0, 0)")
        if len(bps) != len(self.potentials):
            raise DimensionMismatchError("one potential pair per breakpoint")
        prev_slope = None
        for (m0, c0), (m1, c1) in zip(bps, bps[1:]):
            if not m1 > m0:
                raise InputError("breakpoint masses must strictly increase")
            if not modes.geq(c1, c0):
                raise InputError("profile costs must be nondecreasing")
            slope = modes.div(c1 - c0, m1 - m0)
            if prev_slope is not None and not modes.geq(slope, prev_slope):
                raise InputError("profile slopes must be nondecreasing")
            prev_slope = slope
        if not modes.eq(bps[-1][0], self.max_mass):
            raise InputError("last breakpoint must sit at max_mass")


def evaluate_profile(profile: TransportProfile, m):
    """Value of the profile at mass m: linear interpolation on [0, max_mass],
    ``INF`` beyond, error for negative m."""
    m = modes.coerce(m)
    if m < 0:
        raise InputError(f"mass {m} is negative")
    if not modes.leq(m, profile.max_mass):
        return INF
    bps = profile.breakpoints
    masses = [bm for bm, _ in bps]
    k = bisect_right(masses, m) - 1
    if k == len(bps) - 1:
        return bps[-1][1]
    (m0, c0), (m1, c1) = bps[k], bps[k + 1]
    return c0 + modes.div((c1 - c0) * (m - m0), m1 - m0)


class _Arc:
    __slots__ = ("head", "cap", "flow", "cost", "rev")

    def __init__(self, head: int, cap, cost):
        self.head = head
        self.cap = cap  # None = uncapped
        self.flow = 0
        self.cost = cost
        self.rev: "_Arc" = None  # type: ignore[assignment]

    def residual(self):
        return None if self.cap is None else self.cap - self.flow


@dataclass
class SolverRun:
    """Full record of one parametric solve."""

    nx: int
    ny: int
    shipped: object
    cost: object
    segments: List[Tuple[object, object, PotentialPair]]  # (slope, mass, pots)
    final_potentials: PotentialPair
    flows: dict  # (i, j) -> positive mass
    reachable_rows: frozenset
    reachable_cols: frozenset


def _run_ssp(c: CostMatrix, mu: Marginal, nu: Marginal, target=None) -> SolverRun:
    nx, ny = c.nx, c.ny
    if nx != mu.space.size or ny != nu.space.size:
        raise DimensionMismatchError("cost matrix does not match the marginals")

    n_nodes = nx + ny + 2
    source, sink = 0, n_nodes - 1

    adj: List[List[_Arc]] = [[] for _ in range(n_nodes)]

    def add_arc(u: int, v: int, cap, cost):
        fwd = _Arc(v, cap, cost)
        bwd = _Arc(u, 0, -cost)
        fwd.rev, bwd.rev = bwd, fwd
        adj[u].append(fwd)
        adj[v].append(bwd)
        return fwd

    for i in range(nx):
        add_arc(source, 1 + i, mu.weights[i], 0)
    for j in range(ny):
        add_arc(1 + nx + j, sink, nu.weights[j], 0)
    cell_arcs = {}
    for i in range(nx):
        row = c.rows[i]
        for j in range(ny):
            if row[j] is not INF:
                cell_arcs[(i, j)] = add_arc(1 + i, 1 + nx + j, None, row[j])

    potentials = [0] * n_nodes
    tol = modes.tolerance()

    def snapshot() -> PotentialPair:
        return PotentialPair(
            u=tuple(-potentials[1 + i] for i in range(nx)),
            v=tuple(potentials[1 + nx + j] for j in range(ny)),
        )

    def dijkstra():
        dist = [None] * n_nodes
        parent: List[Optional[Tuple[int, _Arc]]] = [None] * n_nodes
        dist[source] = 0
        heap = [(0, source)]
        settled = [False] * n_nodes
        while heap:
            d, u = heapq.heappop(heap)
            if settled[u]:
                continue
            settled[u] = True
            if u == sink:
                break
            pu = potentials[u]
            for arc in adj[u]:
                res = arc.residual()
                if res is not None and not res > tol:
                    continue
                v = arc.head
                if settled[v]:
                    continue
                nd = d + (arc.cost + pu - potentials[v])
                if dist[v] is None or nd < dist[v]:
                    dist[v] = nd
                    parent[v] = (u, arc)
                    heapq.heappush(heap, (nd, v))
        return dist, parent, settled

    shipped = 0
    total_cost = 0
    raw_segments: List[Tuple[object, object, PotentialPair]] = []

    while target is None or modes.is_positive(target - shipped):
        dist, parent, settled = dijkstra()
        if dist[sink] is None or not settled[sink]:
            break
        d_sink = dist[sink]
        for v in range(n_nodes):
            if settled[v] and dist[v] is not None and dist[v] < d_sink:
                potentials[v] += dist[v]
            else:
                potentials[v] += d_sink

        # trace the path and its true (unreduced) unit cost
        path: List[_Arc] = []
        sigma = 0
        v = sink
        while v != source:
            u, arc = parent[v]
            path.append(arc)
            sigma += arc.cost
            v = u

        delta = None
        for arc in path:
            res = arc.residual()
            if res is not None and (delta is None or res < delta):
                delta = res
        if target is not None:
            remaining = target - shipped
            if delta is None or remaining < delta:
                delta = remaining
        if delta is None or not delta > 0:
            break
        for arc in path:
            arc.flow += delta
            arc.rev.flow -= delta

        shipped += delta
        total_cost += sigma * delta
        raw_segments.append((sigma, delta, snapshot()))

    # merge consecutive segments with equal slope, keeping the last snapshot
    segments: List[Tuple[object, object, PotentialPair]] = []
    for sigma, delta, pots in raw_segments:
        if segments and segments[-1][0] == sigma:
            prev_sigma, prev_delta, _ = segments[-1]
            segments[-1] = (prev_sigma, prev_delta + delta, pots)
        else:
            segments.append((sigma, delta, pots))

    # residual reachability from the source (min-cut data when saturated)
    seen = [False] * n_nodes
    seen[source] = True
    stack = [source]
    while stack:
        u = stack.pop()
        for arc in adj[u]:
            res = arc.residual()
            if res is not None and not res > tol:
                continue
            if not seen[arc.head]:
                seen[arc.head] = True
                stack.append(arc.head)

    flows = {
        ij: arc.flow for ij, arc in cell_arcs.items() if modes.is_positive(arc.flow)
    }
    return SolverRun(
        nx=nx,
        ny=ny,
        shipped=shipped,
        cost=total_cost,
        segments=segments,
        final_potentials=snapshot(),
        flows=flows,
        reachable_rows=frozenset(i for i in range(nx) if seen[1 + i]),
        reachable_cols=frozenset(j for j in range(ny) if seen[1 + nx + j]),
    )


def solve_profile(c: CostMatrix, mu: Marginal, nu: Marginal) -> TransportProfile:
    """The full cost-vs-mass profile with a dual certificate per breakpoint."""
    run = _run_ssp(c, mu, nu, target=None)
    zero_pots = PotentialPair(u=(0,) * c.nx, v=(0,) * c.ny)
    breakpoints = [(0, 0)]
    pots = [zero_pots]
    mass = 0
    cost = 0
    for sigma, delta, snap in run.segments:
        mass += delta
        cost += sigma * delta
        breakpoints.append((mass, cost))
        pots.append(snap)
    return TransportProfile(
        breakpoints=tuple(breakpoints),
        potentials=tuple(pots),
        max_mass=mass,
    )


def optimal_coupling_at(c: CostMatrix, mu: Marginal, nu: Marginal, m) -> Coupling:
    """A minimizing partial coupling of mass exactly m (deterministic)."""
    m = modes.coerce(m)
    if m < 0:
        raise InputError(f"mass {m} is negative")
    run = _run_ssp(c, mu, nu, target=m)
    if not modes.eq(run.shipped, m):
        raise InfeasibleMassError(
            f"requested mass {m} exceeds the largest shippable mass {run.shipped}"
        )
    return make_coupling(mu.space, nu.space, run.flows)


def max_shippable_mass(c: CostMatrix, mu: Marginal, nu: Marginal):
    """Largest mass a partial coupling on finite cells can carry."""
    return _run_ssp(c, mu, nu).shipped
