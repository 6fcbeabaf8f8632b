"""Independent brute-force references used to certify solver outputs.

These share no code with the flow or simplex engines.  ``brute_profile``
exhausts the basic sub-coupling plans (spanning-forest supports) and takes
the lower convex envelope of their (mass, cost) projections, which is the
exact mass-to-cost profile; ``brute_primal`` evaluates that envelope.
``brute_cover`` exhausts band covers.  All exact, auditable, and meant for
tiny instances only.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Tuple

from . import modes
from .core import INF, CostMatrix, Marginal
from .errors import InputError, InstanceTooLargeError

_PRIMAL_LIMIT = 4
_COVER_LIMIT = 20


def _lower_hull(cloud):
    """Minimal breakpoints of the lower convex envelope of (mass, cost)
    points: strictly increasing masses, strictly increasing slopes."""
    best = {}
    for m_, c_ in cloud:
        old = best.get(m_)
        if old is None or c_ < old:
            best[m_] = c_
    pts = sorted(best.items())
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            # pop while the middle point does not make a strict upward turn
            if (ax - ox) * (p[1] - ay) - (ay - oy) * (p[0] - ax) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return tuple(hull)


def _profile_points(c: CostMatrix, mu: Marginal, nu: Marginal):
    """All (mass, cost) pairs of basic sub-coupling plans, hull-pruned.

    A vertex of {plans with row sums <= mu, column sums <= nu} has acyclic
    support with at most one slack node per tree component, so repeatedly
    shipping min(remaining supply, remaining demand) through some finite cell
    reaches every vertex; every search outcome is itself a feasible plan.
    The lower hull of the outcome cloud is therefore the exact mass-to-cost
    profile.  Memoized on the residual marginals, which collapses the
    elimination orders of a common prefix set.
    """
    finite = sorted(
        ((v, i, j) for i, j, v in c.finite_cells()), key=lambda t: (t[0], t[1], t[2])
    )
    memo: Dict[Tuple, Tuple] = {}

    def explore(a: Tuple, b: Tuple):
        key = (a, b)
        cached = memo.get(key)
        if cached is not None:
            return cached
        cloud = [(0, 0)]  # stopping here is itself a basic plan
        for v, i, j in finite:
            ai, bj = a[i], b[j]
            if ai > 0 and bj > 0:
                step = ai if ai <= bj else bj
                na = a[:i] + (ai - step,) + a[i + 1 :]
                nb = b[:j] + (bj - step,) + b[j + 1 :]
                for dm, dc in explore(na, nb):
                    cloud.append((step + dm, step * v + dc))
        result = _lower_hull(cloud)
        memo[key] = result
        return result

    return explore(tuple(mu.weights), tuple(nu.weights))


def brute_profile(c: CostMatrix, mu: Marginal, nu: Marginal):
    """Exact breakpoints of the mass-to-cost profile by vertex enumeration."""
    if c.nx > _PRIMAL_LIMIT or c.ny > _PRIMAL_LIMIT:
        raise InstanceTooLargeError(
            f"brute_profile is exhaustive; {c.nx}x{c.ny} exceeds "
            f"{_PRIMAL_LIMIT}x{_PRIMAL_LIMIT}"
        )
    return _cached_profile(c, mu, nu)


@lru_cache(maxsize=128)
def _cached_profile(c: CostMatrix, mu: Marginal, nu: Marginal):
    return _profile_points(c, mu, nu)


def brute_primal(c: CostMatrix, mu: Marginal, nu: Marginal, m):
    """Exact min cost over partial couplings of mass exactly m: the brute
    profile evaluated at m, INF beyond the largest enumerated mass."""
    m = modes.coerce(m)
    if m < 0:
        raise InputError(f"mass {m} is negative")
    hull = brute_profile(c, mu, nu)
    if not modes.leq(m, hull[-1][0]):
        return INF
    for (m0, c0), (m1, c1) in zip(hull, hull[1:]):
        if m <= m1:
            return c0 + modes.div((c1 - c0) * (m - m0), m1 - m0)
    return hull[-1][1]


def brute_cover(L, mu: Marginal, nu: Marginal):
    """Exact minimum of mu(A) + nu(B) over band covers A x Y u X x B of L.

    Enumerates every subset on the smaller side; the other side is then
    forced to the union of uncovered rows (or columns), which is optimal
    because weights are nonnegative.
    """
    nx, ny = L.nx, L.ny
    if nx + ny > _COVER_LIMIT:
        raise InstanceTooLargeError(
            f"brute_cover is exhaustive; nx + ny = {nx + ny} exceeds {_COVER_LIMIT}"
        )
    if nx != mu.space.size or ny != nu.space.size:
        raise InputError("cell set does not match the marginals")

    if nx <= ny:
        side_weights = mu.weights
        other_weights = nu.weights
        masks = [
            sum(1 << j for j in range(ny) if L.rows[i][j]) for i in range(nx)
        ]
        n_side = nx
    else:
        side_weights = nu.weights
        other_weights = mu.weights
        masks = [
            sum(1 << i for i in range(nx) if L.rows[i][j]) for j in range(ny)
        ]
        n_side = ny

    best = None
    for sub in range(1 << n_side):
        forced = 0
        val = 0
        for k in range(n_side):
            if sub >> k & 1:
                val += side_weights[k]
            else:
                forced |= masks[k]
        t = forced
        while t:
            low = t & -t
            val += other_weights[low.bit_length() - 1]
            t ^= low
        if best is None or val < best:
            best = val
    return best
