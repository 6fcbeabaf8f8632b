"""Primal-side transport values: full, partial, relaxed and truncated.

Everything here is a point evaluation on the convex mass-cost profile, so
one parametric solve answers every partial-mass question for an instance.

A note on the relaxed value: it is defined as the limit of partial values as
the dropped mass goes to zero.  On a finite instance the profile is a
continuous piecewise-linear function, so that limit *is* the full value
whenever full transport is feasible, and infinite otherwise.  The gap
between the relaxed and the plain value is a continuum phenomenon; at desk
scale it only appears through refinement families (see
``refinement_study``), never on a single instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Callable, List, Optional, Sequence, Tuple

from . import modes
from .core import (
    INF,
    CostMatrix,
    Coupling,
    Marginal,
    is_inf,
    scale_marginal,
    truncate_at,
    truncate_cost,
)
from .errors import InputError, MassMismatchError, PreconditionError
from .flow import evaluate_profile, optimal_coupling_at, solve_profile


def _require_probability(mu: Marginal, nu: Marginal) -> None:
    if not mu.is_probability() or not nu.is_probability():
        raise PreconditionError("probability marginals required")


def primal_value(c: CostMatrix, mu: Marginal, nu: Marginal):
    """Least cost of a full coupling; INF when finite cells cannot carry
    the whole unit mass."""
    _require_probability(mu, nu)
    return evaluate_profile(solve_profile(c, mu, nu), 1)


def partial_value(c: CostMatrix, mu: Marginal, nu: Marginal, eps):
    """Least cost of shipping mass 1 - eps (the drop-eps transport value)."""
    _require_probability(mu, nu)
    eps = modes.coerce(eps)
    if not (0 <= eps <= 1):
        raise InputError(f"eps {eps} outside [0, 1]")
    return evaluate_profile(solve_profile(c, mu, nu), 1 - eps)


def relaxed_value(c: CostMatrix, mu: Marginal, nu: Marginal):
    """Limit of the partial values as the dropped mass shrinks to zero.

    Equals the full value on every finite instance (profile continuity);
    kept as its own operation so the relaxed quantity has a first-class
    name in reports and studies.
    """
    _require_probability(mu, nu)
    profile = solve_profile(c, mu, nu)
    if modes.geq(profile.max_mass, 1):
        return evaluate_profile(profile, 1)
    return INF


def phi_value(c: CostMatrix, mu: Marginal, nu: Marginal, f: Sequence, g: Sequence):
    """Least cost of a full coupling between the rescaled marginals f mu and
    g nu.  Requires f, g >= 0 with equal total masses."""
    fmu = scale_marginal(mu, f)
    gnu = scale_marginal(nu, g)
    if not modes.eq(fmu.mass, gnu.mass):
        raise MassMismatchError(
            f"masses differ: |f mu| = {fmu.mass}, |g nu| = {gnu.mass}"
        )
    return evaluate_profile(solve_profile(c, fmu, gnu), fmu.mass)


def truncation_sweep(
    c: CostMatrix, mu: Marginal, nu: Marginal, levels: Sequence[CostMatrix]
) -> List[Tuple[int, object]]:
    """Full-transport values of c /\\ h for a nondecreasing ladder of finite
    truncation levels h."""
    _require_probability(mu, nu)
    prev = None
    for k, h in enumerate(levels):
        for i, j, v in h.cells():
            if is_inf(v):
                raise InputError(f"level {k} is infinite at ({i}, {j})")
            if prev is not None and v < prev.rows[i][j]:
                raise InputError(f"levels decrease at ({i}, {j}) between "
                                 f"{k - 1} and {k}")
        prev = h
    return [
        (k, primal_value(truncate_cost(c, h), mu, nu)) for k, h in enumerate(levels)
    ]


def constant_truncation_sweep(
    c: CostMatrix, mu: Marginal, nu: Marginal, ms: Sequence
) -> List[Tuple[object, object]]:
    """Convenience sweep over constant levels M; returns (M, value) pairs."""
    _require_probability(mu, nu)
    out = []
    prev = None
    for m in ms:
        m = modes.coerce(m)
        if prev is not None and m < prev:
            raise InputError("constant levels must be nondecreasing")
        prev = m
        out.append((m, primal_value(truncate_at(c, m), mu, nu)))
    return out


@dataclass(frozen=True)
class PrimalReport:
    """Summary of the primal side of one instance."""

    value: object  # full-transport value, possibly INF
    partials: Tuple[Tuple[object, object], ...]  # (eps, value), eps ascending
    relaxed: object
    max_mass: object
    witness: Optional[Coupling]  # a minimizing full coupling when one exists


def primal_report(
    c: CostMatrix, mu: Marginal, nu: Marginal, eps_grid: Sequence = ()
) -> PrimalReport:
    _require_probability(mu, nu)
    profile = solve_profile(c, mu, nu)
    feasible = modes.geq(profile.max_mass, 1)
    value = evaluate_profile(profile, 1) if feasible else INF
    partials = []
    for eps in sorted(modes.coerce(e) for e in eps_grid):
        if not (0 <= eps <= 1):
            raise InputError(f"eps {eps} outside [0, 1]")
        partials.append((eps, evaluate_profile(profile, 1 - eps)))
    witness = optimal_coupling_at(c, mu, nu, 1) if feasible else None
    return PrimalReport(
        value=value,
        partials=tuple(partials),
        relaxed=value if feasible else INF,
        max_mass=profile.max_mass,
        witness=witness,
    )


@dataclass(frozen=True)
class StudyRow:
    n: int
    eps: object
    level: object
    value: object  # full-transport value at this n
    partial: object  # value after dropping eps
    truncated: object  # value under c /\ level
    dual: object  # dual value at this n


def resolve_eps(token, n: int):
    """Grid entries may scale with the instance: "1/n", "2/n" and plain
    numbers are accepted."""
    if isinstance(token, str) and token.strip().endswith("/n"):
        head = token.strip()[:-2]
        return modes.div(int(head), n)
    return modes.coerce(token)


def refinement_study(
    family: Callable[[int], Tuple[CostMatrix, Marginal, Marginal]],
    n_list: Sequence[int],
    eps_list: Sequence,
    m_list: Sequence,
) -> List[StudyRow]:
    """Cross-tabulated double-limit table over a refinement family.

    One row per (n, eps, level).  For the staircase family the value and
    dual columns stay at 1 for every n while the partial column at eps = 1/n
    stays at 0: the order of the two limits (n up, eps down) matters, which
    is exactly the mechanism the table is meant to exhibit.
    """
    from .dual import dual_value  # local import keeps module layering simple

    rows: List[StudyRow] = []
    for n in n_list:
        c, mu, nu = family(n)
        profile = solve_profile(c, mu, nu)
        feasible = modes.geq(profile.max_mass, 1)
        p = evaluate_profile(profile, 1) if feasible else INF
        d = dual_value(c, mu, nu).value
        eps_values = [resolve_eps(e, n) for e in eps_list]
        m_values = [modes.coerce(m) for m in m_list]
        truncated = {m: primal_value(truncate_at(c, m), mu, nu) for m in m_values}
        for eps, m in _cartesian(eps_values, m_values):
            if not (0 <= eps <= 1):
                raise InputError(f"eps {eps} outside [0, 1]")
            rows.append(
                StudyRow(
                    n=n,
                    eps=eps,
                    level=m,
                    value=p,
                    partial=evaluate_profile(profile, 1 - eps),
                    truncated=truncated[m],
                    dual=d,
                )
            )
    return rows
