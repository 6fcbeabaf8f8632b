"""Dense two-phase simplex with Bland's rule over exact rationals.

This backs the cover and capacity functionals, which need *basic* optimal
solutions: the bipartite cover polytope is integral at its vertices, so a
vertex solution rounds to an integral cover for free.  Instances here are
tiny (tens of rows), so a plain tableau with a maintained reduced-cost row
is the right tool.

Works unchanged with floats (a small pivot tolerance guards degeneracy),
but exact mode is the intended home.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import modes
from .errors import InputError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_PIVOT_TOL = 1e-11


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[Tuple]  # structural variables only
    value: Optional[object]


def _is_zero(x) -> bool:
    if modes.is_exact():
        return x == 0
    return abs(x) <= _PIVOT_TOL


class _Tableau:
    def __init__(self, n_vars: int, constraints):
        rows: List[List] = []
        senses: List[str] = []
        rhs: List = []
        for coeffs, sense, b in constraints:
            if len(coeffs) != n_vars:
                raise InputError("constraint length does not match n_vars")
            row = [modes.coerce(v) for v in coeffs]
            b = modes.coerce(b)
            if b < 0:
                row = [-v for v in row]
                b = -b
                sense = {"<=": ">=", ">=": "<=", "==": "=="}[sense]
            if sense not in ("<=", ">=", "=="):
                raise InputError(f"unknown constraint sense {sense!r}")
            rows.append(row)
            senses.append(sense)
            rhs.append(b)

        m = len(rows)
        # column layout: structural | slack/surplus | artificial
        slack_of: List[Optional[int]] = [None] * m
        art_of: List[Optional[int]] = [None] * m
        col = n_vars
        for r, s in enumerate(senses):
            if s in ("<=", ">="):
                slack_of[r] = col
                col += 1
        for r, s in enumerate(senses):
            if s != "<=":
                art_of[r] = col
                col += 1

        self.n_vars = n_vars
        self.m = m
        self.n_total = col
        self.art_cols = frozenset(c for c in art_of if c is not None)
        self.T: List[List] = [[0] * col for _ in range(m)]
        self.b: List = list(rhs)
        self.basis: List[int] = [0] * m
        for r in range(m):
            Tr = self.T[r]
            for j, v in enumerate(rows[r]):
                Tr[j] = v
            s = senses[r]
            if s == "<=":
                Tr[slack_of[r]] = 1
                self.basis[r] = slack_of[r]
            elif s == ">=":
                Tr[slack_of[r]] = -1
                Tr[art_of[r]] = 1
                self.basis[r] = art_of[r]
            else:
                Tr[art_of[r]] = 1
                self.basis[r] = art_of[r]

    def pivot(self, row: int, col: int) -> None:
        T, b = self.T, self.b
        piv = T[row][col]
        inv = modes.div(1, piv)
        T[row] = [v * inv for v in T[row]]
        b[row] = b[row] * inv
        prow = T[row]
        pb = b[row]
        for r in range(self.m):
            if r == row:
                continue
            factor = T[r][col]
            if _is_zero(factor):
                continue
            T[r] = [a - factor * p for a, p in zip(T[r], prow)]
            b[r] = b[r] - factor * pb
        self.basis[row] = col

    def reduced_costs(self, cost: Sequence) -> List:
        z = list(cost)
        for r in range(self.m):
            cr = cost[self.basis[r]]
            if _is_zero(cr):
                continue
            z = [a - cr * t for a, t in zip(z, self.T[r])]
        return z

    def run(self, cost: List, allowed: List[bool]) -> str:
        """Minimize cost over the current basis; Bland's rule throughout."""
        z = self.reduced_costs(cost)
        neg = 0 if modes.is_exact() else -_PIVOT_TOL
        while True:
            entering = -1
            for j in range(self.n_total):
                if allowed[j] and z[j] < neg:
                    entering = j
                    break  # smallest improving index
            if entering < 0:
                return OPTIMAL
            leave = -1
            best = None
            for r in range(self.m):
                a = self.T[r][entering]
                if a > (0 if modes.is_exact() else _PIVOT_TOL):
                    ratio = modes.div(self.b[r], a)
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[r] < self.basis[leave])
                    ):
                        best = ratio
                        leave = r
            if leave < 0:
                return UNBOUNDED
            self.pivot(leave, entering)
            factor = z[entering]
            if not _is_zero(factor):
                z = [a - factor * p for a, p in zip(z, self.T[leave])]


def solve_lp(
    n_vars: int,
    objective: Sequence,
    constraints: Sequence[Tuple[Sequence, str, object]],
    maximize: bool = False,
) -> LPResult:
    """Solve min (or max) c.x subject to rows (coeffs, sense, rhs), x >= 0.

    ``sense`` is one of ``"<="``, ``">="``, ``"=="``.  Free variables are not
    supported; split them at the call site if ever needed.
    """
    cost = [modes.coerce(v) for v in objective]
    if maximize:
        cost = [-v for v in cost]
    if len(cost) != n_vars:
        raise InputError("objective length does not match n_vars")

    tab = _Tableau(n_vars, constraints)

    if tab.art_cols:
        phase1 = [0] * tab.n_total
        for c in tab.art_cols:
            phase1[c] = 1
        status = tab.run(phase1, [True] * tab.n_total)
        assert status == OPTIMAL  # phase 1 is bounded below by 0
        infeas = sum(
            (tab.b[r] for r in range(tab.m) if tab.basis[r] in tab.art_cols), 0
        )
        if not _is_zero(infeas):
            return LPResult(status=INFEASIBLE, x=None, value=None)
        # drive leftover zero-level artificials out of the basis; a row with
        # no eligible pivot is redundant and stays pinned at zero
        for r in range(tab.m):
            if tab.basis[r] in tab.art_cols:
                for j in range(tab.n_total):
                    if j not in tab.art_cols and not _is_zero(tab.T[r][j]):
                        tab.pivot(r, j)
                        break

    phase2 = list(cost) + [0] * (tab.n_total - n_vars)
    allowed = [True] * tab.n_total
    for c in tab.art_cols:
        allowed[c] = False
    status = tab.run(phase2, allowed)
    if status != OPTIMAL:
        return LPResult(status=status, x=None, value=None)

    x = [0] * n_vars
    for r in range(tab.m):
        if tab.basis[r] < n_vars:
            x[tab.basis[r]] = tab.b[r]
    value = sum((c * v for c, v in zip(cost, x)), 0)
    if maximize:
        value = -value
    return LPResult(status=OPTIMAL, x=tuple(x), value=value)
