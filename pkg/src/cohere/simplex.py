"""Exact two-phase simplex over rationals for equality-form programs.

Solves ``optimize c.x subject to A x = b, x >= 0`` with a dense tableau of
:class:`fractions.Fraction` entries and Bland's anti-cycling rule, so every
run terminates and every reported number is exact.  When the constraints are
infeasible the solver returns a Farkas vector ``y`` with ``y.A <= 0``
componentwise and ``y.b > 0``, which downstream code turns into a
positive-gain betting certificate.

Problem sizes here are tiny (tens of columns), so no factorization or
sparsity is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None
    farkas: tuple[Fraction, ...] | None = None


def solve_eq_lp(
    rows: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
    objective: Sequence[Fraction] | None = None,
    maximize: bool = False,
) -> LPResult:
    """Solve ``{x >= 0 : rows . x = rhs}``, optionally optimizing ``objective``.

    With ``objective=None`` only feasibility is decided; the returned ``x`` is
    then some basic feasible point.  Infeasible systems come back with an
    exact Farkas certificate for the original (unflipped) rows.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    if any(len(r) != n for r in rows) or len(rhs) != m:
        raise ValueError("inconsistent system dimensions")
    if m == 0:
        raise ValueError("at least one constraint row is required")

    # Normalize signs so every right-hand side is nonnegative.
    flip = [ONE if rhs[i] >= 0 else -ONE for i in range(m)]
    tab = [[flip[i] * Fraction(rows[i][j]) for j in range(n)] for i in range(m)]
    b = [flip[i] * Fraction(rhs[i]) for i in range(m)]

    # Artificial columns n .. n+m-1 form the starting basis.
    for i in range(m):
        tab[i].extend(ONE if k == i else ZERO for k in range(m))
        tab[i].append(b[i])
    basis = list(range(n, n + m))
    ncols = n + m

    # Phase-1 reduced costs: cost 1 on artificials, priced out of the basis.
    cost = [ZERO] * ncols + [ZERO]
    for j in range(n):
        cost[j] = -sum(tab[i][j] for i in range(m))
    cost[ncols] = -sum(tab[i][ncols] for i in range(m))

    _iterate(tab, cost, basis, ncols, allowed=range(n))

    phase1_value = -cost[ncols]
    if phase1_value > 0:
        # y_i = 1 - reduced cost of artificial i, mapped back through flips.
        y = tuple(flip[i] * (ONE - cost[n + i]) for i in range(m))
        _check_farkas(rows, rhs, y)
        return LPResult(status=INFEASIBLE, farkas=y)

    # Pivot leftover artificials out of the basis; drop rows that turn out
    # to be redundant equations.
    keep: list[int] = []
    for r in range(m):
        if basis[r] < n:
            keep.append(r)
            continue
        col = next((j for j in range(n) if tab[r][j] != 0), None)
        if col is None:
            continue
        _pivot(tab, cost, basis, r, col, ncols)
        keep.append(r)
    tab = [tab[r] for r in keep]
    basis = [basis[r] for r in keep]
    tab = [row[:n] + [row[ncols]] for row in tab]

    if objective is None:
        return LPResult(status=OPTIMAL, x=_extract(tab, basis, n))

    if len(objective) != n:
        raise ValueError("objective length does not match the variable count")
    sign = -ONE if maximize else ONE
    cost = [sign * Fraction(c) for c in objective] + [ZERO]
    for r, bv in enumerate(basis):
        if cost[bv] != 0:
            coeff = cost[bv]
            for j in range(n + 1):
                cost[j] -= coeff * tab[r][j]

    status = _iterate(tab, cost, basis, n, allowed=range(n))
    if status == UNBOUNDED:
        return LPResult(status=UNBOUNDED)
    value = sign * -cost[n]
    return LPResult(status=OPTIMAL, x=_extract(tab, basis, n), objective=value)


def _iterate(tab, cost, basis, rhs_col, allowed) -> str:
    """Run Bland-rule pivots until optimality or unboundedness."""
    while True:
        entering = next((j for j in allowed if cost[j] < 0), None)
        if entering is None:
            return OPTIMAL
        best_ratio = None
        leaving = None
        for r in range(len(tab)):
            coeff = tab[r][entering]
            if coeff > 0:
                ratio = tab[r][rhs_col] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[r] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = r
        if leaving is None:
            return UNBOUNDED
        _pivot(tab, cost, basis, leaving, entering, rhs_col)


def _pivot(tab, cost, basis, row, col, rhs_col) -> None:
    pivot = tab[row][col]
    if pivot == 0:
        raise ValueError("pivot on a zero coefficient")
    prow = tab[row]
    if pivot != 1:
        for j in range(rhs_col + 1):
            prow[j] /= pivot
    for r, other in enumerate(tab):
        if r == row or other[col] == 0:
            continue
        coeff = other[col]
        for j in range(rhs_col + 1):
            other[j] -= coeff * prow[j]
    if cost[col] != 0:
        coeff = cost[col]
        for j in range(rhs_col + 1):
            cost[j] -= coeff * prow[j]
    basis[row] = col


def _extract(tab, basis, n) -> tuple[Fraction, ...]:
    x = [ZERO] * n
    for r, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab[r][-1]
    return tuple(x)


def _check_farkas(rows, rhs, y) -> None:
    m = len(rows)
    n = len(rows[0])
    for j in range(n):
        if sum(y[i] * rows[i][j] for i in range(m)) > 0:
            raise AssertionError("Farkas certificate violates y.A <= 0")
    if sum(y[i] * rhs[i] for i in range(m)) <= 0:
        raise AssertionError("Farkas certificate violates y.b > 0")
