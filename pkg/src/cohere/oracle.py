"""Brute-force cross-checks by exact vertex enumeration.

The constituent system of an assessment carves a polytope out of the unit
simplex.  At desk scale every basic feasible solution can be enumerated by
Gaussian elimination over column subsets, so extension intervals can be read
off vertex ratios with no simplex involved.  The level-descending treatment
of zero-probability conditioning events mirrors the LP path so that the two
are comparable; nothing else is shared with it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .coherence import Assessment, ProbabilityInterval
from .conditionals import ConditionalEvent, TruthValue3, constituents
from .errors import IncoherentAssessmentError, SizeLimitError
from .events import is_impossible

ZERO = Fraction(0)
ONE = Fraction(1)

VERTEX_ENUMERATION_LIMIT = 14


@dataclass(frozen=True)
class Polytope:
    """Equality system ``matrix . x = rhs`` intersected with ``x >= 0``."""

    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0


def sigma_polytope(a: Assessment) -> Polytope:
    """Polytope of the assessment's constituent system (unit mass included)."""
    matrix, rhs, _ = _system_for(a.family, a.probs, extra=None)
    return Polytope(tuple(map(tuple, matrix)), tuple(rhs))


def _system_for(
    family: Sequence[ConditionalEvent],
    probs: Sequence[Fraction],
    extra: ConditionalEvent | None,
):
    """Equality system over the constituents of family (+ optional extra
    conditional that contributes profile columns but no equation)."""
    members = tuple(family) + ((extra,) if extra is not None else ())
    cs = constituents(members)
    n = len(family)
    m = len(cs.inside)
    matrix = []
    for j in range(n):
        row = []
        for c in cs.inside:
            v = c.profile[j]
            row.append(ONE if v == TruthValue3.TRUE else ZERO if v == TruthValue3.FALSE else probs[j])
        matrix.append(row)
    matrix.append([ONE] * m)
    rhs = list(probs) + [ONE]
    return matrix, rhs, cs


def _rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    rows = [list(r) for r in matrix]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[col]
        for j in range(col, ncols):
            prow[j] *= inv
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                for j in range(col, ncols):
                    rows[r][j] -= f * prow[j]
        rank += 1
    return rank


def _solve_unique(
    matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> tuple[Fraction, ...] | None:
    """Unique exact solution of a (possibly overdetermined) system, or None
    when the columns are dependent or the system is inconsistent."""
    ncols = len(matrix[0])
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    rank = 0
    pivots = []
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[col]
        for j in range(col, ncols + 1):
            prow[j] *= inv
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                for j in range(col, ncols + 1):
                    rows[r][j] -= f * prow[j]
        pivots.append(col)
        rank += 1
    for r in range(rank, len(rows)):
        if rows[r][ncols] != 0:
            return None
    return tuple(rows[i][ncols] for i in range(ncols))


def vertices(p: Polytope) -> tuple[tuple[Fraction, ...], ...]:
    """All distinct basic feasible solutions, exactly.

    Every column subset of size rank(matrix) with independent columns and a
    consistent, nonnegative solve yields one vertex; subsets beyond the desk
    bound of 14 variables are refused.
    """
    m = p.dim
    if m > VERTEX_ENUMERATION_LIMIT:
        raise SizeLimitError(
            f"{m} variables exceed the vertex-enumeration bound of "
            f"{VERTEX_ENUMERATION_LIMIT}"
        )
    rank = _rank(p.matrix)
    augmented = [list(row) + [b] for row, b in zip(p.matrix, p.rhs)]
    if _rank(augmented) > rank:
        return ()
    found: dict[tuple[Fraction, ...], None] = {}
    for subset in itertools.combinations(range(m), rank):
        sub = [[row[j] for j in subset] for row in p.matrix]
        solution = _solve_unique(sub, p.rhs)
        if solution is None or any(v < 0 for v in solution):
            continue
        full = [ZERO] * m
        for j, v in zip(subset, solution):
            full[j] = v
        found[tuple(full)] = None
    return tuple(found.keys())


def extension_interval_bruteforce(
    a: Assessment, target: ConditionalEvent
) -> ProbabilityInterval:
    """Extension interval from vertex ratios, descending through
    zero-probability layers the same way the LP path does."""
    lo, hi, vacuous = _levels(a.family, a.probs, target)
    return ProbabilityInterval(lo, hi, vacuous=vacuous)


def _levels(
    family: tuple[ConditionalEvent, ...],
    probs: tuple[Fraction, ...],
    target: ConditionalEvent,
) -> tuple[Fraction, Fraction, bool]:
    if not family:
        ctx = target.context
        if is_impossible(target.consequent & target.antecedent, ctx):
            return ZERO, ZERO, False
        if is_impossible(~target.consequent & target.antecedent, ctx):
            return ONE, ONE, False
        return ZERO, ONE, True

    matrix, rhs, cs = _system_for(family, probs, extra=target)
    verts = vertices(Polytope(tuple(map(tuple, matrix)), tuple(rhs)))
    if not verts:
        raise IncoherentAssessmentError("base system unexpectedly unsolvable")
    n = len(family)
    den = [h for h, c in enumerate(cs.inside) if c.profile[n] != TruthValue3.VOID]
    num = [h for h, c in enumerate(cs.inside) if c.profile[n] == TruthValue3.TRUE]
    supports = [
        [h for h, c in enumerate(cs.inside) if c.profile[j] != TruthValue3.VOID]
        for j in range(n)
    ]

    den_values = [sum(v[h] for h in den) for v in verts]
    ratios = [
        sum(v[h] for h in num) / dv for v, dv in zip(verts, den_values) if dv > 0
    ]

    def descend(vertex_pool):
        next_indices = [
            j
            for j in range(n)
            if all(sum(v[h] for h in supports[j]) == 0 for v in vertex_pool)
        ]
        return _levels(
            tuple(family[j] for j in next_indices),
            tuple(probs[j] for j in next_indices),
            target,
        )

    if not ratios:
        return descend(verts)

    lo, hi = min(ratios), max(ratios)
    zero_den = [v for v, dv in zip(verts, den_values) if dv == 0]
    if not zero_den:
        return lo, hi, False
    deep_lo, deep_hi, _ = descend(zero_den)
    return min(lo, deep_lo), max(hi, deep_hi), False
