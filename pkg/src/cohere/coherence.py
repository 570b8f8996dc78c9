"""Coherence checking and coherent-extension intervals, exactly.

A probability assessment on a family of conditional events is coherent when
it admits no finite combination of conditional bets with uniformly positive
gain.  Geometrically this says the probability vector lies in the convex hull
of the constituent points, refined recursively on the subfamily whose
conditioning events all have zero upper probability over the solution set.
This module builds the constituent system, decides solvability with the
exact simplex, extracts positive-gain stake certificates from Farkas vectors
when the system is infeasible, and computes the interval of coherent
extensions to a further conditional event with a Charnes-Cooper style
homogenization that descends through zero-probability layers.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .conditionals import (
    ConditionalEvent,
    ConstituentSet,
    TruthValue3,
    constituents,
)
from .errors import IncoherentAssessmentError, ProbabilityRangeError
from .events import Context, is_impossible
from .simplex import INFEASIBLE, OPTIMAL, solve_eq_lp

ZERO = Fraction(0)
ONE = Fraction(1)

SHRINK_DENOMINATOR_BOUND = 2**32
_ANCHOR_PROBE_DEPTH = 8


@dataclass(frozen=True)
class Assessment:
    """A finite family of conditional events with exact probabilities."""

    family: tuple[ConditionalEvent, ...]
    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.family:
            raise ValueError("an assessment needs at least one conditional event")
        if len(self.family) != len(self.probs):
            raise ValueError("family and probability vector differ in length")
        ctx = self.family[0].context
        for ce in self.family[1:]:
            if ce.context != ctx:
                raise ValueError("conditional events must share one context")
        for p in self.probs:
            if not 0 <= p <= 1:
                raise ProbabilityRangeError(f"probability {p} outside [0, 1]")

    @property
    def context(self) -> Context:
        return self.family[0].context

    def restrict(self, indices: Sequence[int]) -> "Assessment":
        return Assessment(
            tuple(self.family[i] for i in indices),
            tuple(self.probs[i] for i in indices),
        )

    def extend(self, ce: ConditionalEvent, p: Fraction) -> "Assessment":
        return Assessment(self.family + (ce,), self.probs + (Fraction(p),))


@dataclass(frozen=True)
class SigmaSystem:
    """Constituent system of an assessment.

    ``rows[h][j]`` is 1, 0 or ``p_j`` according to whether constituent ``h``
    makes conditional ``j`` true, false or void; a solution is a nonnegative
    unit-mass vector over the constituents reproducing every ``p_j``.
    """

    constituents: ConstituentSet
    rows: tuple[tuple[Fraction, ...], ...]
    probs: tuple[Fraction, ...]

    def equalities(self) -> tuple[list[list[Fraction]], list[Fraction]]:
        """Equality matrix and right-hand side (probabilities plus unit mass)."""
        n = len(self.probs)
        m = len(self.rows)
        matrix = [[self.rows[h][j] for h in range(m)] for j in range(n)]
        matrix.append([ONE] * m)
        rhs = list(self.probs) + [ONE]
        return matrix, rhs

    def antecedent_support(self, j: int) -> tuple[int, ...]:
        """Constituent indices where conditional ``j``'s antecedent holds."""
        return tuple(
            h
            for h, c in enumerate(self.constituents.inside)
            if c.profile[j] != TruthValue3.VOID
        )

    def gains(self, stakes: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Betting gain on each constituent for the given stake vector."""
        return tuple(
            sum(s * (q - p) for s, q, p in zip(stakes, row, self.probs))
            for row in self.rows
        )


def build_sigma(a: Assessment) -> SigmaSystem:
    """Build the constituent system of an assessment.

    Row order follows the deterministic constituent order, so repeated builds
    yield identical matrices.
    """
    cs = constituents(a.family)
    rows = []
    for c in cs.inside:
        row = []
        for j, value in enumerate(c.profile):
            if value == TruthValue3.TRUE:
                row.append(ONE)
            elif value == TruthValue3.FALSE:
                row.append(ZERO)
            else:
                row.append(a.probs[j])
        rows.append(tuple(row))
    return SigmaSystem(cs, tuple(rows), tuple(a.probs))


@dataclass(frozen=True)
class SigmaFeasibility:
    """Outcome of solving a constituent system: exactly one of a solution
    (mass vector) or a positive-gain stake certificate."""

    witness: tuple[Fraction, ...] | None = None
    certificate: tuple[Fraction, ...] | None = None


def sigma_feasible(system: SigmaSystem) -> SigmaFeasibility:
    """Solve the system, or refute it with stakes whose gain is positive on
    every constituent."""
    matrix, rhs = system.equalities()
    result = solve_eq_lp(matrix, rhs)
    if result.status == OPTIMAL:
        return SigmaFeasibility(witness=result.x)
    assert result.status == INFEASIBLE and result.farkas is not None
    n = len(system.probs)
    stakes = tuple(-result.farkas[j] for j in range(n))
    gains = system.gains(stakes)
    if any(g <= 0 for g in gains):
        raise AssertionError("certificate extraction produced a non-positive gain")
    return SigmaFeasibility(certificate=stakes)


@dataclass(frozen=True)
class SolutionFunctionals:
    """Upper probabilities of the conditioning events over the solution set.

    ``maxima[j]`` is the maximum total mass on constituents where antecedent
    ``j`` holds; ``zero_upper`` collects the indices where that maximum is
    zero (the next recursion layer).
    """

    supports: tuple[tuple[int, ...], ...]
    maxima: tuple[Fraction, ...]
    zero_upper: tuple[int, ...]


def solution_functionals(system: SigmaSystem) -> SolutionFunctionals:
    matrix, rhs = system.equalities()
    m = len(system.rows)
    supports = []
    maxima = []
    for j in range(len(system.probs)):
        support = system.antecedent_support(j)
        objective = [ONE if h in set(support) else ZERO for h in range(m)]
        result = solve_eq_lp(matrix, rhs, objective, maximize=True)
        if result.status != OPTIMAL:
            raise AssertionError("functional maximization on an unsolvable system")
        supports.append(support)
        maxima.append(result.objective)
    zero_upper = tuple(j for j, mj in enumerate(maxima) if mj == 0)
    return SolutionFunctionals(tuple(supports), tuple(maxima), zero_upper)


@dataclass(frozen=True)
class LevelRecord:
    """One recursion level: which original indices were examined, the
    solution found (if any), and the zero-upper-probability subset."""

    indices: tuple[int, ...]
    i0: tuple[int, ...]
    witness: tuple[Fraction, ...] | None


@dataclass(frozen=True)
class CoherenceVerdict:
    coherent: bool
    witness: tuple[Fraction, ...] | None
    certificate: tuple[Fraction, ...] | None
    trace: tuple[LevelRecord, ...]

    @property
    def deciding_indices(self) -> tuple[int, ...]:
        return self.trace[-1].indices


def check_coherence(a: Assessment) -> CoherenceVerdict:
    """Decide coherence by descending through zero-probability layers.

    Solve the constituent system; on failure the verdict carries the stake
    certificate for the refuted sub-assessment.  On success, recurse on the
    subfamily whose conditioning events have zero upper probability over the
    solution set; the assessment is coherent when that subfamily is empty.
    """
    trace: list[LevelRecord] = []
    indices = tuple(range(len(a.family)))
    while True:
        current = a.restrict(indices)
        system = build_sigma(current)
        feasibility = sigma_feasible(system)
        if feasibility.certificate is not None:
            trace.append(LevelRecord(indices, (), None))
            return CoherenceVerdict(
                coherent=False,
                witness=None,
                certificate=feasibility.certificate,
                trace=tuple(trace),
            )
        functionals = solution_functionals(system)
        i0 = tuple(indices[j] for j in functionals.zero_upper)
        trace.append(LevelRecord(indices, i0, feasibility.witness))
        if not i0:
            return CoherenceVerdict(
                coherent=True,
                witness=feasibility.witness,
                certificate=None,
                trace=tuple(trace),
            )
        if len(i0) >= len(indices):
            raise AssertionError("zero-probability layer failed to shrink")
        indices = i0


# ---------------------------------------------------------------------------
# Coherent-extension intervals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProbabilityInterval:
    """Closed interval of coherent extension values.

    ``vacuous`` marks the convention case where the target's conditioning
    event is unreachable and nothing else constrains the value; ``adjusted``
    marks the defensive case where an endpoint failed re-validation and the
    interval was shrunk by bisection.
    """

    lo: Fraction
    hi: Fraction
    vacuous: bool = False
    adjusted: bool = False

    def __post_init__(self) -> None:
        if not (0 <= self.lo <= self.hi <= 1):
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    def __contains__(self, z: Fraction) -> bool:
        return self.lo <= z <= self.hi

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _standalone_interval(target: ConditionalEvent) -> tuple[Fraction, Fraction, bool]:
    """Coherent values for a single conditional with no companions left."""
    ctx = target.context
    if is_impossible(target.consequent & target.antecedent, ctx):
        return ZERO, ZERO, False
    if is_impossible(~target.consequent & target.antecedent, ctx):
        return ONE, ONE, False
    return ZERO, ONE, True


def _mass_lp(
    matrix: list[list[Fraction]],
    rhs: list[Fraction],
    m: int,
    support: Sequence[int],
    maximize: bool,
    extra_zero: Sequence[int] | None = None,
) -> Fraction:
    """Optimize total mass on ``support``, optionally pinning another support
    set to zero mass via an extra equality row."""
    objective = [ZERO] * m
    for h in support:
        objective[h] = ONE
    if extra_zero is not None:
        pin = [ZERO] * m
        for h in extra_zero:
            pin[h] = ONE
        matrix = matrix + [pin]
        rhs = rhs + [ZERO]
    result = solve_eq_lp(matrix, rhs, objective, maximize=maximize)
    if result.status != OPTIMAL:
        raise IncoherentAssessmentError("base system unexpectedly unsolvable")
    return result.objective


def _fractional_bounds(
    matrix: list[list[Fraction]],
    rhs: list[Fraction],
    m: int,
    num: Sequence[int],
    den: Sequence[int],
) -> tuple[Fraction, Fraction]:
    """Extremes of mass(num)/mass(den) over the system's solutions, taken on
    the part where the denominator is positive.

    Homogenization: scale solutions so the denominator is one, carrying the
    scale as an extra variable; each original equality becomes homogeneous in
    the scaled variables.
    """
    hom_matrix = []
    hom_rhs = []
    for row, b in zip(matrix, rhs):
        hom_matrix.append(list(row) + [-b])
        hom_rhs.append(ZERO)
    den_row = [ZERO] * (m + 1)
    for h in den:
        den_row[h] = ONE
    hom_matrix.append(den_row)
    hom_rhs.append(ONE)
    objective = [ZERO] * (m + 1)
    for h in num:
        objective[h] = ONE
    bounds = []
    for maximize in (False, True):
        result = solve_eq_lp(hom_matrix, hom_rhs, objective, maximize=maximize)
        if result.status != OPTIMAL:
            raise AssertionError("fractional program failed despite a positive denominator")
        bounds.append(result.objective)
    return bounds[0], bounds[1]


def _interval_levels(
    family: tuple[ConditionalEvent, ...],
    probs: tuple[Fraction, ...],
    target: ConditionalEvent,
) -> tuple[Fraction, Fraction, bool]:
    """Interval of values solving the layered constituent conditions.

    At each level the target contributes no equation; its value is the ratio
    of target-true mass to antecedent mass.  When the antecedent's upper
    probability vanishes, or the ratio constraint can be escaped through
    zero-denominator solutions, descend to the subfamily that still has zero
    upper probability there and merge the deeper interval.
    """
    if not family:
        return _standalone_interval(target)

    enlarged = family + (target,)
    cs = constituents(enlarged)
    n = len(family)
    m = len(cs.inside)
    matrix = [
        [_q_entry(cs.inside[h].profile[j], probs[j]) for h in range(m)]
        for j in range(n)
    ]
    matrix.append([ONE] * m)
    rhs = list(probs) + [ONE]
    den = [h for h, c in enumerate(cs.inside) if c.profile[n] != TruthValue3.VOID]
    num = [h for h, c in enumerate(cs.inside) if c.profile[n] == TruthValue3.TRUE]
    supports = [
        tuple(h for h, c in enumerate(cs.inside) if c.profile[j] != TruthValue3.VOID)
        for j in range(n)
    ]

    den_max = _mass_lp(matrix, rhs, m, den, maximize=True)
    if den_max == 0:
        next_indices = [
            j
            for j in range(n)
            if _mass_lp(matrix, rhs, m, supports[j], maximize=True) == 0
        ]
        sub_family = tuple(family[j] for j in next_indices)
        sub_probs = tuple(probs[j] for j in next_indices)
        return _interval_levels(sub_family, sub_probs, target)

    lo, hi = _fractional_bounds(matrix, rhs, m, num, den)

    den_min = _mass_lp(matrix, rhs, m, den, maximize=False)
    if den_min > 0:
        return lo, hi, False

    # Zero-denominator solutions exist: values outside [lo, hi] stay coherent
    # exactly when the subfamily with zero upper probability on that part
    # admits them, so merge the deeper interval.
    next_indices = [
        j
        for j in range(n)
        if _mass_lp(matrix, rhs, m, supports[j], maximize=True, extra_zero=den) == 0
    ]
    deep_lo, deep_hi, _ = _interval_levels(
        tuple(family[j] for j in next_indices),
        tuple(probs[j] for j in next_indices),
        target,
    )
    return min(lo, deep_lo), max(hi, deep_hi), False


def _q_entry(value: TruthValue3, p: Fraction) -> Fraction:
    if value == TruthValue3.TRUE:
        return ONE
    if value == TruthValue3.FALSE:
        return ZERO
    return p


def extension_interval(
    a: Assessment, target: ConditionalEvent, validate_endpoints: bool = True
) -> ProbabilityInterval:
    """Interval of values z such that appending ``target = z`` to the
    assessment stays coherent.

    The base assessment must itself be coherent.  Endpoints are re-validated
    through the full coherence recursion; a failing endpoint is shrunk by
    exact bisection (denominators bounded by 2**32) and reported with a
    warning, which no in-scope configuration is expected to trigger.
    """
    if target.context != a.context:
        raise ValueError("target must live in the assessment's context")
    verdict = check_coherence(a)
    if not verdict.coherent:
        raise IncoherentAssessmentError(
            "cannot extend an incoherent base assessment"
        )
    lo, hi, vacuous = _interval_levels(a.family, a.probs, target)
    adjusted = False
    if validate_endpoints:
        lo, hi, adjusted = _validated(a, target, lo, hi)
    return ProbabilityInterval(lo, hi, vacuous=vacuous and not adjusted, adjusted=adjusted)


def _is_coherent_extension(a: Assessment, target: ConditionalEvent, z: Fraction) -> bool:
    return check_coherence(a.extend(target, z)).coherent


def _validated(
    a: Assessment, target: ConditionalEvent, lo: Fraction, hi: Fraction
) -> tuple[Fraction, Fraction, bool]:
    lo_ok = _is_coherent_extension(a, target, lo)
    hi_ok = lo_ok if lo == hi else _is_coherent_extension(a, target, hi)
    if lo_ok and hi_ok:
        return lo, hi, False

    warnings.warn(
        f"extension endpoint failed coherence validation on [{lo}, {hi}]; "
        "shrinking by bisection",
        RuntimeWarning,
        stacklevel=3,
    )
    anchor = None
    if lo_ok:
        anchor = lo
    elif hi_ok:
        anchor = hi
    else:
        anchor = _probe_anchor(a, target, lo, hi)
    if not lo_ok:
        lo = _bisect_endpoint(a, target, bad=lo, good=anchor)
    if not hi_ok:
        hi = _bisect_endpoint(a, target, bad=hi, good=anchor)
    return lo, hi, True


def _probe_anchor(
    a: Assessment, target: ConditionalEvent, lo: Fraction, hi: Fraction
) -> Fraction:
    """Breadth-first dyadic probe for any coherent value inside [lo, hi]."""
    for depth in range(1, _ANCHOR_PROBE_DEPTH + 1):
        scale = 2**depth
        for k in range(1, scale, 2):
            z = lo + (hi - lo) * Fraction(k, scale)
            if _is_coherent_extension(a, target, z):
                return z
    raise IncoherentAssessmentError(
        "no coherent extension value located inside the candidate interval"
    )


def _bisect_endpoint(
    a: Assessment, target: ConditionalEvent, bad: Fraction, good: Fraction
) -> Fraction:
    """Move from an incoherent endpoint toward a coherent anchor until the
    gap is below the denominator bound."""
    step = Fraction(1, SHRINK_DENOMINATOR_BOUND)
    while abs(good - bad) > step:
        mid = (good + bad) / 2
        if _is_coherent_extension(a, target, mid):
            good = mid
        else:
            bad = mid
    return good


# ---------------------------------------------------------------------------
# JSON shapes
# ---------------------------------------------------------------------------


def fraction_str(x: Fraction) -> str:
    """Rational rendering used by every serialized surface: ``num/den``, or
    a bare integer when the denominator is one."""
    return str(x)


def verdict_to_json(v: CoherenceVerdict) -> dict:
    return {
        "coherent": v.coherent,
        "witness": [fraction_str(x) for x in v.witness] if v.witness else None,
        "certificate": (
            [fraction_str(s) for s in v.certificate] if v.certificate else None
        ),
        "trace": [
            {"indices": list(rec.indices), "I0": list(rec.i0)} for rec in v.trace
        ],
    }


def interval_to_json(iv: ProbabilityInterval) -> dict:
    return {
        "lo": fraction_str(iv.lo),
        "hi": fraction_str(iv.hi),
        "vacuous": iv.vacuous,
        "adjusted": iv.adjusted,
    }
