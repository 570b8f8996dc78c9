"""Default-reasoning layer: p-consistency, p-entailment, and bound formulas.

A knowledge base p-entails a conditional when every coherent extension of the
all-ones assessment gives the conclusion probability one.  Two procedures are
provided: the exact extension-interval computation, and a cross-check that
searches for a subfamily whose quasi conjunction is included in the target in
the Goodman-Nguyen order.  The closed-form bound propagation functions assume
logically independent premises; under logical constraints the true bounds can
only be tighter, so route constrained problems through the extension-interval
path instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .coherence import Assessment, ProbabilityInterval, check_coherence, extension_interval
from .conditionals import (
    ConditionalEvent,
    gn_includes,
    quasi_conjunction,
)
from .errors import CohereError, NotPConsistentError, SizeLimitError
from .events import Atom, Context, implies, is_impossible
from .tnorms import ONE, ZERO, as_unit, hamacher0_conary, hamacher0_nary

SUBSET_SEARCH_LIMIT = 12
LOOP_MAX = 5


@dataclass(frozen=True)
class KnowledgeBase:
    """Named conditional events over one context."""

    context: Context
    names: tuple[str, ...]
    conditionals: tuple[ConditionalEvent, ...]

    def __post_init__(self) -> None:
        if len(self.names) != len(self.conditionals):
            raise ValueError("names and conditionals differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("conditional names must be unique")
        for ce in self.conditionals:
            if ce.context != self.context:
                raise ValueError("conditionals must live in the knowledge base context")

    def __len__(self) -> int:
        return len(self.conditionals)

    def get(self, name: str) -> ConditionalEvent:
        try:
            return self.conditionals[self.names.index(name)]
        except ValueError:
            raise KeyError(name) from None


def all_ones(kb: KnowledgeBase) -> Assessment:
    return Assessment(kb.conditionals, (ONE,) * len(kb))


def p_consistent(kb: KnowledgeBase) -> bool:
    """True iff assigning probability one to every member is coherent."""
    return check_coherence(all_ones(kb)).coherent


def p_entails(kb: KnowledgeBase, target: ConditionalEvent) -> bool:
    """Exact p-entailment: the coherent extensions of the all-ones assessment
    to the target reduce to the single value one."""
    if not p_consistent(kb):
        raise NotPConsistentError("knowledge base is not p-consistent")
    interval = extension_interval(all_ones(kb), target)
    return interval.lo == ONE and interval.hi == ONE


def p_entails_qc(kb: KnowledgeBase, target: ConditionalEvent) -> bool:
    """Quasi-conjunction entailment check.

    Succeeds when the target's antecedent implies its consequent, or when the
    quasi conjunction of some nonempty subfamily is included in the target
    under the Goodman-Nguyen order.  Requires the target's
    antecedent-consequent conjunction to be possible, and searches subsets
    exhaustively (early exit) at desk scale.
    """
    ctx = kb.context
    if is_impossible(target.consequent & target.antecedent, ctx):
        raise CohereError(
            "quasi-conjunction entailment requires a possible "
            "antecedent-consequent conjunction on the target"
        )
    if not p_consistent(kb):
        raise NotPConsistentError("knowledge base is not p-consistent")
    if implies(target.antecedent, target.consequent, ctx):
        return True
    if len(kb) > SUBSET_SEARCH_LIMIT:
        raise SizeLimitError(
            f"subset search is bounded at {SUBSET_SEARCH_LIMIT} premises"
        )
    members = kb.conditionals
    for size in range(1, len(members) + 1):
        for subset in itertools.combinations(members, size):
            if gn_includes(quasi_conjunction(subset), target):
                return True
    return False


# ---------------------------------------------------------------------------
# Closed-form bound propagation (logical independence assumed)
# ---------------------------------------------------------------------------


def _units(probs: Sequence[Fraction]) -> list[Fraction]:
    if not probs:
        raise ValueError("at least one premise probability is required")
    return [as_unit(p, f"p{i + 1}") for i, p in enumerate(probs)]


def qc_bounds(probs: Sequence[Fraction]) -> ProbabilityInterval:
    """Quasi conjunction of independent premises: Lukasiewicz lower bound,
    Hamacher (parameter 0) conorm upper bound."""
    p = _units(probs)
    lo = max(sum(p) - (len(p) - 1), ZERO)
    return ProbabilityInterval(lo, hamacher0_conary(p))


def qd_bounds(probs: Sequence[Fraction]) -> ProbabilityInterval:
    """Quasi disjunction: Hamacher (parameter 0) lower bound, Lukasiewicz
    conorm upper bound."""
    p = _units(probs)
    return ProbabilityInterval(hamacher0_nary(p), min(sum(p), ONE))


def or_rule_bounds(probs: Sequence[Fraction]) -> ProbabilityInterval:
    """Same event under alternative conditioning events: Hamacher
    (parameter 0) pair on both sides."""
    p = _units(probs)
    return ProbabilityInterval(hamacher0_nary(p), hamacher0_conary(p))


def gn_chain_bounds(probs: Sequence[Fraction]) -> ProbabilityInterval:
    """Quasi conjunction of a Goodman-Nguyen chain: the premise probabilities
    must be nondecreasing and the interval spans them."""
    p = _units(probs)
    if any(a > b for a, b in zip(p, p[1:])):
        raise ValueError("chain premises must be nondecreasing")
    return ProbabilityInterval(p[0], p[-1])


def compound_bounds(probs: Sequence[Fraction]) -> ProbabilityInterval:
    """Chained conditioning: the extension is uniquely the product."""
    p = _units(probs)
    value = ONE
    for v in p:
        value *= v
    return ProbabilityInterval(value, value)


def dual_compound_value(x: Fraction, y: Fraction) -> Fraction:
    """Disjunction built from a conditional and its complement-conditioned
    companion: the probabilistic sum."""
    x, y = as_unit(x, "x"), as_unit(y, "y")
    return x + y - x * y


def biconditional_value(x: Fraction, y: Fraction) -> Fraction:
    """Both-given-either: the Hamacher (parameter 0) t-norm, zero at (0, 0)."""
    return hamacher0_nary([as_unit(x, "x"), as_unit(y, "y")])


RULE_KINDS = ("qc", "qd", "or", "gn", "compound", "bic", "dual")


@dataclass(frozen=True)
class RuleBounds:
    rule: str
    probs: tuple[Fraction, ...]
    interval: ProbabilityInterval


def rule_bounds(kind: str, probs: Sequence[Fraction]) -> RuleBounds:
    """Dispatch a bound-propagation rule by name."""
    p = tuple(_units(probs))
    if kind == "qc":
        interval = qc_bounds(p)
    elif kind == "qd":
        interval = qd_bounds(p)
    elif kind == "or":
        interval = or_rule_bounds(p)
    elif kind == "gn":
        interval = gn_chain_bounds(p)
    elif kind == "compound":
        interval = compound_bounds(p)
    elif kind == "bic":
        if len(p) != 2:
            raise ValueError("the biconditional rule takes exactly two premises")
        v = biconditional_value(*p)
        interval = ProbabilityInterval(v, v)
    elif kind == "dual":
        if len(p) != 2:
            raise ValueError("the dual compound rule takes exactly two premises")
        v = dual_compound_value(*p)
        interval = ProbabilityInterval(v, v)
    else:
        raise ValueError(f"unknown rule kind {kind!r}; expected one of {RULE_KINDS}")
    return RuleBounds(kind, p, interval)


# ---------------------------------------------------------------------------
# Premise regions from conclusion bounds
# ---------------------------------------------------------------------------


def in_l_gamma_qc(probs: Sequence[Fraction], gamma: Fraction) -> bool:
    """Premises forcing the quasi conjunction's lower bound to at least
    gamma: total probability at least gamma + n - 1 (everything for gamma 0)."""
    p = _units(probs)
    g = as_unit(gamma, "gamma")
    if g == 0:
        return True
    return sum(p) >= g + len(p) - 1


def in_u_gamma_qc(probs: Sequence[Fraction], gamma: Fraction) -> bool:
    """Premises forcing the quasi conjunction's upper bound to at most gamma,
    via the sequential threshold (gamma - u)/(1 - (2 - gamma) u)."""
    p = _units(probs)
    g = as_unit(gamma, "gamma")
    if g == 1:
        return True
    u = p[0]
    if u > g:
        return False
    for nxt in p[1:]:
        # 1 - (2 - g) u >= (1 - u)^2 > 0 because u <= g < 1
        if nxt > (g - u) / (1 - (2 - g) * u):
            return False
        u = hamacher0_conary([u, nxt])
    return True


def in_l_gamma_qd(probs: Sequence[Fraction], gamma: Fraction) -> bool:
    """Premises forcing the quasi disjunction's lower bound to at least gamma,
    via the sequential threshold gamma l/(l - gamma + gamma l)."""
    p = _units(probs)
    g = as_unit(gamma, "gamma")
    if g == 0:
        return True
    low = p[0]
    if low < g:
        return False
    for nxt in p[1:]:
        # l (1 + g) - g >= g^2 > 0 because l >= g > 0
        if nxt < g * low / (low - g + g * low):
            return False
        low = hamacher0_nary([low, nxt])
    return True


def in_u_gamma_qd(probs: Sequence[Fraction], gamma: Fraction) -> bool:
    """Premises forcing the quasi disjunction's upper bound to at most gamma:
    total probability at most gamma (everything for gamma 1)."""
    p = _units(probs)
    g = as_unit(gamma, "gamma")
    if g == 1:
        return True
    return sum(p) <= g


@dataclass(frozen=True)
class GammaRegion:
    """Membership predicate for one of the four premise regions."""

    kind: str  # "L" or "U"
    operation: str  # "qc" or "qd"
    gamma: Fraction

    _TESTS = {
        ("L", "qc"): in_l_gamma_qc,
        ("U", "qc"): in_u_gamma_qc,
        ("L", "qd"): in_l_gamma_qd,
        ("U", "qd"): in_u_gamma_qd,
    }

    def __post_init__(self) -> None:
        if (self.kind, self.operation) not in self._TESTS:
            raise ValueError(f"unknown region {self.kind}/{self.operation}")
        as_unit(self.gamma, "gamma")

    def contains(self, probs: Sequence[Fraction]) -> bool:
        return self._TESTS[(self.kind, self.operation)](probs, self.gamma)


# ---------------------------------------------------------------------------
# Loop families
# ---------------------------------------------------------------------------


def _loop_context(n: int) -> Context:
    return Context(tuple(f"A{i}" for i in range(1, n + 1)))


def loop_family(n: int, context: Context | None = None) -> KnowledgeBase:
    """The cyclic family A2|A1, ..., An|A(n-1), A1|An over fresh atoms."""
    ctx = context if context is not None else _loop_context(n)
    names = []
    conditionals = []
    for j in range(1, n + 1):
        i = j % n + 1
        names.append(f"c{j}")
        conditionals.append(ConditionalEvent(Atom(f"A{i}"), Atom(f"A{j}"), ctx))
    return KnowledgeBase(ctx, tuple(names), tuple(conditionals))


def deranged_family(
    n: int, derangement: Sequence[int], context: Context
) -> KnowledgeBase:
    """The family A(i_j)|A(j) for a fixed-point-free permutation i."""
    if sorted(derangement) != list(range(1, n + 1)):
        raise ValueError(f"{derangement} is not a permutation of 1..{n}")
    if any(i == j for j, i in enumerate(derangement, start=1)):
        raise ValueError(f"{derangement} has a fixed point")
    names = tuple(f"d{j}" for j in range(1, n + 1))
    conditionals = tuple(
        ConditionalEvent(Atom(f"A{i}"), Atom(f"A{j}"), context)
        for j, i in enumerate(derangement, start=1)
    )
    return KnowledgeBase(context, names, conditionals)


def loop_entails(n: int, derangement: Sequence[int]) -> bool:
    """Mutual p-entailment between the cyclic family and a deranged family."""
    if not 2 <= n <= LOOP_MAX:
        raise SizeLimitError(f"loop size must be between 2 and {LOOP_MAX}")
    ctx = _loop_context(n)
    loop = loop_family(n, ctx)
    other = deranged_family(n, derangement, ctx)
    return all(p_entails(loop, t) for t in other.conditionals) and all(
        p_entails(other, t) for t in loop.conditionals
    )


def derangements(n: int) -> Iterator[tuple[int, ...]]:
    """All fixed-point-free permutations of 1..n."""
    for perm in itertools.permutations(range(1, n + 1)):
        if all(i != j for j, i in enumerate(perm, start=1)):
            yield perm
