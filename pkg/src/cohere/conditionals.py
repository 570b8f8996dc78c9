"""Conditional events with three-valued semantics.

A conditional event ``E | H`` is true in a world where ``E & H`` holds, false
where ``~E & H`` holds, and void where ``H`` fails.  Quasi conjunction and
quasi disjunction combine families of conditionals into a single conditional
on the disjunction of the antecedents; the constituent machinery partitions
the admissible worlds by their joint truth-value profile, which is the input
to all coherence computations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import EventSyntaxError, ImpossibleAntecedentError, SizeLimitError
from .events import (
    Context,
    Event,
    Not,
    World,
    and_all,
    is_impossible,
    max_constituents,
    or_all,
    parse_event,
    world_equivalent,
)


class TruthValue3(enum.IntEnum):
    """Three-valued outcome, totally ordered false < void < true."""

    FALSE = 0
    VOID = 1
    TRUE = 2

    def __str__(self) -> str:
        return {0: "False", 1: "Void", 2: "True"}[int(self)]


@dataclass(frozen=True)
class ConditionalEvent:
    """A pair consequent-given-antecedent, valid in a fixed context.

    The antecedent must be possible; this is checked at construction.
    """

    consequent: Event
    antecedent: Event
    context: Context

    def __post_init__(self) -> None:
        self.context.check_event(self.consequent)
        self.context.check_event(self.antecedent)
        if is_impossible(self.antecedent, self.context):
            raise ImpossibleAntecedentError(
                f"antecedent {self.antecedent} is impossible in this context"
            )

    def __str__(self) -> str:
        return f"{self.consequent} | {self.antecedent}"


def truth_value(ce: ConditionalEvent, w: World) -> TruthValue3:
    if not ce.antecedent.evaluate(w):
        return TruthValue3.VOID
    return TruthValue3.TRUE if ce.consequent.evaluate(w) else TruthValue3.FALSE


def negate(ce: ConditionalEvent) -> ConditionalEvent:
    """Negate the consequent, keeping the antecedent."""
    return ConditionalEvent(Not(ce.consequent), ce.antecedent, ce.context)


def _shared_context(family: Sequence[ConditionalEvent]) -> Context:
    if not family:
        raise ValueError("family must be nonempty")
    ctx = family[0].context
    for ce in family[1:]:
        if ce.context != ctx:
            raise ValueError("conditional events must share one context")
    return ctx


def quasi_conjunction(family: Sequence[ConditionalEvent]) -> ConditionalEvent:
    """Conjoin conditionals: no member false and not all void, given some
    antecedent occurs.

    Returns ``(E1H1 v ~H1) & ... & (EnHn v ~Hn) | (H1 v ... v Hn)``; a
    singleton family is returned unchanged.
    """
    ctx = _shared_context(family)
    if len(family) == 1:
        return family[0]
    consequent = and_all([(ce.consequent & ce.antecedent) | ~ce.antecedent for ce in family])
    antecedent = or_all([ce.antecedent for ce in family])
    return ConditionalEvent(consequent, antecedent, ctx)


def quasi_disjunction(family: Sequence[ConditionalEvent]) -> ConditionalEvent:
    """Dual of :func:`quasi_conjunction`: some member true, given some
    antecedent occurs."""
    ctx = _shared_context(family)
    if len(family) == 1:
        return family[0]
    consequent = or_all([ce.consequent & ce.antecedent for ce in family])
    antecedent = or_all([ce.antecedent for ce in family])
    return ConditionalEvent(consequent, antecedent, ctx)


def gn_includes(a: ConditionalEvent, b: ConditionalEvent) -> bool:
    """Goodman-Nguyen inclusion: the truth value of ``a`` never exceeds the
    truth value of ``b`` under false < void < true.

    Equivalently, the three events ``a-true & b-false``, ``a-void & b-false``
    and ``a-true & b-void`` are all impossible.
    """
    ctx = _shared_context([a, b])
    a_true = a.consequent & a.antecedent
    b_false = ~b.consequent & b.antecedent
    return (
        is_impossible(a_true & b_false, ctx)
        and is_impossible(~a.antecedent & b_false, ctx)
        and is_impossible(a_true & ~b.antecedent, ctx)
    )


def n_conditional(events: Sequence[Event], context: Context) -> ConditionalEvent:
    """Conjunction of all events given their disjunction.

    Generalizes the biconditional (two events) and equals the quasi
    conjunction of any deranged loop of pairwise conditionals.
    """
    if len(events) < 1:
        raise ValueError("n_conditional requires at least one event")
    for e in events:
        if is_impossible(e, context):
            raise ImpossibleAntecedentError(f"event {e} is impossible in this context")
    return ConditionalEvent(and_all(list(events)), or_all(list(events)), context)


def biconditional(a: Event, b: Event, context: Context) -> ConditionalEvent:
    """Both events given at least one of them: ``a & b | (a v b)``."""
    return n_conditional([a, b], context)


def equivalent(a: ConditionalEvent, b: ConditionalEvent) -> bool:
    """Semantic equality: world-equivalent antecedents and identical truth
    values on every admissible world."""
    ctx = _shared_context([a, b])
    if not world_equivalent(a.antecedent, b.antecedent, ctx):
        return False
    return all(truth_value(a, w) == truth_value(b, w) for w in ctx.worlds)


# ---------------------------------------------------------------------------
# Constituents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Constituent:
    """A maximal class of admissible worlds sharing one truth-value profile."""

    profile: tuple[TruthValue3, ...]
    worlds: tuple[World, ...]

    @property
    def representative(self) -> World:
        return self.worlds[0]


@dataclass(frozen=True)
class ConstituentSet:
    """Partition of the admissible worlds induced by a family of conditionals.

    ``inside`` lists the classes meeting at least one antecedent, ordered by
    their lexicographically first world; ``c0`` is the all-antecedents-false
    class when it is nonempty.
    """

    family: tuple[ConditionalEvent, ...]
    inside: tuple[Constituent, ...]
    c0: Constituent | None

    def __len__(self) -> int:
        return len(self.inside) + (1 if self.c0 is not None else 0)


def constituents(family: Sequence[ConditionalEvent]) -> ConstituentSet:
    """Group admissible worlds by their profile over ``family``.

    Two worlds share a class iff every conditional takes the same truth value
    in both.  Classes are ordered by first admissible world so that derived
    matrices are reproducible.
    """
    ctx = _shared_context(family)
    bound = max_constituents()
    if 3 ** len(family) > bound and len(ctx.worlds) > bound:
        raise SizeLimitError(
            f"family of {len(family)} conditionals may generate more than "
            f"{bound} constituents (override with COHERE_MAX_CONSTITUENTS)"
        )
    groups: dict[tuple[TruthValue3, ...], list[World]] = {}
    order: list[tuple[TruthValue3, ...]] = []
    for w in ctx.worlds:
        profile = tuple(truth_value(ce, w) for ce in family)
        if profile not in groups:
            groups[profile] = []
            order.append(profile)
        groups[profile].append(w)
    if len(order) > bound:
        raise SizeLimitError(
            f"{len(order)} constituents exceed the bound of {bound} "
            "(override with COHERE_MAX_CONSTITUENTS)"
        )
    all_void = tuple([TruthValue3.VOID] * len(family))
    c0 = None
    inside = []
    for profile in order:
        cls = Constituent(profile, tuple(groups[profile]))
        if profile == all_void:
            c0 = cls
        else:
            inside.append(cls)
    assert len(inside) + (1 if c0 else 0) <= 3 ** len(family)
    return ConstituentSet(tuple(family), tuple(inside), c0)


# ---------------------------------------------------------------------------
# Conditional expression parsing
# ---------------------------------------------------------------------------


def parse_conditional(text: str, context: Context) -> ConditionalEvent:
    """Parse ``consequent | antecedent`` using the event grammar.

    The conditioning bar is the first bar at parenthesis depth zero that
    splits the text into two well-formed events; any later top-level bars
    belong to the antecedent.  ``(A | B) | H`` therefore denotes the
    disjunction of A and B conditioned on H.
    """
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "|" and depth == 0:
            try:
                consequent = parse_event(text[:i], context.atoms)
                antecedent = parse_event(text[i + 1:], context.atoms)
            except EventSyntaxError:
                continue
            return ConditionalEvent(consequent, antecedent, context)
    raise EventSyntaxError(
        "expected a conditional of the form 'consequent | antecedent'", len(text)
    )
