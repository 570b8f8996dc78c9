"""Shared generators and independent mini-oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from cohere import (
    Assessment,
    Atom,
    ConditionalEvent,
    Context,
    Event,
    is_impossible,
    parse_event,
    truth_value,
)

ATOM_POOL = ("A", "B", "C", "D", "E")


def random_event(rng: random.Random, atoms: tuple[str, ...], depth: int = 2) -> Event:
    roll = rng.random()
    if depth == 0 or roll < 0.4:
        return Atom(rng.choice(atoms))
    if roll < 0.6:
        return ~random_event(rng, atoms, depth - 1)
    left = random_event(rng, atoms, depth - 1)
    right = random_event(rng, atoms, depth - 1)
    return (left & right) if roll < 0.8 else (left | right)


def random_context(rng: random.Random, allow_constraints: bool) -> Context:
    n = rng.randint(2, 4)
    atoms = ATOM_POOL[:n]
    constraints: tuple[Event, ...] = ()
    if allow_constraints and rng.random() < 0.7:
        first = Atom(rng.choice(atoms))
        second = Atom(rng.choice(atoms))
        if rng.random() < 0.5:
            second = ~second
        constraints = (first & second,)
    ctx = Context(atoms, constraints)
    if not ctx.worlds:
        return Context(atoms)
    return ctx


def random_conditional(rng: random.Random, ctx: Context) -> ConditionalEvent:
    while True:
        antecedent = random_event(rng, ctx.atoms)
        if is_impossible(antecedent, ctx):
            continue
        consequent = random_event(rng, ctx.atoms)
        return ConditionalEvent(consequent, antecedent, ctx)


def random_unit(rng: random.Random, max_denominator: int = 6) -> Fraction:
    den = rng.randint(1, max_denominator)
    return Fraction(rng.randint(0, den), den)


def random_assessment(
    rng: random.Random, max_size: int = 3, allow_constraints: bool = True
) -> Assessment:
    ctx = random_context(rng, allow_constraints)
    n = rng.randint(1, max_size)
    family = tuple(random_conditional(rng, ctx) for _ in range(n))
    probs = tuple(random_unit(rng) for _ in range(n))
    return Assessment(family, probs)


def independent_pairs(n: int) -> tuple[Context, tuple[ConditionalEvent, ...]]:
    """n conditional events over 2n fresh, unconstrained atoms."""
    atoms = tuple(f"E{i}" for i in range(1, n + 1)) + tuple(
        f"H{i}" for i in range(1, n + 1)
    )
    ctx = Context(atoms)
    family = tuple(
        ConditionalEvent(Atom(f"E{i}"), Atom(f"H{i}"), ctx) for i in range(1, n + 1)
    )
    return ctx, family


def gn_chain_context(k: int) -> tuple[Context, tuple[ConditionalEvent, ...]]:
    """A k-link chain E1|H1 <= ... <= Ek|Hk via pairwise inclusion constraints."""
    atoms = tuple(
        name for i in range(1, k + 1) for name in (f"E{i}", f"H{i}")
    )
    constraints = []
    for i in range(1, k):
        constraints += [
            parse_event(f"E{i} & H{i} & ~E{i + 1} & H{i + 1}"),
            parse_event(f"~H{i} & ~E{i + 1} & H{i + 1}"),
            parse_event(f"E{i} & H{i} & ~H{i + 1}"),
        ]
    ctx = Context(atoms, tuple(constraints))
    family = tuple(
        ConditionalEvent(Atom(f"E{i}"), Atom(f"H{i}"), ctx) for i in range(1, k + 1)
    )
    return ctx, family


def truth_table_equal(a: ConditionalEvent, b: ConditionalEvent) -> bool:
    """Exhaustive world-by-world comparison, independent of `equivalent`."""
    assert a.context == b.context
    return all(truth_value(a, w) == truth_value(b, w) for w in a.context.worlds)
