"""Plain-text knowledge-base files.

Line-oriented format with four sections, designed to keep fixtures
diff-friendly::

    # comment
    atoms: L S G N
    constraints:
      A & B            # each line is an event declared impossible
    conditionals:
      c1: G | L = 1    # name: consequent | antecedent [= probability]
    queries:
      entails ~N | L   # stored verbatim

Probabilities are written ``a/b``, as integers, or as decimals; decimals are
converted exactly at parse time, so no floats survive parsing.  Probabilities
must be given for all conditionals or for none.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coherence import Assessment
from .conditionals import ConditionalEvent, parse_conditional
from .errors import CohereError, KBFormatError
from .events import Context, Event, parse_event
from .inference import KnowledgeBase

_SECTIONS = ("atoms", "constraints", "conditionals", "queries")


@dataclass(frozen=True)
class KnowledgeBaseFile:
    """Parsed file contents, prior to semantic packaging."""

    atoms: tuple[str, ...]
    constraints: tuple[Event, ...]
    names: tuple[str, ...]
    conditionals: tuple[ConditionalEvent, ...]
    probs: tuple[Fraction | None, ...]
    queries: tuple[str, ...]

    @property
    def context(self) -> Context:
        return Context(self.atoms, self.constraints)


def parse_rational(text: str) -> Fraction:
    """Exact rational from ``a/b``, integer, or decimal notation."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise CohereError(f"not a rational number: {text.strip()!r}") from exc


def parse_kb_text(text: str) -> KnowledgeBaseFile:
    atoms: list[str] = []
    constraint_src: list[tuple[int, str]] = []
    conditional_src: list[tuple[int, str]] = []
    queries: list[str] = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if sep and head.strip() in _SECTIONS:
            # Section keywords are reserved; they cannot name conditionals.
            section = head.strip()
            rest = rest.strip()
            if rest:
                if section == "atoms":
                    atoms.extend(rest.split())
                elif section == "constraints":
                    constraint_src.append((lineno, rest))
                elif section == "conditionals":
                    conditional_src.append((lineno, rest))
                else:
                    queries.append(rest)
            continue
        if section is None:
            raise KBFormatError("content before any section header", lineno)
        if section == "atoms":
            atoms.extend(line.split())
        elif section == "constraints":
            constraint_src.append((lineno, line))
        elif section == "conditionals":
            conditional_src.append((lineno, line))
        else:
            queries.append(line)

    if not atoms:
        raise KBFormatError("no atoms declared")
    try:
        context = Context(tuple(atoms))
    except (ValueError, CohereError) as exc:
        raise KBFormatError(str(exc)) from exc

    constraints: list[Event] = []
    for lineno, src in constraint_src:
        try:
            constraints.append(parse_event(src, atoms))
        except CohereError as exc:
            raise KBFormatError(str(exc), lineno) from exc
    try:
        context = Context(tuple(atoms), tuple(constraints))
    except (ValueError, CohereError) as exc:
        raise KBFormatError(str(exc)) from exc

    names: list[str] = []
    conditionals: list[ConditionalEvent] = []
    probs: list[Fraction | None] = []
    for lineno, src in conditional_src:
        name, sep, body = src.partition(":")
        name = name.strip()
        if not sep or not name or " " in name:
            raise KBFormatError(
                "expected 'name: consequent | antecedent [= probability]'", lineno
            )
        if name in names:
            raise KBFormatError(f"duplicate conditional name {name!r}", lineno)
        expr, eq, prob_src = body.rpartition("=")
        if not eq:
            expr, prob_src = body, None
        try:
            conditionals.append(parse_conditional(expr.strip(), context))
        except CohereError as exc:
            raise KBFormatError(str(exc), lineno) from exc
        if prob_src is None:
            probs.append(None)
        else:
            try:
                p = parse_rational(prob_src)
            except CohereError as exc:
                raise KBFormatError(str(exc), lineno) from exc
            if not 0 <= p <= 1:
                raise KBFormatError(f"probability {p} outside [0, 1]", lineno)
            probs.append(p)
        names.append(name)

    if not conditionals:
        raise KBFormatError("no conditionals declared")
    given = [p for p in probs if p is not None]
    if given and len(given) != len(probs):
        raise KBFormatError("probabilities must be given for all conditionals or none")

    return KnowledgeBaseFile(
        atoms=tuple(atoms),
        constraints=tuple(constraints),
        names=tuple(names),
        conditionals=tuple(conditionals),
        probs=tuple(probs),
        queries=tuple(queries),
    )


def load_kb_file(path: str) -> KnowledgeBaseFile:
    with open(path, encoding="utf-8") as fh:
        return parse_kb_text(fh.read())


def to_knowledge_base(
    f: KnowledgeBaseFile,
) -> tuple[KnowledgeBase, Assessment | None]:
    kb = KnowledgeBase(f.context, f.names, f.conditionals)
    assessment = None
    if f.probs and f.probs[0] is not None:
        assessment = Assessment(f.conditionals, tuple(f.probs))  # type: ignore[arg-type]
    return kb, assessment


def load_kb(path: str) -> tuple[KnowledgeBase, Assessment | None]:
    """Load and fully validate a knowledge-base file."""
    return to_knowledge_base(load_kb_file(path))


def dump_kb(f: KnowledgeBaseFile) -> str:
    """Canonical serialization; reparsing yields an identical structure."""
    lines = [f"atoms: {' '.join(f.atoms)}"]
    if f.constraints:
        lines.append("constraints:")
        lines.extend(f"  {c}" for c in f.constraints)
    lines.append("conditionals:")
    for name, ce, p in zip(f.names, f.conditionals, f.probs):
        suffix = f" = {p}" if p is not None else ""
        lines.append(f"  {name}: {ce}{suffix}")
    if f.queries:
        lines.append("queries:")
        lines.extend(f"  {q}" for q in f.queries)
    return "\n".join(lines) + "\n"
