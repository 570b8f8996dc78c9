"""Exception hierarchy shared by all engine modules."""


class CohereError(Exception):
    """Base class for every error raised by this package."""


class EventSyntaxError(CohereError):
    """Malformed event or conditional expression.

    Carries the zero-based character position of the offending token.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownAtomError(CohereError):
    """An expression refers to an atom that is not declared."""


class ImpossibleAntecedentError(CohereError):
    """A conditional event was built on an antecedent that cannot occur."""


class ProbabilityRangeError(CohereError):
    """A probability value lies outside the closed unit interval."""


class IncoherentAssessmentError(CohereError):
    """An operation that requires a coherent base assessment received an
    incoherent one."""


class NotPConsistentError(CohereError):
    """Entailment was queried on a knowledge base whose all-ones assessment
    is incoherent."""


class SizeLimitError(CohereError):
    """A problem instance exceeds the configured desk-scale bounds."""


class KBFormatError(CohereError):
    """A knowledge-base file violates the file format.

    Carries the one-based line number when known.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
