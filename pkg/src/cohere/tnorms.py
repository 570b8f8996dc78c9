"""Triangular norms and conorms on exact rationals.

Implemented families: minimum, product, Lukasiewicz, drastic, and the
Hamacher family with parameter lambda in [0, inf].  All arguments and
parameters are :class:`fractions.Fraction`; the infinite parameter is the
distinguished token :data:`INF`, never a float.  N-ary evaluation folds the
binary operator left-associatively; associativity makes the fold order
irrelevant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import ProbabilityRangeError

ZERO = Fraction(0)
ONE = Fraction(1)


class _Infinity:
    """Token for the Hamacher parameter lambda = infinity (drastic limit)."""

    _instance = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"


INF = _Infinity()

HamacherParam = Union[Fraction, _Infinity]


def as_unit(value: Fraction | int | str, name: str = "value") -> Fraction:
    """Coerce to an exact rational in [0, 1]."""
    f = Fraction(value)
    if f < 0 or f > 1:
        raise ProbabilityRangeError(f"{name} must lie in [0, 1], got {f}")
    return f


@dataclass(frozen=True)
class OperatorFamily:
    """A t-norm family together with its dual t-conorm.

    ``kind`` is one of ``minimum``, ``product``, ``lukasiewicz``, ``drastic``,
    ``hamacher``; the Hamacher kind carries a parameter >= 0 or :data:`INF`.
    """

    kind: str
    parameter: HamacherParam | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("minimum", "product", "lukasiewicz", "drastic", "hamacher"):
            raise ValueError(f"unknown operator family {self.kind!r}")
        if self.kind == "hamacher":
            if self.parameter is None:
                raise ValueError("hamacher family needs a parameter")
            if not isinstance(self.parameter, _Infinity) and self.parameter < 0:
                raise ValueError("hamacher parameter must be >= 0")
        elif self.parameter is not None:
            raise ValueError(f"{self.kind} family takes no parameter")

    def __str__(self) -> str:
        if self.kind == "hamacher":
            return f"hamacher({self.parameter})"
        return self.kind


MINIMUM = OperatorFamily("minimum")
PRODUCT = OperatorFamily("product")
LUKASIEWICZ = OperatorFamily("lukasiewicz")
DRASTIC = OperatorFamily("drastic")


def hamacher(parameter: HamacherParam | int | str) -> OperatorFamily:
    if not isinstance(parameter, _Infinity):
        parameter = Fraction(parameter)
    return OperatorFamily("hamacher", parameter)


HAMACHER0 = hamacher(0)


# ---------------------------------------------------------------------------
# Binary operators
# ---------------------------------------------------------------------------


def _tnorm2(f: OperatorFamily, x: Fraction, y: Fraction) -> Fraction:
    if f.kind == "minimum":
        return min(x, y)
    if f.kind == "product":
        return x * y
    if f.kind == "lukasiewicz":
        return max(x + y - 1, ZERO)
    if f.kind == "drastic":
        return _drastic_t(x, y)
    lam = f.parameter
    if isinstance(lam, _Infinity):
        return _drastic_t(x, y)
    if lam == 0 and x == 0 and y == 0:
        return ZERO
    return x * y / (lam + (1 - lam) * (x + y - x * y))


def _drastic_t(x: Fraction, y: Fraction) -> Fraction:
    return min(x, y) if (x == 1 or y == 1) else ZERO


def _tconorm2(f: OperatorFamily, x: Fraction, y: Fraction) -> Fraction:
    if f.kind == "minimum":
        return max(x, y)
    if f.kind == "product":
        return x + y - x * y
    if f.kind == "lukasiewicz":
        return min(x + y, ONE)
    if f.kind == "drastic":
        return _drastic_s(x, y)
    lam = f.parameter
    if isinstance(lam, _Infinity):
        return _drastic_s(x, y)
    if lam == 0 and x == 1 and y == 1:
        return ONE
    return (x + y - x * y - (1 - lam) * x * y) / (1 - (1 - lam) * x * y)


def _drastic_s(x: Fraction, y: Fraction) -> Fraction:
    return max(x, y) if (x == 0 or y == 0) else ONE


# ---------------------------------------------------------------------------
# N-ary evaluation
# ---------------------------------------------------------------------------


def _fold(op, f: OperatorFamily, args: Sequence[Fraction]) -> Fraction:
    values = [as_unit(a, f"args[{i}]") for i, a in enumerate(args)]
    if not values:
        raise ValueError("at least one argument is required")
    out = values[0]
    for v in values[1:]:
        out = op(f, out, v)
    return out


def tnorm(f: OperatorFamily, args: Sequence[Fraction]) -> Fraction:
    """Evaluate the t-norm on one or more unit arguments."""
    return _fold(_tnorm2, f, args)


def tconorm(f: OperatorFamily, args: Sequence[Fraction]) -> Fraction:
    """Evaluate the dual t-conorm on one or more unit arguments."""
    return _fold(_tconorm2, f, args)


def dual_eval(f: OperatorFamily, args: Sequence[Fraction]) -> Fraction:
    """Evaluate the t-conorm through complementation of the t-norm:
    S(p1..pk) = 1 - T(1-p1, ..., 1-pk)."""
    values = [as_unit(a, f"args[{i}]") for i, a in enumerate(args)]
    if not values:
        raise ValueError("at least one argument is required")
    return 1 - tnorm(f, [1 - v for v in values])


# ---------------------------------------------------------------------------
# Closed forms for the Hamacher lambda=0 pair
# ---------------------------------------------------------------------------


def hamacher0_nary(args: Sequence[Fraction]) -> Fraction:
    """Closed form from the additive generator t(x) = (1-x)/x:
    0 when any argument is 0, else 1 / (sum (1-p)/p + 1)."""
    values = [as_unit(a, f"args[{i}]") for i, a in enumerate(args)]
    if not values:
        raise ValueError("at least one argument is required")
    if any(v == 0 for v in values):
        return ZERO
    return 1 / (sum((1 - v) / v for v in values) + 1)


def hamacher0_conary(args: Sequence[Fraction]) -> Fraction:
    """Dual closed form: 1 when any argument is 1, else
    (sum p/(1-p)) / (sum p/(1-p) + 1)."""
    values = [as_unit(a, f"args[{i}]") for i, a in enumerate(args)]
    if not values:
        raise ValueError("at least one argument is required")
    if any(v == 1 for v in values):
        return ONE
    total = sum(v / (1 - v) for v in values)
    return total / (total + 1)
