"""Pairwise tail comparison and selection of the dominating normal.

A distribution *strongly dominates* another in the right tail when its
share of the combined survival mass ``F1(c) / (F1(c) + F2(c))`` tends to 1.
When the ratio of densities tends to a finite positive limit, the survival
ratio tends to the same limit and neither dominates strongly.

Verdicts are read off the parameters. Same-family rules follow from the
exponent of the density ratio; cross-family rules from the tail decay
orders ``e^{-x^2} << e^{-x} << x^{-2}`` (normal, Laplace, Cauchy).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .distributions import DistributionSpec, Family, log_ccdf
from .errors import (
    DistributionsIdentical,
    EmptyInput,
    InvalidDistribution,
    InvalidRanges,
    UnsupportedFamily,
)


class Tail(str, enum.Enum):
    RIGHT = "right"
    LEFT = "left"


class Verdict(str, enum.Enum):
    FIRST_STRONGLY_DOMINATES = "first_strongly_dominates"
    SECOND_STRONGLY_DOMINATES = "second_strongly_dominates"
    FINITE_RATIO = "finite_ratio"


@dataclass(frozen=True)
class TailRelation:
    verdict: Verdict
    tail: Tail
    alpha: float | None = None

    @property
    def is_strong(self) -> bool:
        return self.verdict is not Verdict.FINITE_RATIO

    def swapped(self) -> TailRelation:
        if self.verdict is Verdict.FIRST_STRONGLY_DOMINATES:
            return TailRelation(Verdict.SECOND_STRONGLY_DOMINATES, self.tail)
        if self.verdict is Verdict.SECOND_STRONGLY_DOMINATES:
            return TailRelation(Verdict.FIRST_STRONGLY_DOMINATES, self.tail)
        return TailRelation(Verdict.FINITE_RATIO, self.tail, 1.0 / self.alpha)

    def describe(self, first: str = "first", second: str = "second") -> str:
        where = f"in the {self.tail.value} tail"
        if self.verdict is Verdict.FIRST_STRONGLY_DOMINATES:
            return f"{first} strongly dominates {second} {where}"
        if self.verdict is Verdict.SECOND_STRONGLY_DOMINATES:
            return f"{second} strongly dominates {first} {where}"
        if self.alpha == 1.0:
            return f"neither dominates {where}; tail ratio tends to 1"
        hi, lo = (first, second) if self.alpha > 1 else (second, first)
        ratio = max(self.alpha, 1.0 / self.alpha)
        return f"{hi} dominates {lo} {where}, but not strongly; tail ratio tends to {ratio:.6g}"

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "tail": self.tail.value, "alpha": self.alpha}


def _first(tail):
    return TailRelation(Verdict.FIRST_STRONGLY_DOMINATES, tail)


def _second(tail):
    return TailRelation(Verdict.SECOND_STRONGLY_DOMINATES, tail)


def _by_sign(value: float, tail: Tail) -> TailRelation:
    if value > 0:
        return _first(tail)
    if value < 0:
        return _second(tail)
    return TailRelation(Verdict.FINITE_RATIO, tail, 1.0)


def _right_tail(a: DistributionSpec, b: DistributionSpec, tail: Tail) -> TailRelation:
    if a.family is not b.family:
        return _by_sign(a.family.tail_rank - b.family.tail_rank, tail)

    if a.family is Family.NORMAL:
        # density ratio exponent: x^2 (1/s2^2 - 1/s1^2)/2 + x (m1/s1^2 - m2/s2^2) + ...
        if a.scale != b.scale:
            return _by_sign(a.scale - b.scale, tail)
        return _by_sign(a.location - b.location, tail)

    if a.family is Family.LAPLACE:
        if a.scale != b.scale:
            return _by_sign(a.scale - b.scale, tail)
        try:
            alpha = math.exp((a.location - b.location) / a.scale)
        except OverflowError:
            alpha = math.inf
        return TailRelation(Verdict.FINITE_RATIO, tail, alpha)

    # Cauchy: f1/f2 -> s1/s2 whatever the medians
    return TailRelation(Verdict.FINITE_RATIO, tail, a.scale / b.scale)


def classify_pair(
    a: DistributionSpec, b: DistributionSpec, tail: Tail | str = Tail.RIGHT
) -> TailRelation:
    """Tail relation of ``a`` versus ``b``.

    >>> from taildom.distributions import cauchy
    >>> classify_pair(cauchy(0, 1), cauchy(0.5, 0.5)).alpha
    2.0
    """
    for spec in (a, b):
        if not isinstance(spec, DistributionSpec):
            raise InvalidDistribution(f"expected a DistributionSpec, got {type(spec).__name__}")
    tail = Tail(tail)
    if tail is Tail.LEFT:
        a, b = a.reflected(), b.reflected()
    return _right_tail(a, b, tail)


def ccdf_ratio_trace(a: DistributionSpec, b: DistributionSpec, cutoffs: Sequence[float]) -> list[float]:
    """``ccdf(a, c) / ccdf(b, c)`` along ascending cutoffs, via log survival.

    A numerical witness only: :func:`classify_pair` never consults it.
    """
    c = np.asarray(cutoffs, dtype=float)
    if c.ndim != 1 or not np.all(np.isfinite(c)):
        raise InvalidRanges("cutoffs: expected a finite one-dimensional sequence")
    if np.any(np.diff(c) <= 0):
        raise InvalidRanges("cutoffs: must be strictly ascending")
    with np.errstate(over="ignore"):
        ratio = np.exp(np.asarray(log_ccdf(a, c)) - np.asarray(log_ccdf(b, c)))
    return [float(r) for r in ratio]


def select_dominator(specs: Sequence[DistributionSpec]) -> int:
    """Index of the normal that strongly dominates all others in the right tail.

    That is the largest standard deviation, ties broken by the largest mean.
    """
    specs = list(specs)
    if not specs:
        raise EmptyInput("specs: need at least one distribution")
    for i, spec in enumerate(specs):
        if not isinstance(spec, DistributionSpec) or spec.family is not Family.NORMAL:
            raise UnsupportedFamily(f"specs[{i}]: expected a normal distribution, got {spec}")
    seen: dict[DistributionSpec, int] = {}
    for i, spec in enumerate(specs):
        if spec in seen:
            raise DistributionsIdentical(f"specs[{seen[spec]}] and specs[{i}] are both {spec}")
        seen[spec] = i
    return max(range(len(specs)), key=lambda i: (specs[i].scale, specs[i].location))
