"""Crossing points of two normal densities."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distributions import DistributionSpec, Family
from .errors import DistributionsIdentical, UnsupportedFamily


@dataclass(frozen=True)
class IntersectionResult:
    points: tuple[float, ...]

    def to_dict(self) -> dict:
        return {"points": list(self.points)}


def intersect_normals(a: DistributionSpec, b: DistributionSpec) -> IntersectionResult:
    """Points where the densities of two different normals are equal.

    Equal standard deviations give the single midpoint of the means; otherwise
    ``log f_a - log f_b`` is a quadratic with two real roots. The roots are
    taken in coordinates centered on one mean with the cancellation-free
    quadratic formula, so nearly equal standard deviations keep full accuracy
    in the finite root while the other one runs off to infinity.
    """
    for name, spec in (("a", a), ("b", b)):
        if not isinstance(spec, DistributionSpec) or spec.family is not Family.NORMAL:
            raise UnsupportedFamily(f"{name}: intersect_normals needs normal distributions, got {spec}")
    if a == b:
        raise DistributionsIdentical(f"{a} and {b} are the same distribution")

    if a.scale == b.scale:
        return IntersectionResult((0.5 * (a.location + b.location),))

    # canonical order makes the result exactly symmetric in (a, b)
    p, q = sorted((a, b), key=lambda s: (s.scale, s.location))
    s1, s2 = p.scale, q.scale
    d = q.location - p.location

    # In y = x - m_p:  A y^2 + 2 H y + C = 0 with
    #   A = s1^2 - s2^2,  H = -s1^2 d,  C = s1^2 (d^2 - 2 s2^2 log(s1/s2))
    log_ratio = math.log1p((s1 - s2) / s2)
    A = (s1 - s2) * (s1 + s2)
    H = -s1 * s1 * d
    C = s1 * s1 * (d * d - 2.0 * s2 * s2 * log_ratio)
    # H^2 - A C simplifies to s1^2 s2^2 (d^2 + 2 A log(s1/s2)); both terms >= 0
    root_disc = s1 * s2 * math.sqrt(d * d + 2.0 * A * log_ratio)

    big = -(H + math.copysign(root_disc, H))
    y1 = big / A
    y2 = C / big
    return IntersectionResult(tuple(sorted((p.location + y1, p.location + y2))))
