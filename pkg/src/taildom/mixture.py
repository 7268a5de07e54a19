"""Representation of subpopulations above a cutoff in a mixed population.

A population is a list of disjoint groups with positive sizes ``S_i`` and
trait distributions ``P_i``. Above a cutoff ``c`` group ``i`` contributes
``S_i * ccdf_i(c)`` individuals; its share is that mass over the total. All
shares are computed from log survival values, so they stay exact after every
individual tail mass has underflowed.
"""

from __future__ import annotations

import math
import sys
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import logsumexp

from . import distributions as dist
from .distributions import DistributionSpec
from .errors import (
    CutoffUnderflow,
    InvalidModel,
    InvalidProbability,
    InvalidRanges,
    NoExceedances,
    RequiresTwoGroups,
)
from .rootfind import safeguarded_newton


@dataclass(frozen=True)
class Subpopulation:
    label: str
    size: float
    dist: DistributionSpec

    def __post_init__(self):
        if not isinstance(self.label, str) or not self.label:
            raise InvalidModel(f"label: must be a non-empty string, got {self.label!r}")
        size = self.size
        if isinstance(size, bool) or not isinstance(size, (int, float, np.integer, np.floating)):
            raise InvalidModel(f"size: expected a number, got {size!r}")
        if not (math.isfinite(size) and size > 0):
            raise InvalidModel(f"size: must be finite and > 0, got {size!r}")
        if not isinstance(self.dist, DistributionSpec):
            raise InvalidModel(f"dist: expected a DistributionSpec, got {type(self.dist).__name__}")
        object.__setattr__(self, "size", float(size))

    def to_dict(self) -> dict:
        return {"label": self.label, "size": self.size, "dist": self.dist.to_dict()}


@dataclass(frozen=True)
class PopulationModel:
    groups: tuple[Subpopulation, ...]

    def __post_init__(self):
        groups = tuple(self.groups)
        if not groups:
            raise InvalidModel("subpopulations: need at least one group")
        labels = [g.label for g in groups]
        for i, label in enumerate(labels):
            if label in labels[:i]:
                raise InvalidModel(f"subpopulations[{i}].label: duplicate label {label!r}")
        object.__setattr__(self, "groups", groups)

    @classmethod
    def of(cls, *groups: tuple[str, float, DistributionSpec]) -> PopulationModel:
        """Shorthand: ``PopulationModel.of(("X1", 1, normal(100, 10)), ...)``."""
        return cls(tuple(Subpopulation(*g) for g in groups))

    @property
    def labels(self) -> list[str]:
        return [g.label for g in self.groups]

    @property
    def sizes(self) -> np.ndarray:
        return np.array([g.size for g in self.groups])

    @property
    def total_size(self) -> float:
        return float(self.sizes.sum())

    def to_dict(self) -> dict:
        return {"subpopulations": [g.to_dict() for g in self.groups]}

    @classmethod
    def from_dict(cls, data) -> PopulationModel:
        if not isinstance(data, dict) or "subpopulations" not in data:
            raise InvalidModel("subpopulations: missing")
        raw = data["subpopulations"]
        if not isinstance(raw, list):
            raise InvalidModel("subpopulations: expected a list")
        groups = []
        for i, item in enumerate(raw):
            path = f"subpopulations[{i}]"
            if not isinstance(item, dict):
                raise InvalidModel(f"{path}: expected an object")
            for key in ("label", "size", "dist"):
                if key not in item:
                    raise InvalidModel(f"{path}.{key}: missing")
            spec = DistributionSpec.from_dict(item["dist"], path=f"{path}.dist")
            try:
                groups.append(Subpopulation(item["label"], item["size"], spec))
            except InvalidModel as exc:
                raise InvalidModel(f"{path}.{exc}") from None
        return cls(tuple(groups))


@dataclass(frozen=True)
class GroupShare:
    label: str
    tail_mass: float
    share: float
    log_tail_mass: float


@dataclass(frozen=True)
class TailShareReport:
    cutoff: float
    groups: tuple[GroupShare, ...]
    dominant_label: str
    top_fraction: float | None = None

    @property
    def shares(self) -> dict[str, float]:
        return {g.label: g.share for g in self.groups}

    def to_dict(self) -> dict:
        out = {
            "cutoff": self.cutoff,
            "top_fraction": self.top_fraction,
            "dominant_label": self.dominant_label,
            "groups": [
                {
                    "label": g.label,
                    "tail_mass": g.tail_mass,
                    "log_tail_mass": g.log_tail_mass,
                    "share": g.share,
                }
                for g in self.groups
            ],
        }
        return out


def _check_model(model) -> PopulationModel:
    if not isinstance(model, PopulationModel):
        raise InvalidModel(f"expected a PopulationModel, got {type(model).__name__}")
    return model


def _log_masses(model: PopulationModel, c) -> np.ndarray:
    """``log(S_i * ccdf_i(c))``, groups along the first axis."""
    return np.array(
        [math.log(g.size) + np.asarray(dist.log_ccdf(g.dist, c)) for g in model.groups]
    )


def log_mixture_ccdf(model: PopulationModel, c):
    """Log of the fraction of the whole population above ``c``."""
    model = _check_model(model)
    out = logsumexp(_log_masses(model, c), axis=0) - math.log(model.total_size)
    return float(out) if np.ndim(out) == 0 else out


def mixture_ccdf(model: PopulationModel, c):
    out = np.exp(log_mixture_ccdf(model, c))
    return float(out) if np.ndim(out) == 0 else out


def tail_share(model: PopulationModel, c: float) -> TailShareReport:
    """Each group's share of everyone above ``c``, in model order.

    Ties for the largest share go to the earliest group.
    """
    model = _check_model(model)
    c = float(c)
    if not math.isfinite(c):
        raise InvalidModel(f"cutoff: must be finite, got {c!r}")
    log_mass = _log_masses(model, c)
    shares = np.exp(log_mass - logsumexp(log_mass))
    shares /= shares.sum()
    groups = tuple(
        GroupShare(g.label, float(math.exp(lm)), float(s), float(lm))
        for g, lm, s in zip(model.groups, log_mass, shares)
    )
    dominant = model.groups[int(np.argmax(shares))].label
    return TailShareReport(c, groups, dominant)


def _cutoff_objective(c, log_q, model):
    # increasing in c: log q - log M(c); derivative = mixture pdf / M(c)
    log_m = _log_masses(model, c)
    log_f = np.array([math.log(g.size) + np.asarray(dist.log_pdf(g.dist, c)) for g in model.groups])
    log_tail = logsumexp(log_m, axis=0)
    return log_q - (log_tail - math.log(model.total_size)), np.exp(logsumexp(log_f, axis=0) - log_tail)


def top_fraction_cutoff(model: PopulationModel, q: float) -> float:
    """The cutoff above which a fraction ``q`` of the whole population lies.

    Newton's method on the log of the mixture survival function, kept inside
    a bracket built from the groups' own upper quantiles.
    """
    model = _check_model(model)
    if not (isinstance(q, (int, float, np.floating)) and 0 < q < 1):
        raise InvalidProbability(f"top: must lie strictly between 0 and 1, got {q!r}")
    q = float(q)
    if q < sys.float_info.min:
        raise CutoffUnderflow(f"top fraction {q!r} is subnormal; no cutoff can be resolved")
    n = len(model.groups)
    with np.errstate(divide="ignore", over="ignore"):
        lo = min(dist.isf(g.dist, q) for g in model.groups)
        hi = max(dist.isf(g.dist, q / n) for g in model.groups)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise CutoffUnderflow(f"top fraction {q!r} lies beyond the representable range")
    if lo == hi:
        return lo
    log_q = math.log(q)
    c = safeguarded_newton(
        lambda x: _cutoff_objective(x, log_q, model), lo, hi, 0.5 * (lo + hi)
    )
    return float(c)


def top_fraction_shares(model: PopulationModel, q: float) -> TailShareReport:
    """Group shares among the top fraction ``q`` of the whole population."""
    c = top_fraction_cutoff(model, q)
    report = tail_share(model, c)
    return TailShareReport(report.cutoff, report.groups, report.dominant_label, float(q))


@dataclass(frozen=True)
class RangeRow:
    low: float
    high: float
    mass_1: float
    mass_2: float
    ratio: float
    adjusted_ratio: float

    def to_dict(self) -> dict:
        return {
            "range_low": self.low,
            "range_high": self.high,
            "mass_1": self.mass_1,
            "mass_2": self.mass_2,
            "ratio": self.ratio,
            "adjusted_ratio": self.adjusted_ratio,
        }


def range_ratio_table(model: PopulationModel, boundaries: Sequence[float]) -> list[RangeRow]:
    """Group masses in ``[b_k, b_{k+1})`` and ``[b_last, inf)`` with their ratios.

    ``ratio`` compares head counts (group 1 over group 2); ``adjusted_ratio``
    divides out the group sizes, giving the per-capita comparison.
    """
    model = _check_model(model)
    if len(model.groups) != 2:
        raise RequiresTwoGroups(f"range table needs exactly 2 groups, got {len(model.groups)}")
    b = np.asarray(boundaries, dtype=float)
    if b.ndim != 1 or b.size < 1:
        raise InvalidRanges("boundaries: need at least one boundary")
    if not np.all(np.isfinite(b)):
        raise InvalidRanges("boundaries: must be finite")
    if np.any(np.diff(b) <= 0):
        raise InvalidRanges("boundaries: must be strictly ascending")

    g1, g2 = model.groups
    edges = np.append(b, np.inf)
    sf1 = np.asarray(dist.ccdf(g1.dist, edges))
    sf2 = np.asarray(dist.ccdf(g2.dist, edges))
    mass1 = g1.size * (sf1[:-1] - sf1[1:])
    mass2 = g2.size * (sf2[:-1] - sf2[1:])
    rows = []
    for k in range(b.size):
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = float(np.float64(mass1[k]) / np.float64(mass2[k]))
        rows.append(
            RangeRow(
                float(edges[k]), float(edges[k + 1]), float(mass1[k]), float(mass2[k]),
                ratio, ratio * (g2.size / g1.size),
            )
        )
    return rows


@dataclass(frozen=True)
class SimulatedGroup:
    label: str
    samples: int
    exceedances: int
    share: float
    stderr: float


@dataclass(frozen=True)
class SimulationReport:
    cutoff: float
    seed: int
    samples_per_unit_size: int
    total_exceedances: int
    groups: tuple[SimulatedGroup, ...]

    def to_dict(self) -> dict:
        return {
            "cutoff": self.cutoff,
            "seed": self.seed,
            "samples_per_unit_size": self.samples_per_unit_size,
            "total_exceedances": self.total_exceedances,
            "groups": [
                {
                    "label": g.label,
                    "samples": g.samples,
                    "exceedances": g.exceedances,
                    "share": g.share,
                    "stderr": g.stderr,
                }
                for g in self.groups
            ],
        }


_CHUNK = 1 << 20


def _open_uniforms(rng: np.random.Generator, n: int) -> np.ndarray:
    # midpoints of a 2^-53 grid: strictly inside (0, 1) and symmetric
    return (rng.integers(0, 1 << 53, size=n, dtype=np.int64) + 0.5) * 2.0**-53


def simulate_tail_share(
    model: PopulationModel, c: float, samples_per_unit_size: int, seed: int
) -> SimulationReport:
    """Monte Carlo estimate of the group shares above ``c``.

    Group ``i`` gets ``round(S_i * samples_per_unit_size)`` variates (half to
    even) drawn by inverse transform from its own substream of ``seed``, so the
    result is reproducible and independent of group order. Standard errors are
    binomial, conditional on the number of exceedances.
    """
    model = _check_model(model)
    if isinstance(samples_per_unit_size, bool) or int(samples_per_unit_size) != samples_per_unit_size \
            or samples_per_unit_size < 1:
        raise InvalidModel(f"samples: must be a positive integer, got {samples_per_unit_size!r}")
    c = float(c)
    if not math.isfinite(c):
        raise InvalidModel(f"cutoff: must be finite, got {c!r}")
    samples_per_unit_size = int(samples_per_unit_size)

    streams = np.random.SeedSequence(seed).spawn(len(model.groups))
    counts, hits = [], []
    for group, stream in zip(model.groups, streams):
        rng = np.random.default_rng(stream)
        n = round(group.size * samples_per_unit_size)
        exceed = 0
        for start in range(0, n, _CHUNK):
            u = _open_uniforms(rng, min(_CHUNK, n - start))
            exceed += int(np.count_nonzero(dist.quantile(group.dist, u) > c))
        counts.append(n)
        hits.append(exceed)

    total = sum(hits)
    if total == 0:
        warnings.warn(f"no variates exceeded the cutoff {c!r}", NoExceedances, stacklevel=2)
    groups = []
    for group, n, h in zip(model.groups, counts, hits):
        if total:
            share = h / total
            stderr = math.sqrt(share * (1.0 - share) / total)
        else:
            share = stderr = math.nan
        groups.append(SimulatedGroup(group.label, n, h, share, stderr))
    return SimulationReport(c, int(seed), samples_per_unit_size, total, tuple(groups))
