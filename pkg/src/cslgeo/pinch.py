"""Pinching thresholds and a pointwise hypothesis classifier.

All thresholds are upper bounds on |B|^2 as functions of the dimension n and
(where applicable) h2 = |H|^2.  They are pure formulas; `classify` sweeps a
sample list and reports, per threshold, the minimum pointwise margin
threshold - |B|^2 and whether the hypothesis holds everywhere.

Thresholds take h2 rather than |H| so callers never pick a root sign; the
square root is taken internally where a formula genuinely needs |H|.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

from .errors import EmptySampleSet, InvalidParams, NonpositiveEpsilon, WrongDimension
from .geom import FundamentalData


def threshold_basic(n: int, h2: float) -> float:
    """Curvature-adapted bound: (n-1)(n+2)/n + c1(n) h2 - c2(n) |H| sqrt(4n + h2)."""
    return ((n - 1.0) * (n + 2.0) / n
            + (n * n + 3.0 * n - 2.0) / (2.0 * n * n) * h2
            - (n - 1.0) * (n - 2.0) * math.sqrt(h2) * math.sqrt(4.0 * n + h2)
            / (2.0 * n * n))


def threshold_eps(n: int, h2: float, eps: float) -> float:
    """One-parameter family of bounds; the eps-sup recovers threshold_basic."""
    if eps <= 0.0:
        raise NonpositiveEpsilon(f"eps must be positive, got {eps}")
    return ((n - 1.0) * (n + 2.0) / n
            - (n - 1.0) * (n - 2.0) * eps / n
            + ((n * n + 3.0 * n - 2.0) / (2.0 * n * n)
               - (n - 1.0) * (n - 2.0) * (eps + 1.0 / eps) / (4.0 * n * n)) * h2)


def threshold_main(n: int, h2: float) -> float:
    """Linear-in-h2 bound 4(n-1)/n + (3n-2)/n^2 h2.

    Evaluated by delegating to threshold_eps at eps = 1 so the two agree
    bit-for-bit; the closed form above is the algebraic reduction.
    """
    return threshold_eps(n, h2, 1.0)


def threshold_main1(n: int, h2: float) -> float:
    """Bound 2(n+1)/3 - (n-17)/(3(n+3)) h2; the h2 slope vanishes at n = 17."""
    return 2.0 * (n + 1.0) / 3.0 - (n - 17.0) / (3.0 * (n + 3.0)) * h2


def threshold_main3(n: int) -> float:
    """Minimal-case bound: 2(n+1)/3 for n <= 16, else 2(sqrt(3n-2) - 1).

    The two branch formulas agree exactly at n = 17 (both give 12).
    """
    if n <= 16:
        return 2.0 * (n + 1.0) / 3.0
    return 2.0 * (math.sqrt(3.0 * n - 2.0) - 1.0)


def threshold_tg(n: int, h2: float) -> float:
    """Sharper small-norm bound 2 + 3/(n+1) h2."""
    return 2.0 + 3.0 / (n + 1.0) * h2


def reference_constants(n: int, p: int) -> Dict[str, float]:
    """Classical comparison constants {simons: n/(2 - 1/p), lili: 2n/3}."""
    return {"simons": n / (2.0 - 1.0 / p), "lili": 2.0 * n / 3.0}


THRESHOLD_NAMES = ("basic", "main", "main1", "main3", "tg")


def _threshold_value(name: str, n: int, h2: float) -> float:
    if name == "basic":
        return threshold_basic(n, h2)
    if name == "main":
        return threshold_main(n, h2)
    if name == "main1":
        return threshold_main1(n, h2)
    if name == "main3":
        return threshold_main3(n)
    if name == "tg":
        return threshold_tg(n, h2)
    raise InvalidParams(f"unknown threshold name {name!r}")


@dataclass(frozen=True)
class ThresholdMargin:
    name: str
    pointwise_margin_min: float
    hypothesis_holds: bool


@dataclass(frozen=True)
class GapReport:
    """Aggregate of sampled curvature data against every threshold."""

    n: int
    sup_B2: float
    inf_H2: float
    sup_H2: float
    thresholds: Tuple[ThresholdMargin, ...]
    equality_points: int

    def entry(self, name: str) -> ThresholdMargin:
        for t in self.thresholds:
            if t.name == name:
                return t
        raise InvalidParams(f"no threshold named {name!r} in report")


def classify(samples: Sequence[FundamentalData], n: int,
             eq_tol: float = 1e-7) -> GapReport:
    """Evaluate every threshold hypothesis pointwise over the samples.

    hypothesis_holds means min margin >= -eq_tol; equality_points counts the
    samples sitting on the basic threshold to within eq_tol.  The reduction
    is sequential and order-independent (mins and counts only).
    """
    samples = list(samples)
    if not samples:
        raise EmptySampleSet("classify needs at least one sample")
    if eq_tol <= 0.0:
        raise InvalidParams(f"eq_tol must be positive, got {eq_tol}")
    for s in samples:
        if s.n != n:
            raise WrongDimension(f"sample has n = {s.n}, expected {n}")

    margins = {name: math.inf for name in THRESHOLD_NAMES}
    equality_points = 0
    for s in samples:
        for name in THRESHOLD_NAMES:
            m = _threshold_value(name, n, s.normH2) - s.normB2
            if m < margins[name]:
                margins[name] = m
        if abs(threshold_basic(n, s.normH2) - s.normB2) < eq_tol:
            equality_points += 1

    entries = tuple(
        ThresholdMargin(name=name, pointwise_margin_min=margins[name],
                        hypothesis_holds=margins[name] >= -eq_tol)
        for name in THRESHOLD_NAMES)
    return GapReport(n=n,
                     sup_B2=max(s.normB2 for s in samples),
                     inf_H2=min(s.normH2 for s in samples),
                     sup_H2=max(s.normH2 for s in samples),
                     thresholds=entries,
                     equality_points=equality_points)
