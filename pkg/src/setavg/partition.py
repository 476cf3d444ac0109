"""Partition of the union of interval sets and the partition average.

The partition of the union decomposes the union of sets A_0..A_n into
regions, each labelled by the subset of indices of the sets covering it.
The partition average takes, from each region, a subset whose measure is
the region measure scaled by the summed weights of the covering sets; the
subset is cut by a metric ball growing around a reference point, so the
whole construction stays exact over the rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .intervals import (
    EMPTY,
    IntervalSet,
    canonicalize,
    centroid,
    measure,
    sym_diff_distance,
)

Signature = frozenset


@dataclass(frozen=True)
class PartitionElement:
    signature: frozenset[int]
    region: IntervalSet


@dataclass(frozen=True)
class Partition:
    sets: tuple[IntervalSet, ...]
    elements: tuple[PartitionElement, ...]


@dataclass(frozen=True)
class AverageConfig:
    """Reference-point policy for the ball-based subset generator.

    kind is one of "centroid" (centroid of the union of all averaged sets,
    shared by every partition element), "fixed" (a user-supplied point), or
    "per-element" (centroid of each region separately).
    """

    kind: str = "centroid"
    point: Fraction | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("centroid", "fixed", "per-element"):
            raise ValueError(f"unknown reference-point kind: {self.kind!r}")
        if self.kind == "fixed" and self.point is None:
            raise ValueError("fixed reference point requires a value")


CENTROID_OF_UNION = AverageConfig("centroid")
PER_ELEMENT_CENTROID = AverageConfig("per-element")


def fixed_point(p) -> AverageConfig:
    return AverageConfig("fixed", Fraction(p))


def check_weights(weights: Sequence[Fraction]) -> tuple[Fraction, ...]:
    w = tuple(Fraction(x) for x in weights)
    if any(x < 0 for x in w):
        raise ValueError("weights must be nonnegative")
    if sum(w) != 1:
        raise ValueError(f"weights must sum to 1 exactly, got {sum(w)}")
    return w


def partition_of_union(sets: Sequence[IntervalSet]) -> Partition:
    """Sweep over sorted interval endpoints; each elementary segment gets
    the signature of the sets containing its midpoint.  Segments sharing a
    signature are grouped into one canonical region.  Empty signatures
    (the complement of the union) are never materialized."""
    sets = tuple(sets)
    if not sets:
        raise ValueError("partition of an empty collection of sets")
    breakpoints = sorted({e for s in sets for a, b in s.intervals for e in (a, b)})
    by_signature: dict[frozenset[int], list[tuple[Fraction, Fraction]]] = {}
    for lo, hi in zip(breakpoints, breakpoints[1:]):
        mid = (lo + hi) / 2
        sig = frozenset(i for i, s in enumerate(sets) if mid in s)
        if sig:
            by_signature.setdefault(sig, []).append((lo, hi))
    elements = tuple(
        PartitionElement(sig, canonicalize(segs))
        for sig, segs in sorted(by_signature.items(), key=lambda kv: sorted(kv[0]))
    )
    return Partition(sets, elements)


def coverage_values(
    partition: Partition, weights: Sequence[Fraction]
) -> list[tuple[frozenset[int], Fraction]]:
    """Per-element coverage: the summed weight of the covering sets."""
    w = tuple(Fraction(x) for x in weights)
    if len(w) != len(partition.sets):
        raise ValueError("one weight per input set required")
    return [
        (el.signature, sum((w[i] for i in el.signature), Fraction(0)))
        for el in partition.elements
    ]


def subset_generate(a: IntervalSet, t, p) -> IntervalSet:
    """Subset of a with measure exactly t*mu(a), cut by the smallest closed
    ball around p achieving that measure.

    The map r -> mu([p-r, p+r] & a) is piecewise linear with breakpoints at
    the distances from p to the interval endpoints, so the minimal radius is
    found exactly by walking the breakpoints and inverting one linear piece.
    """
    t, p = Fraction(t), Fraction(p)
    if not (0 <= t <= 1):
        raise ValueError(f"t must lie in [0, 1], got {t}")
    if a.is_empty or t == 0:
        return EMPTY
    target = t * measure(a)

    def covered(r: Fraction) -> Fraction:
        lo, hi = p - r, p + r
        total = Fraction(0)
        for x0, x1 in a.intervals:
            total += max(Fraction(0), min(x1, hi) - max(x0, lo))
        return total

    radii = sorted({abs(e - p) for x0, x1 in a.intervals for e in (x0, x1)} | {Fraction(0)})
    prev_r, prev_m = radii[0], covered(radii[0])
    r = None
    if prev_m >= target:
        r = prev_r
    else:
        for cand in radii[1:]:
            m = covered(cand)
            if m >= target:
                slope = (m - prev_m) / (cand - prev_r)
                r = prev_r + (target - prev_m) / slope
                break
            prev_r, prev_m = cand, m
    assert r is not None, "target measure exceeds the measure of the set"
    clipped = [
        (max(x0, p - r), min(x1, p + r))
        for x0, x1 in a.intervals
        if min(x1, p + r) > max(x0, p - r)
    ]
    return canonicalize(clipped)


def partition_average(
    sets: Sequence[IntervalSet],
    weights: Sequence[Fraction],
    cfg: AverageConfig = CENTROID_OF_UNION,
) -> IntervalSet:
    """Weighted average of interval sets built on the partition of the union."""
    sets = tuple(sets)
    w = check_weights(weights)
    if len(sets) != len(w):
        raise ValueError("need exactly one weight per set")
    all_union = canonicalize([iv for s in sets for iv in s.intervals])
    if all_union.is_empty:
        return EMPTY
    part = partition_of_union(sets)
    # common-denominator numerators keep per-element coverage sums in int
    # arithmetic; with many sets (large operator degrees) this dominates
    denom = math.lcm(*(x.denominator for x in w))
    nums = [x.numerator * (denom // x.denominator) for x in w]
    shared_p = None
    if cfg.kind != "per-element":
        shared_p = cfg.point if cfg.kind == "fixed" else centroid(all_union)
    pieces = []
    for el in part.elements:
        t = Fraction(sum(nums[i] for i in el.signature), denom)
        p = centroid(el.region) if shared_p is None else shared_p
        pieces.extend(subset_generate(el.region, t, p).intervals)
    return canonicalize(pieces)


def partition_expectation(
    sets: Sequence[IntervalSet],
    weights: Sequence[Fraction],
    cfg: AverageConfig = CENTROID_OF_UNION,
) -> IntervalSet:
    """Expectation of a discrete random set: the partition average with the
    point probabilities as weights."""
    return partition_average(sets, weights, cfg)


def expected_pairwise_distance(
    sets: Sequence[IntervalSet],
    weights_a: Sequence[Fraction],
    weights_b: Sequence[Fraction],
) -> Fraction:
    """E(d(X1, X2)) for independent discrete random sets over the same
    collection: the double sum of pairwise distances weighted by the product
    distribution."""
    wa, wb = check_weights(weights_a), check_weights(weights_b)
    if len(wa) != len(sets) or len(wb) != len(sets):
        raise ValueError("weight/set length mismatch")
    total = Fraction(0)
    n = len(sets)
    dist = {}
    for i in range(n):
        for j in range(n):
            if wa[i] == 0 or wb[j] == 0:
                continue
            key = (i, j) if i <= j else (j, i)
            if key not in dist:
                dist[key] = sym_diff_distance(sets[key[0]], sets[key[1]])
            total += wa[i] * wb[j] * dist[key]
    return total


def expected_pairwise_distance_integral(
    sets: Sequence[IntervalSet],
    weights_a: Sequence[Fraction],
    weights_b: Sequence[Fraction],
) -> Fraction:
    """Same expectation computed as the integral of the coverage-function
    expression a(1-b) + b(1-a) over the partition elements; must agree
    exactly with the double-sum form."""
    wa, wb = check_weights(weights_a), check_weights(weights_b)
    part = partition_of_union(sets)
    total = Fraction(0)
    for el in part.elements:
        a = sum((wa[i] for i in el.signature), Fraction(0))
        b = sum((wb[i] for i in el.signature), Fraction(0))
        total += (a * (1 - b) + b * (1 - a)) * measure(el.region)
    return total


def average_distance_integral(
    sets: Sequence[IntervalSet],
    weights_a: Sequence[Fraction],
    weights_b: Sequence[Fraction],
) -> Fraction:
    """d(avg_a, avg_b) computed as the integral of the absolute coverage
    difference over the partition elements.  Equals the distance between the
    two partition averages when both use the same reference-point config."""
    wa, wb = check_weights(weights_a), check_weights(weights_b)
    part = partition_of_union(sets)
    total = Fraction(0)
    for el in part.elements:
        a = sum((wa[i] for i in el.signature), Fraction(0))
        b = sum((wb[i] for i in el.signature), Fraction(0))
        total += abs(a - b) * measure(el.region)
    return total
