"""Finite measure spaces and their measurable-set algebra.

Two concrete families are supported, both with exactly computable measure:

* finite discrete spaces {0, ..., N-1}, whose nonnegative rational weights
  double as the measure;
* the half-open unit interval [0, 1), with finite unions of rational
  half-open intervals as measurable sets and step-function densities
  against length as measures.

Half-open intervals [a, b) are the only interval kind.  Finite unions are
then closed under complement within [0, 1) and single points are null, so
almost-everywhere statements need no separate null-set machinery.

Every value here is immutable after construction and every operation is
pure; instances may be shared freely.  Cross-space operations raise
SpaceMismatchError rather than coercing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

from .rationals import ONE, ZERO

__all__ = [
    "SpaceMismatchError",
    "OutsideDomainError",
    "UnitIntervalSpace",
    "UNIT_INTERVAL",
    "DiscreteSpace",
    "DiscreteSet",
    "IntervalSet",
    "IntervalMeasure",
    "MeasurableSet",
    "Measure",
    "Space",
    "space_of",
]


class SpaceMismatchError(ValueError):
    """Operands belong to different measure spaces."""


class OutsideDomainError(ValueError):
    """A point lies outside the sample space."""


@dataclass(frozen=True)
class UnitIntervalSpace:
    """The sample space [0, 1).  All instances are interchangeable."""

    def contains(self, point) -> bool:
        if isinstance(point, bool) or not isinstance(point, (int, Fraction)):
            return False
        return 0 <= point < 1

    def full_set(self) -> "IntervalSet":
        return IntervalSet([(ZERO, ONE)])

    def empty_set(self) -> "IntervalSet":
        return IntervalSet([])

    def __repr__(self) -> str:
        return "UnitIntervalSpace()"


UNIT_INTERVAL = UnitIntervalSpace()


@dataclass(frozen=True)
class DiscreteSpace:
    """{0, ..., N-1} with nonnegative rational weights; the weights are the measure."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coerced = tuple(Fraction(w) for w in self.weights)
        if not coerced:
            raise ValueError("a discrete space needs at least one point")
        if any(w < 0 for w in coerced):
            raise ValueError("weights must be nonnegative")
        object.__setattr__(self, "weights", coerced)

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def total_mass(self) -> Fraction:
        return sum(self.weights, ZERO)

    @property
    def space(self) -> "DiscreteSpace":
        return self

    def contains(self, point) -> bool:
        return isinstance(point, int) and not isinstance(point, bool) and 0 <= point < self.size

    def full_set(self) -> "DiscreteSet":
        return DiscreteSet(self, range(self.size))

    def empty_set(self) -> "DiscreteSet":
        return DiscreteSet(self, ())

    def measure_of(self, subset: "MeasurableSet") -> Fraction:
        if not isinstance(subset, DiscreteSet) or subset.space != self:
            raise SpaceMismatchError("set does not belong to this discrete space")
        return sum((self.weights[i] for i in subset.indices), ZERO)


class DiscreteSet:
    """Subset of a discrete space, stored as a strictly increasing index tuple."""

    def __init__(self, space: DiscreteSpace, indices: Iterable[int]):
        idx = sorted(set(indices))
        for i in idx:
            if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < space.size:
                raise ValueError(f"index {i!r} outside the space of size {space.size}")
        self.space = space
        self.indices: tuple[int, ...] = tuple(idx)

    @property
    def is_empty(self) -> bool:
        return not self.indices

    def contains(self, point) -> bool:
        if not self.space.contains(point):
            raise OutsideDomainError(f"point {point!r} outside the discrete space")
        return point in set(self.indices)

    def _require_same_space(self, other: "MeasurableSet") -> "DiscreteSet":
        if not isinstance(other, DiscreteSet) or other.space != self.space:
            raise SpaceMismatchError("sets belong to different spaces")
        return other

    def union(self, other: "MeasurableSet") -> "DiscreteSet":
        other = self._require_same_space(other)
        return DiscreteSet(self.space, set(self.indices) | set(other.indices))

    def intersection(self, other: "MeasurableSet") -> "DiscreteSet":
        other = self._require_same_space(other)
        return DiscreteSet(self.space, set(self.indices) & set(other.indices))

    def difference(self, other: "MeasurableSet") -> "DiscreteSet":
        other = self._require_same_space(other)
        return DiscreteSet(self.space, set(self.indices) - set(other.indices))

    def complement(self) -> "DiscreteSet":
        return DiscreteSet(self.space, set(range(self.space.size)) - set(self.indices))

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiscreteSet):
            return NotImplemented
        return self.space == other.space and self.indices == other.indices

    def __hash__(self) -> int:
        return hash((self.space, self.indices))

    def __repr__(self) -> str:
        return f"DiscreteSet({list(self.indices)})"


class IntervalSet:
    """Finite union of half-open intervals [a, b) within [0, 1).

    Always stored canonically: sorted, pairwise disjoint, adjacent runs
    merged.  Set equality is therefore structural equality.
    """

    def __init__(self, intervals: Iterable[tuple[Fraction, Fraction]]):
        cleaned = []
        for lo, hi in intervals:
            lo, hi = Fraction(lo), Fraction(hi)
            if not (0 <= lo <= hi <= 1):
                raise ValueError(f"interval [{lo}, {hi}) not inside [0, 1)")
            if lo < hi:  # degenerate [a, a) is empty and dropped
                cleaned.append((lo, hi))
        cleaned.sort()
        merged: list[tuple[Fraction, Fraction]] = []
        for lo, hi in cleaned:
            if merged and lo <= merged[-1][1]:
                last_lo, last_hi = merged[-1]
                merged[-1] = (last_lo, max(last_hi, hi))
            else:
                merged.append((lo, hi))
        self.intervals: tuple[tuple[Fraction, Fraction], ...] = tuple(merged)

    @property
    def space(self) -> UnitIntervalSpace:
        return UNIT_INTERVAL

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def total_length(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), ZERO)

    def contains(self, point) -> bool:
        if not UNIT_INTERVAL.contains(point):
            raise OutsideDomainError(f"point {point!r} outside [0, 1)")
        return any(lo <= point < hi for lo, hi in self.intervals)

    def endpoints(self) -> Iterator[Fraction]:
        for lo, hi in self.intervals:
            yield lo
            yield hi

    def _require_same_space(self, other: "MeasurableSet") -> "IntervalSet":
        if not isinstance(other, IntervalSet):
            raise SpaceMismatchError("sets belong to different spaces")
        return other

    def union(self, other: "MeasurableSet") -> "IntervalSet":
        other = self._require_same_space(other)
        return IntervalSet(self.intervals + other.intervals)

    def intersection(self, other: "MeasurableSet") -> "IntervalSet":
        other = self._require_same_space(other)
        out = []
        i = j = 0
        a, b = self.intervals, other.intervals
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] <= b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(out)

    def complement(self) -> "IntervalSet":
        out = []
        cursor = ZERO
        for lo, hi in self.intervals:
            if cursor < lo:
                out.append((cursor, lo))
            cursor = hi
        if cursor < 1:
            out.append((cursor, ONE))
        return IntervalSet(out)

    def difference(self, other: "MeasurableSet") -> "IntervalSet":
        return self.intersection(self._require_same_space(other).complement())

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.intervals == other.intervals

    def __hash__(self) -> int:
        return hash(self.intervals)

    def __repr__(self) -> str:
        parts = ", ".join(f"[{lo}, {hi})" for lo, hi in self.intervals)
        return f"IntervalSet({parts})" if parts else "IntervalSet(empty)"


@dataclass(frozen=True)
class IntervalMeasure:
    """Step-function density against length on [0, 1).

    The density is constant on each cell of the breakpoint grid; unit
    density on a single cell recovers Lebesgue measure.  Total mass is
    always a finite rational.
    """

    breakpoints: tuple[Fraction, ...]
    densities: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        bp = tuple(Fraction(t) for t in self.breakpoints)
        dens = tuple(Fraction(d) for d in self.densities)
        if len(bp) < 2 or bp[0] != 0 or bp[-1] != 1:
            raise ValueError("breakpoints must run from 0 to 1")
        if any(bp[i] >= bp[i + 1] for i in range(len(bp) - 1)):
            raise ValueError("breakpoints must be strictly increasing")
        if len(dens) != len(bp) - 1:
            raise ValueError("need one density per breakpoint cell")
        if any(d < 0 for d in dens):
            raise ValueError("densities must be nonnegative")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "densities", dens)

    @classmethod
    def lebesgue(cls) -> "IntervalMeasure":
        return cls((ZERO, ONE), (ONE,))

    @property
    def space(self) -> UnitIntervalSpace:
        return UNIT_INTERVAL

    @property
    def total_mass(self) -> Fraction:
        return sum(
            (d * (hi - lo) for (lo, hi, d) in self.density_cells()),
            ZERO,
        )

    def density_cells(self) -> Iterator[tuple[Fraction, Fraction, Fraction]]:
        for k, density in enumerate(self.densities):
            yield self.breakpoints[k], self.breakpoints[k + 1], density

    def measure_of(self, subset: "MeasurableSet") -> Fraction:
        if not isinstance(subset, IntervalSet):
            raise SpaceMismatchError("set does not belong to the interval space")
        total = ZERO
        for lo, hi in subset.intervals:
            for cell_lo, cell_hi, density in self.density_cells():
                overlap = min(hi, cell_hi) - max(lo, cell_lo)
                if overlap > 0 and density != 0:
                    total += density * overlap
        return total


MeasurableSet = Union[DiscreteSet, IntervalSet]
Measure = Union[DiscreteSpace, IntervalMeasure]
Space = Union[DiscreteSpace, UnitIntervalSpace]


def space_of(measure: Measure) -> Space:
    """The sample space a measure lives on."""
    if isinstance(measure, DiscreteSpace):
        return measure
    if isinstance(measure, IntervalMeasure):
        return UNIT_INTERVAL
    raise TypeError(f"not a measure: {measure!r}")
