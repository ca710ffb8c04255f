"""Simple functions: finite combinations value * indicator with pairwise-
disjoint sets over one space.

Values are scalars (Fraction) or fixed-dimension rational vectors (Vec).
A function keeps whatever pairwise-disjoint representation it was built
with; points not covered by any term map to zero.  `canonical()` computes
the unique normal form: distinct values, nonempty sets, and sets that
partition the whole space, a zero-value term padding the complement when
needed.  Equality compares canonical forms, so different representations
of the same function compare equal while their integrals must also agree
(tested as the coherence property).
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

from .rationals import ZERO
from .spaces import (
    Measure,
    MeasurableSet,
    OutsideDomainError,
    Space,
    SpaceMismatchError,
    space_of,
)

__all__ = [
    "Vec",
    "NormKind",
    "SimpleFunction",
    "integrate_simple",
]


class NormKind(Enum):
    """Vector norms that stay rational on rational vectors."""

    L1 = "L1"
    LINF = "LInf"


@dataclass(frozen=True)
class Vec:
    """Immutable rational vector of fixed dimension d >= 1."""

    components: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coerced = tuple(Fraction(c) for c in self.components)
        if not coerced:
            raise ValueError("a vector needs at least one component")
        object.__setattr__(self, "components", coerced)

    @classmethod
    def zero(cls, dim: int) -> "Vec":
        return cls((ZERO,) * dim)

    @property
    def dim(self) -> int:
        return len(self.components)

    def _check_dim(self, other: "Vec") -> None:
        if self.dim != other.dim:
            raise ValueError("vector dimensions differ")

    def __add__(self, other: "Vec") -> "Vec":
        self._check_dim(other)
        return Vec(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "Vec") -> "Vec":
        self._check_dim(other)
        return Vec(tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "Vec":
        return Vec(tuple(-a for a in self.components))

    def scale(self, factor: Fraction) -> "Vec":
        return Vec(tuple(a * factor for a in self.components))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.components)

    def norm(self, kind: NormKind) -> Fraction:
        if kind is NormKind.L1:
            return sum((abs(c) for c in self.components), ZERO)
        return max(abs(c) for c in self.components)

    def __repr__(self) -> str:
        return f"Vec({', '.join(str(c) for c in self.components)})"


Value = Union[Fraction, Vec]


def _zero_value(dim: Optional[int]) -> Value:
    return ZERO if dim is None else Vec.zero(dim)


def _value_is_zero(value: Value) -> bool:
    return value.is_zero if isinstance(value, Vec) else value == 0


def _scale_value(value: Value, factor: Fraction) -> Value:
    return value.scale(factor) if isinstance(value, Vec) else value * factor


def _value_norm(value: Value, kind: Optional[NormKind]) -> Fraction:
    if isinstance(value, Vec):
        if kind is None:
            raise ValueError("a NormKind is required for vector values")
        return value.norm(kind)
    return abs(value)


def _value_key(value: Value):
    return value.components if isinstance(value, Vec) else value


class SimpleFunction:
    """One pairwise-disjoint representation of a simple function."""

    def __init__(
        self,
        space: Space,
        terms: Iterable[tuple[Value, MeasurableSet]],
        dim: Optional[int] = None,
    ):
        term_list: list[tuple[Value, MeasurableSet]] = []
        for value, part in terms:
            if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
                value = Fraction(value)
            if part.space != space:
                raise SpaceMismatchError("term set belongs to another space")
            term_list.append((value, part))
        self.space = space
        self.dim = self._resolve_dim(term_list, dim)
        self._check_pairwise_disjoint(term_list)
        self.terms: tuple[tuple[Value, MeasurableSet], ...] = tuple(term_list)
        self._canonical: Optional["SimpleFunction"] = None

    @staticmethod
    def _resolve_dim(terms, dim: Optional[int]) -> Optional[int]:
        dims = {value.dim if isinstance(value, Vec) else None for value, _ in terms}
        if len(dims) > 1:
            raise ValueError("all term values must be scalars or vectors of one dimension")
        if not dims:
            return dim
        inferred = dims.pop()
        if inferred is None:
            if dim is not None:
                raise ValueError("declared a vector dimension but the values are scalar")
            return None
        if dim is not None and inferred != dim:
            raise ValueError("declared dimension disagrees with the values")
        return inferred

    @staticmethod
    def _check_pairwise_disjoint(terms) -> None:
        for i in range(len(terms)):
            for j in range(i + 1, len(terms)):
                if not terms[i][1].intersection(terms[j][1]).is_empty:
                    raise ValueError("term sets must be pairwise disjoint")

    @classmethod
    def _trusted(cls, space, terms, dim) -> "SimpleFunction":
        # Construction from cells already known to be pairwise disjoint.
        fn = cls.__new__(cls)
        fn.space = space
        fn.dim = dim
        fn.terms = tuple(terms)
        fn._canonical = None
        return fn

    @classmethod
    def zero(cls, space: Space, dim: Optional[int] = None) -> "SimpleFunction":
        return cls(space, [], dim)

    @classmethod
    def indicator(cls, value: Value, over: MeasurableSet) -> "SimpleFunction":
        """value * 1_over on the set's own space."""
        return cls(over.space, [(value, over)])

    @property
    def is_vector(self) -> bool:
        return self.dim is not None

    def _zero(self) -> Value:
        return _zero_value(self.dim)

    def _require_scalar(self, what: str) -> None:
        if self.is_vector:
            raise ValueError(f"{what} requires scalar values")

    def _require_compatible(self, other: "SimpleFunction") -> None:
        if not isinstance(other, SimpleFunction) or other.space != self.space:
            raise SpaceMismatchError("functions live on different spaces")
        if other.dim != self.dim:
            raise ValueError("functions have different value dimensions")

    def evaluate(self, point) -> Value:
        """Value at a point of the space; zero off every term set."""
        if not self.space.contains(point):
            raise OutsideDomainError(f"point {point!r} outside the space")
        for value, part in self.terms:
            if part.contains(point):
                return value
        return self._zero()

    def canonical(self) -> "SimpleFunction":
        """The unique representation: distinct values, sets partitioning the space."""
        if self._canonical is not None:
            return self._canonical
        groups: dict = {}
        for value, part in self.terms:
            key = _value_key(value)
            if _value_is_zero(value) or part.is_empty:
                continue
            if key in groups:
                groups[key] = (value, groups[key][1].union(part))
            else:
                groups[key] = (value, part)
        covered = self.space.empty_set()
        for _, part in groups.values():
            covered = covered.union(part)
        rest = covered.complement()
        terms = [groups[key] for key in groups]
        if not rest.is_empty:
            terms.append((self._zero(), rest))
        terms.sort(key=lambda term: _value_key(term[0]))
        result = SimpleFunction._trusted(self.space, terms, self.dim)
        result._canonical = result
        self._canonical = result
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimpleFunction):
            return NotImplemented
        if self.space != other.space or self.dim != other.dim:
            return False
        return self.canonical().terms == other.canonical().terms

    __hash__ = None  # representations are mutable-by-construction keys; do not hash

    def _map_values(self, fn: Callable[[Value], Value], dim: Optional[int]) -> "SimpleFunction":
        # Valid whenever fn(0) == 0, so the implicit off-support zero is preserved.
        return SimpleFunction._trusted(
            self.space, [(fn(v), s) for v, s in self.terms], dim
        )

    def _combine(self, other: "SimpleFunction", op) -> "SimpleFunction":
        """Pointwise binary op on the common refinement of both canonical partitions."""
        self._require_compatible(other)
        terms = []
        for v, a in self.canonical().terms:
            for w, b in other.canonical().terms:
                cell = a.intersection(b)
                if not cell.is_empty:
                    terms.append((op(v, w), cell))
        return SimpleFunction._trusted(self.space, terms, self.dim)

    def __add__(self, other: "SimpleFunction") -> "SimpleFunction":
        return self._combine(other, operator.add)

    def __sub__(self, other: "SimpleFunction") -> "SimpleFunction":
        return self._combine(other, operator.sub)

    def __neg__(self) -> "SimpleFunction":
        return self._map_values(operator.neg, self.dim)

    def scale(self, factor: Fraction) -> "SimpleFunction":
        factor = Fraction(factor)
        return self._map_values(lambda v: _scale_value(v, factor), self.dim)

    def pointwise_max(self, other: "SimpleFunction") -> "SimpleFunction":
        self._require_scalar("pointwise max")
        return self._combine(other, max)

    def pointwise_min(self, other: "SimpleFunction") -> "SimpleFunction":
        self._require_scalar("pointwise min")
        return self._combine(other, min)

    def __abs__(self) -> "SimpleFunction":
        self._require_scalar("absolute value")
        return self._map_values(abs, None)

    def pos_part(self) -> "SimpleFunction":
        """max(0, f); with neg_part it gives f = f+ - f-, |f| = f+ + f-."""
        self._require_scalar("positive part")
        return self._map_values(lambda v: max(v, ZERO), None)

    def neg_part(self) -> "SimpleFunction":
        """max(0, -f)."""
        self._require_scalar("negative part")
        return self._map_values(lambda v: max(-v, ZERO), None)

    def norm_function(self, kind: Optional[NormKind] = None) -> "SimpleFunction":
        """The scalar function point -> ||f(point)|| (abs for scalar values)."""
        return self._map_values(lambda v: _value_norm(v, kind), None)

    def support(self) -> MeasurableSet:
        """Union of the sets carrying a nonzero value."""
        out = self.space.empty_set()
        for value, part in self.terms:
            if not _value_is_zero(value):
                out = out.union(part)
        return out

    def component(self, index: int) -> "SimpleFunction":
        """Scalar component of a vector-valued function."""
        if not self.is_vector:
            raise ValueError("component() needs vector values")
        return self._map_values(lambda v: v.components[index], None)

    def __repr__(self) -> str:
        inner = " + ".join(f"{v}*1_{s!r}" for v, s in self.terms) or "0"
        return f"SimpleFunction({inner})"


def integrate_simple(fn: SimpleFunction, measure: Measure) -> Value:
    """Integral of a simple function: sum of value * measure(set) over terms.

    Representation independent (the coherence property); componentwise for
    vector values; a zero value contributes nothing whatever its set's mass.
    """
    if space_of(measure) != fn.space:
        raise SpaceMismatchError("function and measure live on different spaces")
    total = _zero_value(fn.dim)
    for value, part in fn.terms:
        if not _value_is_zero(value):
            total = total + _scale_value(value, measure.measure_of(part))
    return total
