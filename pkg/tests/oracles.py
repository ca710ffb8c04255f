"""Independent integration oracles for the tests.

These deliberately avoid the library's closed-form integration paths: they
only call `evaluate` pointwise.  Midpoint quadrature on a grid refined by
every breakpoint is exact for integrands that are affine (or constant) per
cell, which covers both integrand classes here; discrete spaces are
integrated by full enumeration.
"""

from __future__ import annotations

from fractions import Fraction

from exactintegral import (
    DiscreteSpace,
    IntervalMeasure,
    PiecewiseLinear,
    SimpleFunction,
    Vec,
)

ZERO = Fraction(0)


def _interval_grid(fn, measure: IntervalMeasure) -> list[Fraction]:
    points = set(measure.breakpoints)
    if isinstance(fn, PiecewiseLinear):
        points.update(fn.breakpoints)
    else:
        for _, part in fn.terms:
            points.update(part.endpoints())
    points.update((ZERO, Fraction(1)))
    return sorted(points)


def _density_at(measure: IntervalMeasure, x: Fraction) -> Fraction:
    for lo, hi, d in measure.density_cells():
        if lo <= x < hi:
            return d
    raise AssertionError(f"no density cell contains {x}")


def integral_oracle(fn, measure):
    """Integral by enumeration (discrete) or exact midpoint quadrature (interval)."""
    if isinstance(measure, DiscreteSpace):
        total = None
        for point in range(measure.size):
            contribution = _scale(fn.evaluate(point), measure.weights[point])
            total = contribution if total is None else total + contribution
        return total
    grid = _interval_grid(fn, measure)
    total = None
    for lo, hi in zip(grid, grid[1:]):
        mid = (lo + hi) / 2
        contribution = _scale(fn.evaluate(mid), _density_at(measure, mid) * (hi - lo))
        total = contribution if total is None else total + contribution
    return total


def _scale(value, factor: Fraction):
    if isinstance(value, Vec):
        return value.scale(factor)
    return value * factor


def measure_oracle(measure, part) -> Fraction:
    """Measure of a set as the integral of its indicator, via the oracle."""
    one = Fraction(1)
    indicator = SimpleFunction.indicator(one, part)
    return integral_oracle(indicator, measure)
