#!/usr/bin/env python3
"""Measure spaces, measurable sets and simple functions, all in exact arithmetic.

Everything below is a Fraction; nothing is ever rounded.
"""

from fractions import Fraction as F

from exactintegral import (
    DiscreteSet,
    DiscreteSpace,
    IntervalMeasure,
    IntervalSet,
    SimpleFunction,
    UNIT_INTERVAL,
    integrate_simple,
)

# --- the unit interval with Lebesgue measure ---------------------------------

lebesgue = IntervalMeasure.lebesgue()

a = IntervalSet([(F(0), F(1, 4))])
b = IntervalSet([(F(1, 8), F(1, 2))])

print("A                =", a)
print("B                =", b)
print("A | B            =", a.union(b))          # overlaps merge
print("A & B            =", a.intersection(b))
print("complement(A|B)  =", a.union(b).complement())
print("m(A | B)         =", lebesgue.measure_of(a.union(b)))
print()

# --- a step-density measure: density 2 on [0,1/2), 0 on [1/2,1) ---------------

weighted = IntervalMeasure((F(0), F(1, 2), F(1)), (F(2), F(0)))
print("weighted m([1/4, 3/4)) =", weighted.measure_of(IntervalSet([(F(1, 4), F(3, 4))])))
print("weighted total mass    =", weighted.total_mass)
print()

# --- simple functions: values on pairwise-disjoint sets ------------------------

step = SimpleFunction(
    UNIT_INTERVAL,
    [
        (F(2), IntervalSet([(F(0), F(1, 2))])),
        (F(3), IntervalSet([(F(1, 2), F(1))])),
    ],
)
print("step(1/4)        =", step.evaluate(F(1, 4)))
print("step(3/4)        =", step.evaluate(F(3, 4)))
print("integral of step =", integrate_simple(step, lebesgue))  # 2/2 + 3/2 = 5/2
print()

# The same function written redundantly integrates to the same value: the
# integral depends on the function, not on the representation.
redundant = SimpleFunction(
    UNIT_INTERVAL,
    [
        (F(2), IntervalSet([(F(0), F(1, 4))])),
        (F(2), IntervalSet([(F(1, 4), F(1, 2))])),
        (F(3), IntervalSet([(F(1, 2), F(1))])),
    ],
)
print("same function?   ", redundant == step)
print("same integral?   ", integrate_simple(redundant, lebesgue) == F(5, 2))
print("canonical form   =", step.canonical().terms)
print()

# --- a discrete space: weights are the measure ---------------------------------

dice = DiscreteSpace((F(1, 4), F(1, 4), F(1, 4), F(1, 4)))
evens = DiscreteSet(dice, [0, 2])
print("m({0, 2})        =", dice.measure_of(evens))
indicator = SimpleFunction.indicator(F(1), evens)
print("integral of 1_{0,2} =", integrate_simple(indicator, dice))
