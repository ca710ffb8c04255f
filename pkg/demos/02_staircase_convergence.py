#!/usr/bin/env python3
"""The dyadic staircase under a nonnegative integrand, watched converge.

Level n rounds the integrand down to the grid {k/2^n} and caps it at n.
For piecewise-linear integrands the staircase integral has a closed form,
so the gap to the exact integral is an exact rational at every level and
always fits under the certified bound 2^-n * mass once n clears the sup.
"""

from fractions import Fraction as F

from exactintegral import (
    DyadicApproximation,
    IntervalMeasure,
    PiecewiseLinear,
    integrate_nonneg,
)
from exactintegral.tasks import approx_table_rows, render_table_csv

lebesgue = IntervalMeasure.lebesgue()
identity = PiecewiseLinear.linear(F(1))  # f(x) = x

print("exact integral of x on [0,1):", integrate_nonneg(identity, lebesgue))
print()

approx = DyadicApproximation(identity)
print("level 1 staircase:", approx.level(1).canonical().terms)
print("value at 0.3 for levels 1..6:",
      [approx.value_at(n, F(3, 10)) for n in range(1, 7)])
print()

# The convergence table: integral, gap and bound per level, as CSV.
print(render_table_csv(approx_table_rows(identity, lebesgue, 10)), end="")
print()

# The closed form behind the table: at level n the staircase integral is
# (2^n - 1) / 2^(n+1).
for n in (5, 10, 20):
    assert approx.integral(n, lebesgue) == F((1 << n) - 1, 1 << (n + 1))
print("closed form (2^n - 1)/2^(n+1) confirmed for n = 5, 10, 20")

# Deep levels stay cheap because nothing is materialized: the staircase
# integral of a piecewise-linear integrand is an arithmetic-series formula.
deep = approx.integral(30, lebesgue)
print("level-30 staircase integral:", deep)
print("gap at level 30            :", F(1, 2) - deep)
