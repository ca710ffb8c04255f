"""Exact rational integration over finite measure spaces.

Two constructions of the integral, both computed exactly:

* the monotone (Lebesgue-style) scheme: simple functions, a fixed dyadic
  staircase approximation for nonnegative integrands, and the
  positive/negative decomposition;
* the series-based (Bochner-style) scheme: absolutely summable series of
  simple functions with exact summability certificates.

`series_from_integrand`, `integral_from_series` and `equivalence_report`
realize the equivalence of the two schemes as executable, certified
transformations in both directions.
"""

from .rationals import (
    ONE,
    ZERO,
    decimal_string,
    floor_to_grid,
    format_rational,
    is_on_grid,
    parse_rational,
    power_of_two_level,
)
from .spaces import (
    UNIT_INTERVAL,
    DiscreteSet,
    DiscreteSpace,
    IntervalMeasure,
    IntervalSet,
    Measure,
    MeasurableSet,
    OutsideDomainError,
    Space,
    SpaceMismatchError,
    UnitIntervalSpace,
    space_of,
)
from .simple import NormKind, SimpleFunction, Vec, integrate_simple
from .piecewise import PiecewiseLinear
from .lebesgue import (
    DyadicApproximation,
    IntegrabilityClass,
    Integrand,
    IntegralResult,
    NegativeIntegrandError,
    absolute_integrand,
    integrate_nonneg,
    integrate_nonneg_at_level,
    integrate_over,
    lebesgue_integral,
    pos_neg_parts,
)
from .bochner import (
    BochnerRepresentation,
    CertificateError,
    ConstructionTrace,
    FiniteSeries,
    FunctionSeries,
    RuleSeries,
    SeriesIntegralResult,
    TelescopeSeries,
    TraceRow,
    absolute_sum_check,
    bochner_integrate,
    equivalence_report,
    geometric_indicator_series,
    integral_from_series,
    l1_norm,
    pointwise_partial_sum,
    series_from_integrand,
)
from .generators import (
    FAMILIES,
    GeneratedCase,
    GeneratorConfig,
    generate,
    generate_stream,
    random_measure,
    random_piecewise_linear,
    random_series,
    random_simple_function,
    sample_points,
    split_representation,
)
from .tasks import (
    TaskSpec,
    TaskSpecError,
    approx_table_rows,
    load_task,
    parse_task_document,
    render_report,
    render_table_csv,
)

__version__ = "0.1.0"
