"""Exact expectations for rate-labelled random graph and assignment processes.

The heavy lifting lives in the compiled extension; this package re-exports it.
Rates may be ints, floats, strings like "2/3", or fractions.Fraction; every
exact result comes back as a fractions.Fraction.
"""

from rategraph._core import (
    BipartiteRateGraph,
    CompleteRateGraph,
    ResourceLimitError,
    UnreachableTargetError,
    ValidationError,
    assignment_length2,
    assignment_time,
    binomial,
    forest_length,
    forest_time,
    monte_carlo,
    multinomial,
    oracle_assignment_time,
    oracle_forest_length,
    oracle_forest_time,
    shape_numerator,
    stirling_tables,
    tabloid_count,
    unit_forest_length,
    unit_forest_time,
)

__all__ = [
    "BipartiteRateGraph",
    "CompleteRateGraph",
    "ResourceLimitError",
    "UnreachableTargetError",
    "ValidationError",
    "assignment_length2",
    "assignment_time",
    "binomial",
    "forest_length",
    "forest_time",
    "monte_carlo",
    "multinomial",
    "oracle_assignment_time",
    "oracle_forest_length",
    "oracle_forest_time",
    "shape_numerator",
    "stirling_tables",
    "tabloid_count",
    "unit_forest_length",
    "unit_forest_time",
]
