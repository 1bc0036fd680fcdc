"""Order-statistic and moment helpers shared by the metric modules.

Conventions are pinned here so every module agrees and results stay
reproducible across implementations:

- standard deviation uses the population divisor n,
- the median of an even-sized sample is the lower of the two middle values,
- quartiles use the nearest-rank method (rank = ceil(q * n), 1-based).

Nearest-rank at q=0.5 coincides with the lower median, so the same helper
backs both.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import EmptyInputError


def mean(values: Sequence[float]) -> float:
    if not values:
        raise EmptyInputError("mean of empty sequence")
    return math.fsum(values) / len(values)


def population_sd(values: Sequence[float]) -> float:
    """Standard deviation with divisor n."""
    m = mean(values)
    var = math.fsum((v - m) ** 2 for v in values) / len(values)
    return math.sqrt(var)


def nearest_rank(sorted_values: Sequence[float], q: float) -> float:
    """Value at quantile q of an ascending-sorted sample, nearest-rank rule."""
    n = len(sorted_values)
    if n == 0:
        raise EmptyInputError("quantile of empty sequence")
    rank = max(1, math.ceil(q * n))
    return sorted_values[rank - 1]


def lower_median(sorted_values: Sequence[float]) -> float:
    return nearest_rank(sorted_values, 0.5)


def five_number(sorted_values: Sequence[float]) -> tuple[float, float, float, float, float]:
    """(min, q1, median, q3, max) of an ascending-sorted sample."""
    if not sorted_values:
        raise EmptyInputError("five-number summary of empty sequence")
    return (
        sorted_values[0],
        nearest_rank(sorted_values, 0.25),
        nearest_rank(sorted_values, 0.5),
        nearest_rank(sorted_values, 0.75),
        sorted_values[-1],
    )
