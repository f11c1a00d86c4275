"""
Pearson chi-square machinery and the unbiased threshold k.

A deviation r = k of the running frequency is treated as "no deviation" as
long as the two-cell table [n(0.5 + k), n(0.5 - k)] against [0.5n, 0.5n]
stays below the chi-square critical value:

    sum((n(0.5 +- k) - 0.5n)^2 / 0.5n) = 4 n k^2 = crit   =>   k = sqrt(crit / 4n)

The critical value defaults to 3.84, the 0.05 point of chi-square with one
degree of freedom. The two-cell table is sometimes described as having two
degrees of freedom (whose critical value would be 5.99); 3.84 is kept because
it is the value that yields the worksheet constant k = 0.07 at n = 200.
"""

import logging
import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, Decimal
from typing import Sequence, Tuple

import numpy as np

from .exceptions import InvalidTableError, ThresholdRangeError, ValidationError

logger = logging.getLogger(__name__)

DEFAULT_CRITICAL_VALUE = 3.84


@dataclass(frozen = True)
class FrequencyTable:
    observed: Tuple[float, ...]
    expected: Tuple[float, ...]

    def __post_init__(self):
        if len(self.observed) != len(self.expected) or len(self.observed) < 2:
            raise InvalidTableError()
        if any(value <= 0 for value in self.expected):
            raise InvalidTableError()
        if any(value < 0 for value in self.observed):
            raise InvalidTableError()

    @classmethod
    def of(cls, observed: Sequence[float], expected: Sequence[float]) -> 'FrequencyTable':
        return cls(tuple(float(v) for v in observed), tuple(float(v) for v in expected))


@dataclass(frozen = True)
class ThresholdSolution:
    n: int
    crit: float
    k_exact: float
    k_working: float


def pearson_chi2(table: FrequencyTable) -> float:
    observed = np.asarray(table.observed, dtype = float)
    expected = np.asarray(table.expected, dtype = float)
    return float(np.sum((observed - expected) ** 2 / expected))


def two_cell_table(n: int, k: float) -> FrequencyTable:
    """Observed n(0.5 +- k) against the balanced expectation 0.5n"""
    return FrequencyTable.of([n * (0.5 + k), n * (0.5 - k)], [0.5 * n, 0.5 * n])


def round_up(value: float, places: int = 2) -> float:
    # drop float noise first so an exact 0.1 does not round up to 0.11
    cleaned = Decimal(repr(round(value, 12)))
    return float(cleaned.quantize(Decimal(1).scaleb(-places), rounding = ROUND_CEILING))


def solve_unbiased_k(n: int, crit: float = DEFAULT_CRITICAL_VALUE) -> ThresholdSolution:
    if n < 1:
        raise ValidationError('sample size must be at least 1')
    if not crit > 0:
        raise ValidationError('critical value must be positive')

    k_exact = math.sqrt(crit / (4 * n))
    if k_exact >= 0.5:
        raise ThresholdRangeError()

    k_working = round_up(k_exact)
    if k_working >= 0.5:
        raise ThresholdRangeError()

    logger.debug('unbiased threshold: n=%d crit=%s k_exact=%.9f k_working=%s', n, crit, k_exact, k_working)
    return ThresholdSolution(n = n, crit = crit, k_exact = k_exact, k_working = k_working)
