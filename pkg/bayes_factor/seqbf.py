"""
Recursive (worksheet style) Bayes factor estimator for n-fold Bernoulli samples.

For a binary sample x_1..x_n the running deviation r_i = |mean(x_1..x_i) - 0.5|
is turned into an indicator y_i = [r_i < k]; the rule of succession over the
indicators estimates P(H0 | data) = (sum(y) + 1) / (n + 2) and, with prior
odds of one, BF10 = (1 - P(H0 | data)) / P(H0 | data) = (n + 1 - sum(y)) / (sum(y) + 1).
"""

import logging
from dataclasses import dataclass, field
from decimal import Decimal
from ._compat import StrEnum
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

import numpy as np

from .exceptions import (DegeneratePosteriorError, EmptySampleError, InvalidCountsError,
                         InvalidThresholdError, NonBinaryObservationError)
from .gof import solve_unbiased_k

logger = logging.getLogger(__name__)

WORKSHEET_SAMPLE_SIZE = 200
WORKSHEET_THRESHOLD = 0.07


class Method(StrEnum):
    SEQUENTIAL = 'sequential'
    EXACT = 'exact'
    CORRECTED = 'corrected'


# ========== DOMAIN TYPES ==========

@dataclass(frozen = True)
class SampleSequence:
    """Ordered binary observations of event A"""

    values: Tuple[int, ...]

    def __post_init__(self):
        if len(self.values) == 0:
            raise EmptySampleError()
        for value in self.values:
            if value not in (0, 1) or isinstance(value, bool):
                raise NonBinaryObservationError()

    @classmethod
    def from_iterable(cls, values: Iterable) -> 'SampleSequence':
        observations = []
        for value in values:
            if isinstance(value, bool) or value not in (0, 1):
                raise NonBinaryObservationError()
            observations.append(int(value))
        return cls(tuple(observations))

    @classmethod
    def from_counts(cls, successes: int, n: int) -> 'SampleSequence':
        """Canonical sample with `successes` ones followed by zeros"""
        if n < 1:
            raise EmptySampleError()
        if not 0 <= successes <= n:
            raise InvalidCountsError()
        return cls((1,) * successes + (0,) * (n - successes))

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def successes(self) -> int:
        return sum(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype = np.int64)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen = True)
class DeviationSeries:
    """Running deviation r_i of the prefix frequency from 0.5"""

    # prefix sums of x, kept so threshold comparisons stay exact
    cumulative: np.ndarray = field(repr = False)
    r: np.ndarray

    @property
    def n(self) -> int:
        return len(self.r)


@dataclass(frozen = True)
class IndicatorSeries:
    y: np.ndarray
    k: float

    @property
    def n(self) -> int:
        return len(self.y)

    @property
    def total(self) -> int:
        return int(self.y.sum())


@dataclass(frozen = True)
class BayesFactorResult:
    """A BF10 value with its posterior-null probability and provenance"""

    bf10: float
    method: Method
    n: Optional[int] = None
    frequency: Optional[float] = None
    posterior_null: Optional[float] = None
    y_sum: Optional[int] = None
    successes: Optional[int] = None
    threshold: Optional[float] = None
    canonical: Optional[bool] = None
    exact: Optional[Fraction] = None
    valid: bool = True

    @property
    def bf01(self) -> float:
        return 1.0 / self.bf10 if self.bf10 != 0 else float('inf')


@dataclass(frozen = True)
class WorksheetRow:
    num: int
    x: int
    r: float
    y: int


# ========== OPERATIONS ==========

def _as_fraction(k) -> Fraction:
    if isinstance(k, Fraction):
        return k
    if isinstance(k, (int, Decimal)):
        return Fraction(k)
    # repr gives the shortest decimal that round-trips, so 0.07 becomes 7/100
    return Fraction(repr(float(k)))


def running_deviation(xs: SampleSequence) -> DeviationSeries:
    values = xs.as_array()
    if values.size == 0:
        raise EmptySampleError()
    if np.any((values != 0) & (values != 1)):
        raise NonBinaryObservationError()

    cumulative = np.cumsum(values)
    index = np.arange(1, values.size + 1)
    r = np.abs(cumulative / index - 0.5)
    return DeviationSeries(cumulative = _frozen(cumulative), r = _frozen(r))


def indicator_series(rs: DeviationSeries, k = WORKSHEET_THRESHOLD) -> IndicatorSeries:
    """y_i = 1 iff r_i < k, evaluated exactly on the prefix counts"""
    try:
        threshold = _as_fraction(k)
    except (TypeError, ValueError, OverflowError):
        raise InvalidThresholdError()
    if not 0 < threshold <= Fraction(1, 2):
        raise InvalidThresholdError()

    index = np.arange(1, rs.n + 1, dtype = np.int64)
    numerator, denominator = threshold.numerator, threshold.denominator

    # |S_i / i - 1/2| < p/q  <=>  |2 S_i - i| * q < 2 p i
    if 2 * max(numerator, denominator) * max(rs.n, 1) < 2 ** 62:
        distance = np.abs(2 * rs.cumulative.astype(np.int64) - index) * denominator
        bound = 2 * numerator * index
    else:
        distance = np.abs(2 * rs.cumulative.astype(object) - index.astype(object)) * denominator
        bound = 2 * numerator * index.astype(object)
    y = (distance < bound).astype(np.int8)

    logger.debug('indicator series: n=%d k=%s sum(y)=%d', rs.n, k, int(y.sum()))
    return IndicatorSeries(y = _frozen(y), k = float(threshold))


def posterior_null(ys: IndicatorSeries) -> Fraction:
    """Rule of succession over the indicators: (sum(y) + 1) / (n + 2)"""
    if ys.n == 0:
        raise EmptySampleError()
    return Fraction(ys.total + 1, ys.n + 2)


def bayes_factor_from_posterior(p0):
    if not 0 < p0 < 1:
        raise DegeneratePosteriorError()
    return (1 - p0) / p0


def canonical_order(xs: SampleSequence) -> SampleSequence:
    """All ones first, then all zeros"""
    return SampleSequence.from_counts(xs.successes, xs.n)


def default_threshold(n: int, worksheet_n: int = WORKSHEET_SAMPLE_SIZE,
                      worksheet_k: float = WORKSHEET_THRESHOLD, crit: float = 3.84) -> float:
    if n == worksheet_n:
        return worksheet_k
    return solve_unbiased_k(n, crit).k_working


def sequential_bf(xs: SampleSequence, k = None, canonicalize: bool = True) -> BayesFactorResult:
    if k is None:
        k = default_threshold(xs.n)
    if canonicalize:
        xs = canonical_order(xs)

    ys = indicator_series(running_deviation(xs), k)
    p0 = posterior_null(ys)
    bf10 = bayes_factor_from_posterior(p0)

    return BayesFactorResult(
        bf10 = float(bf10),
        n = xs.n,
        method = Method.SEQUENTIAL,
        posterior_null = float(p0),
        y_sum = ys.total,
        successes = xs.successes,
        threshold = ys.k,
        canonical = canonicalize,
        exact = bf10,
    )


def worksheet(xs: SampleSequence, k = None, canonicalize: bool = True) -> List[WorksheetRow]:
    """Per-observation rows {num, x, r, y} of the spreadsheet layout"""
    if k is None:
        k = default_threshold(xs.n)
    if canonicalize:
        xs = canonical_order(xs)

    rs = running_deviation(xs)
    ys = indicator_series(rs, k)
    return [
        WorksheetRow(num = i + 1, x = xs.values[i], r = float(rs.r[i]), y = int(ys.y[i]))
        for i in range(xs.n)
    ]
