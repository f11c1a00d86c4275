"""
Exact binomial-test Bayes factor under a uniform prior.

The alternative puts a Beta(1, 1) prior on p, truncated to the side of the
test value named by the alternative and renormalised; the null fixes p = p0.
The binomial coefficient cancels, so with B = Beta(s + 1, n - s + 1):

    greater:    m1 = B * P(p > p0 | s, n) / (1 - p0)
    less:       m1 = B * P(p < p0 | s, n) / p0
    two-sided:  m1 = B
    null:       m0 = p0^s (1 - p0)^(n - s)

Everything is evaluated in log space, which keeps n in the thousands finite.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from ._compat import StrEnum
from typing import Iterable, List

from scipy import special

from .exceptions import ComputationError, InvalidCountsError, ValidationError
from .seqbf import BayesFactorResult, Method

logger = logging.getLogger(__name__)

# below this betainc loses relative accuracy to underflow
_UNDERFLOW = 1e-280
_TINY = 1e-300


class Alternative(StrEnum):
    GREATER = 'greater'
    LESS = 'less'
    TWO_SIDED = 'two-sided'

    @classmethod
    def parse(cls, value) -> 'Alternative':
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower().replace('_', '-'))
        except ValueError:
            raise ValidationError(f'unknown alternative: {value}')


@dataclass(frozen = True)
class BinomialData:
    successes: int
    n: int
    test_value: float = 0.5

    def __post_init__(self):
        if isinstance(self.successes, bool) or isinstance(self.n, bool):
            raise InvalidCountsError()
        if int(self.successes) != self.successes or int(self.n) != self.n:
            raise InvalidCountsError()
        if self.n < 1 or not 0 <= self.successes <= self.n:
            raise InvalidCountsError()
        if not 0 < self.test_value < 1:
            raise InvalidCountsError('invalid counts: test value must lie in (0, 1)')

    @property
    def failures(self) -> int:
        return self.n - self.successes


@dataclass(frozen = True)
class ScanRow:
    n: int
    s: int
    bf10: float


# ========== SPECIAL FUNCTIONS ==========

def _beta_continued_fraction(a: float, b: float, x: float, max_iter: int = 2000, eps: float = 1e-15) -> float:
    """Continued fraction of the incomplete beta function (modified Lentz)"""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d

    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h

    raise ComputationError(f'incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})')


def _log_front(x: float, a: float, b: float) -> float:
    return a * math.log(x) + b * math.log1p(-x) - math.log(a) - special.betaln(a, b)


def log_reg_incomplete_beta(x: float, a: float, b: float) -> float:
    """log I_x(a, b), finite wherever I_x(a, b) > 0"""
    if not (0.0 <= x <= 1.0) or not a > 0 or not b > 0:
        raise ValidationError(f'incomplete beta out of domain (x={x}, a={a}, b={b})')
    if x == 0.0:
        return -math.inf
    if x == 1.0:
        return 0.0

    value = special.betainc(a, b, x)
    if value > _UNDERFLOW:
        return math.log(value)

    if x < (a + 1.0) / (a + b + 2.0):
        return _log_front(x, a, b) + math.log(_beta_continued_fraction(a, b, x))

    # upper side: I_x(a, b) = 1 - I_{1-x}(b, a)
    complement = _log_front(1.0 - x, b, a) + math.log(_beta_continued_fraction(b, a, 1.0 - x))
    return math.log1p(-math.exp(complement))


# ========== BAYES FACTORS ==========

def log_marginal_null(data: BinomialData) -> float:
    return float(special.xlogy(data.successes, data.test_value)
                 + special.xlog1py(data.failures, -data.test_value))


def log_marginal_alternative(data: BinomialData, alternative = Alternative.GREATER) -> float:
    alternative = Alternative.parse(alternative)
    s, f, p0 = data.successes, data.failures, data.test_value
    log_beta = float(special.betaln(s + 1, f + 1))

    if alternative is Alternative.GREATER:
        # posterior mass above p0 is I_{1-p0}(f + 1, s + 1)
        return log_beta + log_reg_incomplete_beta(1.0 - p0, f + 1, s + 1) - math.log1p(-p0)
    if alternative is Alternative.LESS:
        return log_beta + log_reg_incomplete_beta(p0, s + 1, f + 1) - math.log(p0)
    return log_beta


def binomial_bf10(data: BinomialData, alternative = Alternative.GREATER) -> BayesFactorResult:
    log_bf = log_marginal_alternative(data, alternative) - log_marginal_null(data)
    if math.isnan(log_bf):
        raise ComputationError('binomial Bayes factor is undefined')

    try:
        bf10 = math.exp(log_bf)
    except OverflowError:
        raise ComputationError(f'binomial Bayes factor overflows (log bf10 = {log_bf:.6g})')
    logger.debug('exact bf: s=%d n=%d p0=%s alt=%s log_bf=%.12g',
                 data.successes, data.n, data.test_value, alternative, log_bf)

    return BayesFactorResult(
        bf10 = bf10,
        n = data.n,
        method = Method.EXACT,
        posterior_null = 1.0 / (1.0 + bf10),
        successes = data.successes,
    )


def bf01(result: BayesFactorResult) -> float:
    return result.bf01


# ========== SAMPLE-SIZE SCAN ==========

def scan_successes(proportion: float, n: int) -> int:
    """round(proportion * n) with halves rounded up, on the decimal value of proportion"""
    exact = Decimal(repr(float(proportion))) * n
    return int(exact.quantize(Decimal(1), rounding = ROUND_HALF_UP))


def bf_scan(proportion: float, ns: Iterable[int], alternative = Alternative.GREATER,
            test_value: float = 0.5, workers: int = 1) -> List[ScanRow]:
    if not 0 < proportion < 1:
        raise ValidationError('proportion must lie in (0, 1)')
    sizes = [int(n) for n in ns]
    if any(n < 1 for n in sizes):
        raise InvalidCountsError()
    alternative = Alternative.parse(alternative)

    def evaluate(n):
        s = scan_successes(proportion, n)
        result = binomial_bf10(BinomialData(s, n, test_value), alternative)
        return ScanRow(n = n, s = s, bf10 = result.bf10)

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers = workers) as executor:
            # map keeps input order
            return list(executor.map(evaluate, sizes))
    return [evaluate(n) for n in sizes]
