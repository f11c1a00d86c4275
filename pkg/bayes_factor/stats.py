"""
Two-sample validation statistics: mean-centred Levene test plus pooled and
Welch independent-samples t-tests, laid out like an SPSS report.

Tail probabilities of the t and F distributions come from the regularized
incomplete beta function shared with the exact Bayes factor module:

    P(|T| > t) = I_{df / (df + t^2)}(df / 2, 1 / 2)
    P(F > f)   = I_{d2 / (d2 + d1 f)}(d2 / 2, d1 / 2)
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import stats as distributions

from .exactbf import log_reg_incomplete_beta
from .exceptions import DegenerateDeviationsError, DegenerateSamplesError, ValidationError

logger = logging.getLogger(__name__)

CONFIDENCE = 0.95


@dataclass(frozen = True)
class TTestRow:
    t: float
    df: float
    p: float
    mean_diff: float
    se: float
    ci95_lo: float
    ci95_hi: float


@dataclass(frozen = True)
class TTestReport:
    levene_f: Optional[float]
    levene_p: Optional[float]
    pooled: TTestRow
    welch: TTestRow


def _as_group(values: Sequence[float], name: str) -> np.ndarray:
    group = np.asarray(values, dtype = float)
    if group.ndim != 1 or group.size < 2:
        raise ValidationError(f'group {name} needs at least 2 observations')
    if not np.all(np.isfinite(group)):
        raise ValidationError(f'group {name} contains non-finite values')
    return group


def t_two_tailed_p(t: float, df: float) -> float:
    if t == 0:
        return 1.0
    return math.exp(log_reg_incomplete_beta(df / (df + t * t), df / 2.0, 0.5))


def f_upper_tail_p(f: float, d1: float, d2: float) -> float:
    if f <= 0:
        return 1.0
    return math.exp(log_reg_incomplete_beta(d2 / (d2 + d1 * f), d2 / 2.0, d1 / 2.0))


def levene_test(a: Sequence[float], b: Sequence[float]) -> Tuple[float, float]:
    """Levene's test centred on the group means, df = (1, n1 + n2 - 2)"""
    groups = [_as_group(a, 'a'), _as_group(b, 'b')]
    deviations = [np.abs(group - group.mean()) for group in groups]

    total = sum(group.size for group in groups)
    grand_mean = np.concatenate(deviations).mean()
    between = sum(z.size * (z.mean() - grand_mean) ** 2 for z in deviations)
    within = sum(np.sum((z - z.mean()) ** 2) for z in deviations)

    if within <= 0:
        # constant deviations with the same level in every group carry no evidence either way
        levels = [z.mean() for z in deviations]
        if np.allclose(levels, levels[0], rtol = 1e-12, atol = 0.0):
            return 0.0, 1.0
        raise DegenerateDeviationsError()

    d1, d2 = len(groups) - 1, total - len(groups)
    f = float((between / d1) / (within / d2))
    return f, f_upper_tail_p(f, d1, d2)


def _row(mean_diff: float, se: float, df: float) -> TTestRow:
    t = mean_diff / se
    margin = distributions.t.ppf(0.5 + CONFIDENCE / 2.0, df) * se
    return TTestRow(
        t = float(t),
        df = float(df),
        p = t_two_tailed_p(float(t), float(df)),
        mean_diff = float(mean_diff),
        se = float(se),
        ci95_lo = float(mean_diff - margin),
        ci95_hi = float(mean_diff + margin),
    )


def two_sample_ttest(a: Sequence[float], b: Sequence[float]) -> TTestReport:
    first, second = _as_group(a, 'a'), _as_group(b, 'b')
    n1, n2 = first.size, second.size
    v1, v2 = first.var(ddof = 1), second.var(ddof = 1)
    if v1 == 0 and v2 == 0:
        raise DegenerateSamplesError()

    mean_diff = first.mean() - second.mean()

    pooled_df = n1 + n2 - 2
    pooled_var = ((n1 - 1) * v1 + (n2 - 1) * v2) / pooled_df
    pooled = _row(mean_diff, math.sqrt(pooled_var * (1.0 / n1 + 1.0 / n2)), pooled_df)

    # Welch-Satterthwaite
    q1, q2 = v1 / n1, v2 / n2
    welch_df = (q1 + q2) ** 2 / (q1 ** 2 / (n1 - 1) + q2 ** 2 / (n2 - 1))
    welch = _row(mean_diff, math.sqrt(q1 + q2), welch_df)

    try:
        levene_f, levene_p = levene_test(first, second)
    except DegenerateDeviationsError:
        logger.warning('Levene test skipped: absolute deviations have no spread')
        levene_f, levene_p = None, None

    return TTestReport(levene_f = levene_f, levene_p = levene_p, pooled = pooled, welch = welch)
