"""
Piecewise cubic calibration of sequential Bayes factors onto the exact scale.

Per segment two cubics are fitted against the frequency x of event A:
f_E to the sequential values and f_J to the reference values. A sequential
value y observed at x is then moved onto the reference scale with

    f_J(x) + (b1 / a1) * (y - f_E(x))

written out in coefficient form (a = f_E, b = f_J, leading coefficient first):

    (b1/a1) y + ((a1 b2 - a2 b1)/a1) x^2 + ((a1 b3 - a3 b1)/a1) x + (a1 b4 - a4 b1)/a1
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from .exceptions import (EmptyModelError, NonInvertibleFitError, OutsideCalibratedDomainError,
                         UnderdeterminedFitError, ValidationError)
from .seqbf import BayesFactorResult, Method

logger = logging.getLogger(__name__)

MODEL_VERSION = 1
DEFAULT_SEGMENTS = ((0.15, 0.45), (0.45, 0.55))
DEFAULT_EXCLUSION_BELOW = 0.15
MAX_CONDITION = 1e12


# ========== DOMAIN TYPES ==========

@dataclass(frozen = True)
class CubicFit:
    """c3 x^3 + c2 x^2 + c1 x + c0 with its coefficient of determination"""

    coeffs: Tuple[float, float, float, float]
    r2: float
    domain: Optional[Tuple[float, float]] = None

    def __call__(self, x):
        return np.polyval(self.coeffs, x)


@dataclass(frozen = True)
class CalibrationPoint:
    x: float
    y_source: float
    y_reference: float


@dataclass(frozen = True)
class CalibrationSegment:
    domain: Tuple[float, float]
    source: CubicFit
    reference: CubicFit
    # the first segment also owns its lower bound
    closed_left: bool = False

    def contains(self, x: float) -> bool:
        lo, hi = self.domain
        if self.closed_left:
            return lo <= x <= hi
        return lo < x <= hi


@dataclass(frozen = True)
class CalibrationModel:
    segments: Tuple[CalibrationSegment, ...]
    exclusion_below: float = DEFAULT_EXCLUSION_BELOW
    version: int = MODEL_VERSION
    # scatter points the model was fitted on; not part of the JSON document
    points: Tuple[CalibrationPoint, ...] = field(default = (), compare = False, repr = False)

    def segment_for(self, x: float) -> CalibrationSegment:
        if x < self.exclusion_below:
            raise OutsideCalibratedDomainError()
        for segment in self.segments:
            if segment.contains(x):
                return segment
        raise OutsideCalibratedDomainError()


@dataclass(frozen = True)
class ResidualRow:
    label: str
    computed: float
    published: float
    residual: float
    tolerance: float
    within: bool


@dataclass(frozen = True)
class FitDataRow:
    segment: int
    kind: str
    x: float
    source_fit: Optional[float] = None
    reference_fit: Optional[float] = None
    source_observed: Optional[float] = None
    reference_observed: Optional[float] = None


# ========== FITTING ==========

def fit_cubic(points: Sequence[Tuple[float, float]]) -> CubicFit:
    """Ordinary least-squares cubic through (x, y) pairs"""
    data = np.asarray(points, dtype = float).reshape(-1, 2)
    # sorting makes the solve independent of input order
    data = data[np.lexsort((data[:, 1], data[:, 0]))]
    x, y = data[:, 0], data[:, 1]
    if np.unique(x).size < 4:
        raise UnderdeterminedFitError()

    design = np.vander(x, 4)
    normal = design.T @ design
    rhs = design.T @ y

    condition = np.linalg.cond(normal)
    if condition <= MAX_CONDITION:
        coeffs = linalg.cho_solve(linalg.cho_factor(normal), rhs)
    else:
        logger.debug('normal equations ill-conditioned (cond=%.3g), using lstsq', condition)
        coeffs = np.linalg.lstsq(design, y, rcond = None)[0]

    residual = y - design @ coeffs
    total = np.sum((y - y.mean()) ** 2)
    r2 = 1.0 - float(np.sum(residual ** 2) / total) if total > 0 else 1.0

    return CubicFit(
        coeffs = tuple(float(c) for c in coeffs),
        r2 = r2,
        domain = (float(x.min()), float(x.max())),
    )


def correct_value(x: float, y: float, f_e: CubicFit, f_j: CubicFit) -> float:
    a1, a2, a3, a4 = f_e.coeffs
    b1, b2, b3, b4 = f_j.coeffs
    if a1 == 0:
        raise NonInvertibleFitError()

    return ((b1 / a1) * y
            + ((a1 * b2 - a2 * b1) / a1) * x ** 2
            + ((a1 * b3 - a3 * b1) / a1) * x
            + (a1 * b4 - a4 * b1) / a1)


def _check_segments(segments: Sequence[Tuple[float, float]]) -> List[Tuple[float, float]]:
    bounds = [(float(lo), float(hi)) for lo, hi in segments]
    if not bounds:
        raise EmptyModelError()
    for lo, hi in bounds:
        if not lo < hi:
            raise ValidationError(f'empty segment {lo}-{hi}')
    for (_, hi), (lo, _) in zip(bounds, bounds[1:]):
        if hi != lo:
            raise ValidationError(f'segments must be contiguous: {hi} != {lo}')
    return bounds


def build_calibration(points: Sequence[CalibrationPoint], segments = DEFAULT_SEGMENTS,
                      exclusion_below: float = DEFAULT_EXCLUSION_BELOW) -> CalibrationModel:
    bounds = _check_segments(segments)
    kept = [p for p in points if p.x >= exclusion_below]
    logger.debug('calibration: %d of %d points kept above %s', len(kept), len(points), exclusion_below)

    fitted = []
    for index, (lo, hi) in enumerate(bounds):
        closed_left = index == 0
        members = [
            p for p in kept
            if (lo <= p.x <= hi if closed_left else lo < p.x <= hi)
        ]
        try:
            source = fit_cubic([(p.x, p.y_source) for p in members])
            reference = fit_cubic([(p.x, p.y_reference) for p in members])
        except UnderdeterminedFitError:
            raise UnderdeterminedFitError(f'underdetermined fit in segment {lo}-{hi}')

        logger.debug('segment %s-%s: %d points, r2 source=%.5f reference=%.5f',
                     lo, hi, len(members), source.r2, reference.r2)
        fitted.append(CalibrationSegment(
            domain = (lo, hi),
            source = CubicFit(source.coeffs, source.r2, (lo, hi)),
            reference = CubicFit(reference.coeffs, reference.r2, (lo, hi)),
            closed_left = closed_left,
        ))

    return CalibrationModel(
        segments = tuple(fitted),
        exclusion_below = float(exclusion_below),
        points = tuple(kept),
    )


def apply_calibration(x: float, y: float, model: CalibrationModel) -> BayesFactorResult:
    segment = model.segment_for(x)
    value = float(correct_value(x, y, segment.source, segment.reference))
    valid = value > 0
    if not valid:
        logger.warning('corrected Bayes factor %.6g at x=%s is not positive', value, x)

    return BayesFactorResult(
        bf10 = value,
        method = Method.CORRECTED,
        frequency = x,
        posterior_null = 1.0 / (1.0 + value) if valid else None,
        valid = valid,
    )


# ========== REPORTING ==========

def residual_report(rows: Sequence[Tuple[object, float, float]], abs_tol: float = 0.02,
                    rel_tol: float = 0.10) -> List[ResidualRow]:
    """Compare (label, computed, published) triples under max(abs_tol, rel_tol * |published|)"""
    report = []
    for label, computed, published in rows:
        tolerance = max(abs_tol, rel_tol * abs(published))
        residual = computed - published
        report.append(ResidualRow(
            label = str(label),
            computed = computed,
            published = published,
            residual = residual,
            tolerance = tolerance,
            within = bool(abs(residual) <= tolerance),
        ))
    return report


def _grid(lo: float, hi: float, step: float) -> List[float]:
    if not step > 0:
        raise ValidationError('grid step must be positive')
    count = int(round((hi - lo) / step)) + 1
    xs = (round(lo + i * step, 10) for i in range(count))
    return [x for x in xs if x <= hi + 1e-12]


def fit_domain_data(model: CalibrationModel, step: float = 0.01,
                    points: Optional[Sequence[CalibrationPoint]] = None,
                    overall: bool = False) -> List[FitDataRow]:
    """
    Fitted curves on a grid per segment, followed by the scatter points.

    Scatter points no segment covers (below the exclusion cut-off or past the
    last segment) are kept as 'excluded' rows with segment 0 and no fitted
    values. With `overall`, one cubic per column is fitted over the whole
    scatter range and emitted as 'overall' grid rows, also under segment 0.
    """
    if not model.segments:
        raise EmptyModelError()
    scatter = sorted(model.points if points is None else tuple(points), key = lambda p: p.x)

    rows = []
    for index, segment in enumerate(model.segments, start = 1):
        lo, hi = segment.domain
        for x in _grid(lo, hi, step):
            rows.append(FitDataRow(
                segment = index,
                kind = 'grid',
                x = x,
                source_fit = float(segment.source(x)),
                reference_fit = float(segment.reference(x)),
            ))
        for point in scatter:
            if x_in_segment(model, index - 1, point.x):
                rows.append(FitDataRow(
                    segment = index,
                    kind = 'point',
                    x = point.x,
                    source_fit = float(segment.source(point.x)),
                    reference_fit = float(segment.reference(point.x)),
                    source_observed = point.y_source,
                    reference_observed = point.y_reference,
                ))

    for point in scatter:
        if not any(x_in_segment(model, index, point.x) for index in range(len(model.segments))):
            rows.append(FitDataRow(
                segment = 0,
                kind = 'excluded',
                x = point.x,
                source_observed = point.y_source,
                reference_observed = point.y_reference,
            ))

    if overall:
        rows += _overall_rows(scatter, step)
    return rows


def _overall_rows(scatter: Sequence[CalibrationPoint], step: float) -> List[FitDataRow]:
    source = fit_cubic([(p.x, p.y_source) for p in scatter])
    reference = fit_cubic([(p.x, p.y_reference) for p in scatter])
    logger.debug('whole-range fit over %d points: r2 source=%.5f reference=%.5f',
                 len(scatter), source.r2, reference.r2)
    return [
        FitDataRow(
            segment = 0,
            kind = 'overall',
            x = x,
            source_fit = float(source(x)),
            reference_fit = float(reference(x)),
        )
        for x in _grid(scatter[0].x, scatter[-1].x, step)
    ]


def x_in_segment(model: CalibrationModel, index: int, x: float) -> bool:
    return x >= model.exclusion_below and model.segments[index].contains(x)
