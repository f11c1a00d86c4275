import logging
from dataclasses import dataclass, field
from ._compat import StrEnum
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings

from . import published
from .calib import (CalibrationModel, CalibrationPoint, FitDataRow, apply_calibration, build_calibration,
                    fit_domain_data, residual_report)
from .exactbf import Alternative, BinomialData, bf_scan, binomial_bf10
from .exceptions import OutsideCalibratedDomainError, ValidationError
from .gof import ThresholdSolution, solve_unbiased_k
from .ingest import parse_sample_file, read_calibration_csv
from .rendering import OutputFormat
from .seqbf import BayesFactorResult, SampleSequence, WorksheetRow, default_threshold, sequential_bf, worksheet
from .serializers import load_model, save_model
from .stats import TTestReport, two_sample_ttest

logger = logging.getLogger(__name__)

STRONG_EVIDENCE_NOTE = 'strong evidence - no further verification required'


class Subcommand(StrEnum):
    SEQBF = 'seqbf'
    EXACTBF = 'exactbf'
    CALIBRATE = 'calibrate'
    CORRECT = 'correct'
    SCAN = 'scan'
    TTEST = 'ttest'
    REPORT = 'report'
    THRESHOLD = 'threshold'
    FITDATA = 'fitdata'
    REPRODUCE = 'reproduce'


def parse_counts(value: str) -> Tuple[int, int]:
    """'S/N' as a (successes, n) pair"""
    try:
        s, n = (int(part) for part in value.split('/'))
    except ValueError:
        raise ValidationError(f'counts must look like S/N: {value!r}')
    BinomialData(s, n)
    return s, n


def parse_segments(value: str) -> List[Tuple[float, float]]:
    """'A:B,B:C' as a list of (lo, hi) bounds"""
    segments = []
    for part in value.split(','):
        try:
            lo, hi = (float(bound) for bound in part.split(':'))
        except ValueError:
            raise ValidationError(f'segments must look like A:B,B:C: {value!r}')
        segments.append((lo, hi))
    return segments


# ========== RUN CONFIGURATION ==========

@dataclass
class RunConfig:
    """One command invocation; flags fall back to the BAYES_FACTOR settings"""

    command: Subcommand
    inputs: Tuple[Path, ...] = ()
    counts: Tuple[Tuple[int, int], ...] = ()
    k: Optional[float] = None
    canonicalize: bool = True
    alternative: Alternative = Alternative.GREATER
    test_value: float = 0.5
    output_format: OutputFormat = OutputFormat.TSV
    model_path: Optional[Path] = None
    extra: Dict = field(default_factory = dict)

    @classmethod
    def from_options(cls, command, inputs = None, counts = None, k = None, canonicalize = None,
                     alternative = None, test_value = None, output_format = None, model_path = None,
                     **extra) -> 'RunConfig':
        defaults = settings.BAYES_FACTOR
        config = cls(
            command = Subcommand(command),
            inputs = tuple(Path(path) for path in inputs or ()),
            counts = tuple(parse_counts(c) if isinstance(c, str) else tuple(c) for c in counts or ()),
            k = k,
            canonicalize = defaults['CANONICALIZE'] if canonicalize is None else canonicalize,
            alternative = Alternative.parse(alternative or defaults['ALTERNATIVE']),
            test_value = defaults['TEST_VALUE'] if test_value is None else test_value,
            output_format = OutputFormat.parse(output_format or defaults['OUTPUT_FORMAT']),
            model_path = Path(model_path) if model_path else None,
            extra = extra,
        )
        config.validate()
        return config

    def validate(self):
        if self.k is not None and not 0 < self.k <= 0.5:
            raise ValidationError(f'invalid threshold: k must lie in (0, 0.5], got {self.k}')
        if not 0 < self.test_value < 1:
            raise ValidationError('test value must lie in (0, 1)')
        if self.command is Subcommand.REPORT and not (self.inputs or self.counts):
            raise ValidationError('report needs at least one --input file or --counts pair')
        for path in self.inputs:
            if not path.is_file():
                raise ValidationError(f'input file not found: {path}')
        if self.model_path is not None and self.command is not Subcommand.CALIBRATE and not self.model_path.is_file():
            raise ValidationError(f'model file not found: {self.model_path}')


# ========== PIPELINE ==========

class BayesFactorPipeline:

    MODEL_DIR = Path(settings.BAYES_FACTOR['MODEL_DIR'])
    MODEL_PATH = MODEL_DIR / 'calibration.json'
    REFERENCE_DATA = Path(settings.BAYES_FACTOR['REFERENCE_DATA'])

    def __init__(self):
        self.defaults = settings.BAYES_FACTOR
        self._reference_model = None

    # ---------- sequential and exact ----------

    def threshold_for(self, n: int, k: Optional[float] = None) -> float:
        if k is not None:
            return k
        return default_threshold(
            n,
            worksheet_n = self.defaults['THRESHOLD_SAMPLE_SIZE'],
            worksheet_k = self.defaults['THRESHOLD'],
            crit = self.defaults['CHI2_CRITICAL'],
        )

    def sequential(self, sample: SampleSequence, k: Optional[float] = None,
                   canonicalize: bool = True) -> BayesFactorResult:
        return sequential_bf(sample, self.threshold_for(sample.n, k), canonicalize)

    def worksheet(self, sample: SampleSequence, k: Optional[float] = None,
                  canonicalize: bool = True) -> List[WorksheetRow]:
        return worksheet(sample, self.threshold_for(sample.n, k), canonicalize)

    def exact(self, successes: int, n: int, alternative = Alternative.GREATER,
              test_value: float = 0.5) -> BayesFactorResult:
        return binomial_bf10(BinomialData(successes, n, test_value), alternative)

    def threshold(self, n: int, crit: Optional[float] = None) -> ThresholdSolution:
        return solve_unbiased_k(n, self.defaults['CHI2_CRITICAL'] if crit is None else crit)

    # ---------- calibration ----------

    def calibrate(self, points: Sequence[CalibrationPoint], segments = None,
                  exclusion_below: Optional[float] = None) -> CalibrationModel:
        model = build_calibration(
            points,
            segments = segments or self.defaults['SEGMENTS'],
            exclusion_below = self.defaults['EXCLUSION_BELOW'] if exclusion_below is None else exclusion_below,
        )
        logger.info('calibration built: %d segments from %d points', len(model.segments), len(model.points))
        return model

    def reference_model(self) -> CalibrationModel:
        """Model refit from the bundled comparison table, built once"""
        if self._reference_model is None:
            self._reference_model = self.calibrate(read_calibration_csv(self.REFERENCE_DATA))
        return self._reference_model

    def resolve_model(self, path: Optional[Path] = None) -> CalibrationModel:
        if path is not None:
            return load_model(path)
        return self.reference_model()

    def save(self, model: CalibrationModel, path: Optional[Path] = None) -> Path:
        path = save_model(model, path or self.MODEL_PATH)
        logger.info('calibration model written to %s', path)
        return path

    def segment_summary(self, model: CalibrationModel) -> List[Dict]:
        rows = []
        for index, segment in enumerate(model.segments, start = 1):
            lo, hi = segment.domain
            rows.append({
                'segment': index,
                'lo': lo,
                'hi': hi,
                'points': sum(1 for p in model.points if segment.contains(p.x)),
                'source_r2': segment.source.r2,
                'reference_r2': segment.reference.r2,
            })
        return rows

    def correct(self, model: CalibrationModel, frequency: float, value: float) -> Dict:
        result = apply_calibration(frequency, value, model)
        segment = model.segments.index(model.segment_for(frequency)) + 1
        return {
            'frequency': frequency,
            'bf_source': value,
            'bf_corrected': result.bf10,
            'segment': segment,
            'valid': result.valid,
        }

    def emit_fit_data(self, model: CalibrationModel, step: Optional[float] = None,
                      points: Optional[Sequence[CalibrationPoint]] = None,
                      overall: bool = False) -> List[FitDataRow]:
        """Scatter defaults to the bundled comparison table, so excluded points are listed too"""
        if points is None:
            points = read_calibration_csv(self.REFERENCE_DATA)
        return fit_domain_data(model, step or self.defaults['FIT_GRID_STEP'], points, overall)

    # ---------- scan, validation and report ----------

    def run_scan(self, proportion: Optional[float] = None, sizes: Optional[Sequence[int]] = None,
                 alternative = Alternative.GREATER, test_value: float = 0.5) -> List[Dict]:
        sizes = list(sizes or self.defaults['SCAN_SIZES'])
        if not sizes:
            raise ValidationError('scan needs at least one sample size')
        evidence = self.defaults['EVIDENCE_THRESHOLD']
        rows = bf_scan(
            self.defaults['SCAN_PROPORTION'] if proportion is None else proportion,
            sizes,
            alternative,
            test_value,
            workers = self.defaults['SCAN_WORKERS'],
        )
        return [
            {'n': row.n, 's': row.s, 'bf10': row.bf10, 'above_threshold': row.bf10 > evidence}
            for row in rows
        ]

    def ttest(self, a: Sequence[float], b: Sequence[float]) -> List[Dict]:
        return self._ttest_rows(two_sample_ttest(a, b))

    @staticmethod
    def _ttest_rows(report: TTestReport) -> List[Dict]:
        rows = []
        for label, row, levene in (('equal', report.pooled, True), ('unequal', report.welch, False)):
            rows.append({
                'variances': label,
                'levene_f': report.levene_f if levene else None,
                'levene_p': report.levene_p if levene else None,
                't': row.t,
                'df': row.df,
                'p': row.p,
                'mean_diff': row.mean_diff,
                'se': row.se,
                'ci95_lo': row.ci95_lo,
                'ci95_hi': row.ci95_hi,
            })
        return rows

    def is_strong_evidence(self, successes: int, n: int) -> bool:
        """n above the scan crossing and more than the scan proportion of successes"""
        proportion = Fraction(repr(float(self.defaults['SCAN_PROPORTION'])))
        return n > self.defaults['STRONG_EVIDENCE_MIN_N'] and successes > proportion * n

    def report_row(self, sample: SampleSequence, model: CalibrationModel, k: Optional[float] = None,
                   canonicalize: bool = True, alternative = Alternative.GREATER,
                   test_value: float = 0.5) -> Dict:
        s, n = sample.successes, sample.n
        frequency = s / n
        sequential = self.sequential(sample, k, canonicalize)
        exact = self.exact(s, n, alternative, test_value)

        try:
            corrected = apply_calibration(frequency, sequential.bf10, model)
            bf_corrected, corrected_valid = corrected.bf10, corrected.valid
        except OutsideCalibratedDomainError:
            logger.info('frequency %.6g outside calibrated domain, corrected value omitted', frequency)
            bf_corrected, corrected_valid = None, None

        return {
            'n': n,
            's': s,
            'frequency': frequency,
            'bf_sequential': sequential.bf10,
            'bf_exact': exact.bf10,
            'bf_corrected': bf_corrected,
            'corrected_valid': corrected_valid,
            'note': STRONG_EVIDENCE_NOTE if self.is_strong_evidence(s, n) else '',
        }

    def run_report(self, config: RunConfig) -> List[Dict]:
        model = self.resolve_model(config.model_path)
        samples = [parse_sample_file(path) for path in config.inputs]
        samples += [SampleSequence.from_counts(s, n) for s, n in config.counts]
        return [
            self.report_row(sample, model, config.k, config.canonicalize, config.alternative, config.test_value)
            for sample in samples
        ]

    # ---------- published tables ----------

    def reproduce(self, data_path: Optional[Path] = None) -> List[Dict]:
        """Residuals of every recomputed published number against its printed value"""
        model = self.calibrate(read_calibration_csv(data_path or self.REFERENCE_DATA))
        n = published.SAMPLE_SIZE
        k = self.defaults['THRESHOLD']

        sections = []

        sequential_rows = [
            (f's={s}', sequential_bf(SampleSequence.from_counts(s, n), k).bf10, excel)
            for s, (_, excel, _) in published.COMPARISON.items()
        ]
        sections.append(('sequential', residual_report(sequential_rows, abs_tol = 1e-5, rel_tol = 1e-6)))

        exact_rows = [
            (f's={s}', self.exact(s, n).bf10, reference)
            for s, (_, _, reference) in published.COMPARISON.items()
        ]
        sections.append(('exact', residual_report(exact_rows, abs_tol = 0.0015, rel_tol = 0.02)))

        reference = {x: jasp for x, _, jasp in published.COMPARISON.values()}
        corrected = {
            x: apply_calibration(x, excel, model).bf10
            for x, excel, _ in published.COMPARISON.values()
            if x in published.CORRECTED
        }
        corrected_rows = [(f'x={x}', corrected[x], published.CORRECTED[x]) for x in sorted(corrected)]
        sections.append(('corrected', residual_report(corrected_rows)))

        a, b = published.corrected_pairs()
        report = two_sample_ttest(a, b)
        expected = published.TTEST
        ttest_rows = [
            ('levene_f', report.levene_f, expected['levene_f'], 0.01),
            ('levene_p', report.levene_p, expected['levene_p'], 0.005),
            ('pooled_t', report.pooled.t, expected['pooled_t'], 0.005),
            ('pooled_df', report.pooled.df, expected['pooled_df'], 0.0),
            ('pooled_p', report.pooled.p, expected['pooled_p'], 0.005),
            ('welch_df', report.welch.df, expected['welch_df'], 0.01),
            ('welch_p', report.welch.p, expected['welch_p'], 0.005),
            ('mean_diff', report.pooled.mean_diff, expected['mean_diff'], 1e-6),
            ('se', report.pooled.se, expected['se'], 1e-6),
            ('pooled_ci95_lo', report.pooled.ci95_lo, expected['pooled_ci95_lo'], 5e-4),
            ('pooled_ci95_hi', report.pooled.ci95_hi, expected['pooled_ci95_hi'], 5e-4),
            ('welch_ci95_lo', report.welch.ci95_lo, expected['welch_ci95_lo'], 5e-4),
            ('welch_ci95_hi', report.welch.ci95_hi, expected['welch_ci95_hi'], 5e-4),
        ]
        ttest_report = []
        for label, computed, printed, tolerance in ttest_rows:
            if computed is None:
                continue
            ttest_report += residual_report([(label, computed, printed)], abs_tol = tolerance, rel_tol = 0.0)

        # the same mean difference from the refit corrected column
        refit_diff = float(np.mean(list(corrected.values())) - np.mean([reference[x] for x in corrected]))
        ttest_report += residual_report([('refit_mean_diff', refit_diff, expected['mean_diff'])],
                                        abs_tol = 1e-3, rel_tol = 0.0)
        sections.append(('ttest', ttest_report))

        scan_rows = [
            (f'n={row.n}', row.bf10, published.SCAN[row.n][1])
            for row in bf_scan(published.SCAN_PROPORTION, list(published.SCAN))
        ]
        sections.append(('scan', residual_report(scan_rows, abs_tol = 0.0, rel_tol = 0.02)))

        rows = []
        for table, residuals in sections:
            missed = sum(1 for row in residuals if not row.within)
            if missed:
                logger.warning('%s: %d of %d values outside tolerance', table, missed, len(residuals))
            rows += [
                {
                    'table': table,
                    'label': row.label,
                    'computed': row.computed,
                    'published': row.published,
                    'residual': row.residual,
                    'tolerance': row.tolerance,
                    'within': row.within,
                }
                for row in residuals
            ]
        return rows


pipeline = BayesFactorPipeline()
