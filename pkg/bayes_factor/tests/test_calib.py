import json
import tempfile
from pathlib import Path

import numpy as np
from django.conf import settings
from django.test import SimpleTestCase

from bayes_factor import published
from bayes_factor.calib import (CalibrationModel, CalibrationSegment, CubicFit, apply_calibration, build_calibration,
                                correct_value, fit_cubic, fit_domain_data, residual_report)
from bayes_factor.exceptions import (EmptyModelError, InvalidModelError, NonInvertibleFitError,
                                     OutsideCalibratedDomainError, UnderdeterminedFitError, ValidationError)
from bayes_factor.ingest import read_calibration_csv
from bayes_factor.seqbf import Method
from bayes_factor.serializers import dump_model, load_model, parse_model, save_model


def reference_points():
    return read_calibration_csv(settings.BAYES_FACTOR['REFERENCE_DATA'])


class FitCubicTests(SimpleTestCase):

    def test_interpolates_four_points(self):
        fit = fit_cubic([(x, x ** 3) for x in (-1.0, -0.5, 0.5, 1.0)])
        np.testing.assert_allclose(fit.coeffs, (1, 0, 0, 0), atol = 1e-9)
        self.assertAlmostEqual(fit.r2, 1.0, places = 9)

    def test_residuals_orthogonal_to_design(self):
        rng = np.random.default_rng(7)
        x, y = rng.uniform(0, 1, 20), rng.normal(size = 20)
        fit = fit_cubic(list(zip(x, y)))
        design = np.vander(x, 4)
        residual = y - design @ np.asarray(fit.coeffs)
        np.testing.assert_allclose(design.T @ residual, 0, atol = 1e-9)

    def test_input_order_does_not_matter(self):
        rng = np.random.default_rng(11)
        points = list(zip(rng.uniform(0.15, 0.45, 12), rng.uniform(0, 10, 12)))
        shuffled = [points[i] for i in rng.permutation(len(points))]
        self.assertEqual(fit_cubic(points).coeffs, fit_cubic(shuffled).coeffs)

    def test_needs_four_distinct_abscissae(self):
        with self.assertRaises(UnderdeterminedFitError):
            fit_cubic([(0.1, 1), (0.1, 2), (0.2, 3), (0.3, 4), (0.3, 5)])

    def test_published_segments_fit_well(self):
        points = [p for p in reference_points() if 0.15 <= p.x <= 0.45]
        self.assertEqual(len(points), 7)
        for column in ('y_source', 'y_reference'):
            fit = fit_cubic([(p.x, getattr(p, column)) for p in points])
            self.assertGreater(fit.r2, 0.99, msg = column)


class CorrectValueTests(SimpleTestCase):

    def test_source_curve_maps_onto_reference_curve(self):
        f_e = CubicFit((2.0, -1.0, 0.5, 3.0), 1.0)
        f_j = CubicFit((0.3, 0.2, -0.1, 0.05), 1.0)
        for x in np.linspace(0.15, 0.55, 9):
            self.assertAlmostEqual(correct_value(x, f_e(x), f_e, f_j), f_j(x), places = 12)

    def test_self_calibration_is_identity(self):
        fit = CubicFit((1.5, -2.0, 0.3, 4.0), 1.0)
        for x, y in ((0.2, 7.0), (0.5, -3.0), (0.33, 0.0)):
            self.assertAlmostEqual(correct_value(x, y, fit, fit), y, places = 12)

    def test_expanded_form_matches_offset_form(self):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            a = rng.uniform(-1, 1, 4)
            a[0] = rng.choice([-1, 1]) * rng.uniform(0.1, 1)
            b = rng.uniform(-1, 1, 4)
            x, y = rng.uniform(0, 1), rng.uniform(-10, 10)
            f_e, f_j = CubicFit(tuple(a), 1.0), CubicFit(tuple(b), 1.0)
            expected = f_j(x) + (b[0] / a[0]) * (y - f_e(x))
            np.testing.assert_allclose(correct_value(x, y, f_e, f_j), expected, rtol = 1e-10, atol = 1e-10)

    def test_requires_cubic_source(self):
        with self.assertRaises(NonInvertibleFitError):
            correct_value(0.3, 1.0, CubicFit((0.0, 1.0, 0.0, 0.0), 1.0), CubicFit((1.0, 0.0, 0.0, 0.0), 1.0))


class BuildCalibrationTests(SimpleTestCase):

    def setUp(self):
        self.model = build_calibration(reference_points())

    def test_drops_points_below_exclusion(self):
        self.assertEqual(len(self.model.points), 12)
        self.assertEqual(min(p.x for p in self.model.points), 0.15)

    def test_two_segments_with_good_fits(self):
        self.assertEqual([s.domain for s in self.model.segments], [(0.15, 0.45), (0.45, 0.55)])
        for segment in self.model.segments:
            self.assertGreater(segment.source.r2, 0.99)
            self.assertGreater(segment.reference.r2, 0.99)

    def test_boundary_belongs_to_first_segment(self):
        self.assertIs(self.model.segment_for(0.45), self.model.segments[0])
        self.assertIs(self.model.segment_for(0.15), self.model.segments[0])
        self.assertIs(self.model.segment_for(0.5), self.model.segments[1])

    def test_outside_domain(self):
        for x in (0.1, 0.6):
            with self.assertRaises(OutsideCalibratedDomainError):
                apply_calibration(x, 5.0, self.model)

    def test_corrected_values_land_near_reference_column(self):
        for _, (x, source, reference) in published.COMPARISON.items():
            if x < 0.15:
                continue
            result = apply_calibration(x, source, self.model)
            self.assertEqual(result.method, Method.CORRECTED)
            tolerance = 0.01 if x <= 0.45 else 0.05
            self.assertAlmostEqual(result.bf10, reference, delta = tolerance, msg = f'x={x}')

    def test_underdetermined_segment_is_named(self):
        with self.assertRaisesMessage(UnderdeterminedFitError, '0.45-0.5'):
            build_calibration(reference_points(), segments = [(0.15, 0.45), (0.45, 0.5), (0.5, 0.55)])

    def test_segments_must_be_contiguous(self):
        with self.assertRaises(ValidationError):
            build_calibration(reference_points(), segments = [(0.15, 0.3), (0.35, 0.55)])
        with self.assertRaises(EmptyModelError):
            build_calibration(reference_points(), segments = [])


class ApplyCalibrationTests(SimpleTestCase):

    def test_negative_values_are_flagged(self):
        segment = CalibrationSegment(
            domain = (0.0, 1.0),
            source = CubicFit((1.0, 0.0, 0.0, 0.0), 1.0),
            reference = CubicFit((1.0, 0.0, 0.0, -1.0), 1.0),
            closed_left = True,
        )
        model = CalibrationModel(segments = (segment,), exclusion_below = 0.0)
        result = apply_calibration(0.5, 0.5, model)
        self.assertAlmostEqual(result.bf10, -0.5)
        self.assertFalse(result.valid)
        self.assertIsNone(result.posterior_null)


class FitDomainDataTests(SimpleTestCase):

    def setUp(self):
        self.model = build_calibration(reference_points())

    def test_grid_and_points_per_segment(self):
        rows = fit_domain_data(self.model, 0.01)
        grid = [r for r in rows if r.kind == 'grid']
        points = [r for r in rows if r.kind == 'point']
        self.assertEqual(sum(1 for r in grid if r.segment == 1), 31)
        self.assertEqual(sum(1 for r in grid if r.segment == 2), 11)
        self.assertEqual(sum(1 for r in points if r.segment == 1), 7)
        self.assertEqual(sum(1 for r in points if r.segment == 2), 5)

    def test_points_carry_fit_and_observation(self):
        row = next(r for r in fit_domain_data(self.model) if r.kind == 'point' and r.x == 0.3)
        self.assertEqual(row.source_observed, 4.771429)
        self.assertAlmostEqual(row.source_fit, 4.771429, delta = 0.5)

    def test_deterministic(self):
        self.assertEqual(fit_domain_data(self.model), fit_domain_data(self.model))

    def test_empty_model(self):
        with self.assertRaises(EmptyModelError):
            fit_domain_data(CalibrationModel(segments = ()))

    def test_points_outside_every_segment_are_listed_as_excluded(self):
        rows = fit_domain_data(self.model, 0.01, reference_points())
        scatter = [r for r in rows if r.kind in ('point', 'excluded')]
        excluded = [r for r in rows if r.kind == 'excluded']
        self.assertEqual(len(scatter), 14)
        self.assertEqual([r.x for r in excluded], [0.05, 0.1])
        for row in excluded:
            self.assertEqual(row.segment, 0)
            self.assertIsNone(row.source_fit)
            self.assertIsNotNone(row.source_observed)

    def test_overall_fit_spans_the_whole_scatter(self):
        rows = fit_domain_data(self.model, 0.01, reference_points(), overall = True)
        overall = [r for r in rows if r.kind == 'overall']
        self.assertEqual(len(overall), 51)
        self.assertEqual((overall[0].x, overall[-1].x), (0.05, 0.55))
        expected = fit_cubic([(p.x, p.y_reference) for p in reference_points()])
        self.assertAlmostEqual(overall[0].reference_fit, float(expected(0.05)), places = 12)


class ResidualReportTests(SimpleTestCase):

    def test_tolerance_is_larger_of_absolute_and_relative(self):
        small, large = residual_report([('a', 0.03, 0.015), ('b', 1.05, 1.0)])
        self.assertEqual(small.tolerance, 0.02)
        self.assertTrue(small.within)
        self.assertAlmostEqual(large.tolerance, 0.1)
        self.assertTrue(large.within)

    def test_flags_misses(self):
        (row,) = residual_report([(0.5, 0.2, 0.1)])
        self.assertFalse(row.within)
        self.assertAlmostEqual(row.residual, 0.1)
        self.assertEqual(row.label, '0.5')


class ModelDocumentTests(SimpleTestCase):

    def setUp(self):
        self.model = build_calibration(reference_points())

    def test_save_and_load(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = save_model(self.model, Path(tmp) / 'nested' / 'model.json')
            self.assertEqual(load_model(path), self.model)

    def test_document_layout(self):
        document = json.loads(dump_model(self.model))
        self.assertEqual(list(document), ['version', 'exclusion_below', 'segments'])
        self.assertEqual(document['version'], 1)
        self.assertEqual(document['segments'][0]['domain'], [0.15, 0.45])
        self.assertEqual(list(document['segments'][0]['source']), ['coeffs', 'r2'])
        self.assertEqual(len(document['segments'][1]['reference']['coeffs']), 4)

    def test_coefficients_keep_full_precision(self):
        document = json.loads(dump_model(self.model))
        for written, segment in zip(document['segments'], self.model.segments):
            self.assertEqual(tuple(written['source']['coeffs']), segment.source.coeffs)
            self.assertEqual(tuple(written['reference']['coeffs']), segment.reference.coeffs)
            self.assertEqual(written['source']['r2'], segment.source.r2)

    def test_repeating_decimals_are_written_in_full(self):
        fit = CubicFit((1 / 3, -2 / 7, 0.1 + 0.2, 4.0), 0.99)
        segment = CalibrationSegment(domain = (0.15, 0.45), source = fit, reference = fit, closed_left = True)
        text = dump_model(CalibrationModel(segments = (segment,), exclusion_below = 0.15))
        self.assertIn('0.3333333333333333', text)
        self.assertIn('-0.2857142857142857', text)
        self.assertIn('0.30000000000000004', text)

    def test_unsupported_version(self):
        document = json.loads(dump_model(self.model))
        document['version'] = 2
        with self.assertRaisesMessage(InvalidModelError, 'unsupported model version'):
            parse_model(json.dumps(document))

    def test_malformed_documents(self):
        with self.assertRaises(InvalidModelError):
            parse_model('{not json')
        with self.assertRaises(InvalidModelError):
            parse_model(json.dumps({'version': 1, 'exclusion_below': 0.15, 'segments': []}))


class BundledDataTests(SimpleTestCase):

    def test_header_records_provenance(self):
        path = Path(settings.BAYES_FACTOR['REFERENCE_DATA'])
        first = path.read_text(encoding = 'utf-8').splitlines()[0]
        self.assertTrue(first.startswith('# [PAPER]'))

    def test_all_comparison_rows_present(self):
        self.assertEqual([p.x for p in reference_points()], [x for x, _, _ in published.COMPARISON.values()])
