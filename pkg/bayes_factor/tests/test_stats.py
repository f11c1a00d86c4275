import math

from django.test import SimpleTestCase
from scipy import stats as reference

from bayes_factor import published
from bayes_factor.exceptions import DegenerateDeviationsError, DegenerateSamplesError, ValidationError
from bayes_factor.stats import f_upper_tail_p, levene_test, t_two_tailed_p, two_sample_ttest


class TailProbabilityTests(SimpleTestCase):

    def test_t_tail_matches_scipy(self):
        for t, df in ((1.053, 22), (-2.5, 5), (0.1, 100), (4.0, 12.756)):
            self.assertAlmostEqual(t_two_tailed_p(t, df), 2 * reference.t.sf(abs(t), df), places = 12)

    def test_f_tail_matches_scipy(self):
        for f, d1, d2 in ((3.02, 1, 22), (0.5, 2, 10), (12.0, 3, 40)):
            self.assertAlmostEqual(f_upper_tail_p(f, d1, d2), reference.f.sf(f, d1, d2), places = 12)

    def test_zero_statistic(self):
        self.assertEqual(t_two_tailed_p(0.0, 10), 1.0)
        self.assertEqual(f_upper_tail_p(0.0, 1, 10), 1.0)


class LeveneTests(SimpleTestCase):

    def test_matches_scipy_mean_centred(self):
        a, b = [1.2, 3.4, 2.2, 5.1, 4.4], [2.0, 2.1, 1.9, 2.5, 2.2, 2.4]
        f, p = levene_test(a, b)
        expected = reference.levene(a, b, center = 'mean')
        self.assertAlmostEqual(f, expected.statistic, places = 10)
        self.assertAlmostEqual(p, expected.pvalue, places = 10)

    def test_identical_groups(self):
        f, p = levene_test([1, 2, 4, 7], [1, 2, 4, 7])
        self.assertAlmostEqual(f, 0.0)
        self.assertAlmostEqual(p, 1.0)

    def test_identical_groups_with_constant_deviations(self):
        for group in ([1, 3], [1, 1, 3, 3], [5, 5, 5]):
            self.assertEqual(levene_test(group, group), (0.0, 1.0), msg = group)

    def test_equal_constant_deviations_across_groups(self):
        self.assertEqual(levene_test([1, 1, 3, 3], [10, 12]), (0.0, 1.0))

    def test_degenerate_deviations(self):
        with self.assertRaisesMessage(DegenerateDeviationsError, 'degenerate deviations'):
            levene_test([1, 1, 3, 3], [2, 2, 2, 2])

    def test_group_size(self):
        with self.assertRaises(ValidationError):
            levene_test([1], [1, 2, 3])


class TwoSampleTTestTests(SimpleTestCase):

    def test_hand_computed_example(self):
        report = two_sample_ttest([1, 2, 3, 4], [2, 3, 4, 5])
        self.assertAlmostEqual(report.pooled.mean_diff, -1.0)
        self.assertAlmostEqual(report.pooled.se, math.sqrt(5 / 6))
        self.assertAlmostEqual(report.pooled.t, -1.0954451150103321)
        self.assertEqual(report.pooled.df, 6)

    def test_matches_scipy(self):
        a, b = [5.1, 4.9, 6.2, 5.8, 6.0, 5.5], [4.1, 4.8, 3.9, 5.0, 4.4, 4.6, 4.2, 5.3]
        report = two_sample_ttest(a, b)
        pooled = reference.ttest_ind(a, b)
        welch = reference.ttest_ind(a, b, equal_var = False)
        self.assertAlmostEqual(report.pooled.t, pooled.statistic, places = 10)
        self.assertAlmostEqual(report.pooled.p, pooled.pvalue, places = 10)
        self.assertAlmostEqual(report.welch.t, welch.statistic, places = 10)
        self.assertAlmostEqual(report.welch.p, welch.pvalue, places = 10)

    def test_identical_groups(self):
        report = two_sample_ttest([1, 2, 4, 7], [1, 2, 4, 7])
        self.assertEqual(report.pooled.t, 0)
        self.assertEqual(report.pooled.p, 1.0)
        self.assertEqual(report.welch.p, 1.0)
        self.assertEqual(report.pooled.mean_diff, 0)

    def test_confidence_interval_contains_mean_difference(self):
        report = two_sample_ttest([1, 2, 3, 4], [2, 3, 4, 5])
        for row in (report.pooled, report.welch):
            self.assertLess(row.ci95_lo, row.mean_diff)
            self.assertLess(row.mean_diff, row.ci95_hi)

    def test_welch_df_bounded_by_pooled_df(self):
        report = two_sample_ttest([1.0, 1.1, 0.9], [3.0, 8.0, 1.0, 6.5, 2.2])
        self.assertLessEqual(report.welch.df, report.pooled.df)
        self.assertGreater(report.welch.df, min(3, 5) - 1)

    def test_scale_equivariance(self):
        a, b = [1.0, 2.5, 3.1, 4.7], [2.2, 3.3, 4.9, 5.0, 6.1]
        base = two_sample_ttest(a, b)
        scaled = two_sample_ttest([3 * v for v in a], [3 * v for v in b])
        self.assertAlmostEqual(scaled.pooled.t, base.pooled.t, places = 12)
        self.assertAlmostEqual(scaled.welch.t, base.welch.t, places = 12)
        self.assertAlmostEqual(scaled.pooled.mean_diff, 3 * base.pooled.mean_diff, places = 12)

    def test_degenerate_levene_is_skipped(self):
        report = two_sample_ttest([1, 1, 3, 3], [2, 2, 2, 2])
        self.assertIsNone(report.levene_f)
        self.assertIsNone(report.levene_p)
        self.assertAlmostEqual(report.pooled.mean_diff, 0.0)

    def test_degenerate_samples(self):
        with self.assertRaisesMessage(DegenerateSamplesError, 'degenerate samples'):
            two_sample_ttest([2, 2, 2], [5, 5])

    def test_invalid_groups(self):
        with self.assertRaises(ValidationError):
            two_sample_ttest([1], [1, 2])
        with self.assertRaises(ValidationError):
            two_sample_ttest([1, float('nan')], [1, 2])


class PublishedComparisonTests(SimpleTestCase):
    """Corrected column against the reference column"""

    def setUp(self):
        self.report = two_sample_ttest(*published.corrected_pairs())

    def test_levene(self):
        self.assertAlmostEqual(self.report.levene_f, 3.020, delta = 0.01)
        self.assertAlmostEqual(self.report.levene_p, 0.096, delta = 0.005)

    def test_pooled_row(self):
        pooled = self.report.pooled
        self.assertAlmostEqual(pooled.t, 1.053, delta = 0.005)
        self.assertEqual(pooled.df, 22)
        self.assertAlmostEqual(pooled.p, 0.304, delta = 0.005)
        self.assertAlmostEqual(pooled.ci95_lo, -0.128866, delta = 5e-4)
        self.assertAlmostEqual(pooled.ci95_hi, 0.39488459, delta = 5e-4)

    def test_welch_row(self):
        welch = self.report.welch
        self.assertAlmostEqual(welch.df, 12.756, delta = 0.01)
        self.assertAlmostEqual(welch.p, 0.312, delta = 0.005)
        self.assertAlmostEqual(welch.ci95_lo, -0.140320, delta = 5e-4)
        self.assertAlmostEqual(welch.ci95_hi, 0.40633866, delta = 5e-4)

    def test_mean_difference_and_standard_error(self):
        self.assertAlmostEqual(self.report.pooled.mean_diff, 0.13300950, delta = 1e-6)
        self.assertEqual(self.report.pooled.mean_diff, self.report.welch.mean_diff)
        self.assertAlmostEqual(self.report.pooled.se, 0.12627344, delta = 1e-6)
        # equal group sizes make the pooled and unpooled errors coincide
        self.assertAlmostEqual(self.report.welch.se, self.report.pooled.se, places = 12)
