import io
import math
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from bequiv.exceptions import DomainError, InsufficientDataError, ParseError
from pkdata.datasets import Arm, parse_csv
from pkdata.summaries import (
    GroupSummary, geometric_mean, gm_expectation, summarize, summarize_logs,
)

FIXTURES = Path(__file__).resolve().parent.parent / 'fixtures'


def csv_stream(text):
    return io.StringIO(text)


class ParseCsvTest(SimpleTestCase):
    """
    Test reading PK CSV files.
    """

    def test_bundled_fixture(self):
        """
        Test the bundled 24 + 24 study parses.
        """
        dataset = parse_csv(FIXTURES / 'bundled_study.csv')
        self.assertEqual(dataset.count(Arm.TEST), 24)
        self.assertEqual(dataset.count(Arm.REFERENCE), 24)
        self.assertEqual(len(dataset), 48)

    def test_arm_case_insensitive(self):
        """
        Test arm labels are normalised regardless of case.
        """
        dataset = parse_csv(csv_stream("subject_id,arm,value\n1,t,10\n2,r,12\n"))
        self.assertEqual([r.arm for r in dataset.records], [Arm.TEST, Arm.REFERENCE])

    def test_binary_stream(self):
        """
        Test binary streams with a BOM are decoded.
        """
        data = "\ufeffsubject_id,arm,value\n1,T,10\n2,R,12\n".encode('utf-8')
        self.assertEqual(len(parse_csv(io.BytesIO(data))), 2)

    def test_negative_value_reports_row(self):
        """
        Test a non-positive value names the offending data row.
        """
        text = "subject_id,arm,value\n1,T,10\n2,T,11\n3,R,9\n4,R,8\n5,R,-3\n"
        with self.assertRaises(ParseError) as ctx:
            parse_csv(csv_stream(text))
        self.assertEqual(ctx.exception.row, 5)
        self.assertIn('row 5', str(ctx.exception))

    def test_non_numeric_value(self):
        """
        Test a non-numeric value is a parse error.
        """
        with self.assertRaises(ParseError) as ctx:
            parse_csv(csv_stream("subject_id,arm,value\n1,T,abc\n2,R,1\n"))
        self.assertEqual(ctx.exception.row, 1)

    def test_unknown_arm(self):
        """
        Test an arm other than T or R is rejected.
        """
        with self.assertRaises(ParseError):
            parse_csv(csv_stream("subject_id,arm,value\n1,X,10\n2,R,1\n"))

    def test_header_only(self):
        """
        Test a file without data rows reports an empty arm.
        """
        with self.assertRaises(ParseError) as ctx:
            parse_csv(csv_stream("subject_id,arm,value\n"))
        self.assertIn('empty arm', str(ctx.exception))

    def test_missing_column(self):
        """
        Test a missing required column is reported against the header.
        """
        with self.assertRaises(ParseError) as ctx:
            parse_csv(csv_stream("subject_id,value\n1,10\n"))
        self.assertEqual(ctx.exception.row, 0)
        self.assertIn('arm', str(ctx.exception))


class GeometricMeanTest(SimpleTestCase):
    """
    Test geometric means and their lognormal expectation.
    """

    def test_small_examples(self):
        """
        Test [2, 8] gives 4 and [1, 2, 3, 4] gives 24 ** (1/4).
        """
        self.assertAlmostEqual(geometric_mean([2, 8]), 4.0, places=12)
        self.assertAlmostEqual(geometric_mean([1, 2, 3, 4]), 24 ** 0.25, places=12)

    def test_rejects_non_positive(self):
        """
        Test zero, negative and empty inputs are domain errors.
        """
        for values in ([1.0, 0.0], [-1.0, 2.0], []):
            with self.assertRaises(DomainError):
                geometric_mean(values)

    def test_log_identity(self):
        """
        Test GM(x) equals exp(mean(log x)) to 1e-12 relative on random positive data.
        """
        rng = np.random.default_rng(99)
        for _ in range(1000):
            values = rng.lognormal(rng.normal(0, 2), rng.uniform(0.01, 1.5), int(rng.integers(1, 40)))
            gm = geometric_mean(values)
            self.assertLessEqual(abs(gm - math.exp(np.mean(np.log(values)))), 1e-12 * gm)

    def test_gm_expectation(self):
        """
        Test exp(mu + sigma^2 / (2n)) and its validation.
        """
        self.assertAlmostEqual(gm_expectation(0.0, 1.0, 1), math.exp(0.5), places=14)
        self.assertEqual(gm_expectation(1.0, 0.0, 10), math.e)
        with self.assertRaises(DomainError):
            gm_expectation(0.0, 1.0, 0)


class SummarizeTest(SimpleTestCase):
    """
    Test the pooled log-scale summary.
    """

    def test_worked_example_fixture(self):
        """
        Test the 12 + 12 fixture gives diff 0.05, se 0.08 and df 22.
        """
        summary = summarize(parse_csv(FIXTURES / 'worked_example.csv'))
        self.assertEqual((summary.n_t, summary.n_r, summary.df), (12, 12, 22))
        self.assertAlmostEqual(summary.diff, 0.05, delta=1e-12)
        self.assertAlmostEqual(summary.se_diff, 0.08, delta=1e-12)
        self.assertAlmostEqual(summary.gmr, math.exp(0.05), delta=1e-12)

    def test_pooled_formula(self):
        """
        Test s_p and se_diff against the textbook formulas.
        """
        log_t = [0.1, 0.4, 0.2, 0.3]
        log_r = [0.0, 0.5, 0.1]
        summary = summarize_logs(log_t, log_r)
        s_t = np.std(log_t, ddof=1)
        s_r = np.std(log_r, ddof=1)
        s_p = math.sqrt((3 * s_t ** 2 + 2 * s_r ** 2) / 5)
        self.assertAlmostEqual(summary.s_p, s_p, places=14)
        self.assertAlmostEqual(summary.se_diff, s_p * math.sqrt(1 / 4 + 1 / 3), places=14)
        self.assertEqual(summary.df, 5)

    def test_zero_variance(self):
        """
        Test constant arms give exactly zero spread.
        """
        summary = summarize_logs([1.0, 1.0, 1.0], [0.5, 0.5])
        self.assertEqual(summary.s_p, 0.0)
        self.assertEqual(summary.se_diff, 0.0)
        self.assertEqual(summary.diff, 0.5)

    def test_swap_negates_diff(self):
        """
        Test swapping arms negates diff and keeps se_diff.
        """
        rng = np.random.default_rng(1)
        log_t, log_r = rng.normal(0, 0.3, 9), rng.normal(0.1, 0.3, 13)
        forward = summarize_logs(log_t, log_r)
        backward = summarize_logs(log_r, log_t)
        self.assertAlmostEqual(forward.diff, -backward.diff, places=14)
        self.assertAlmostEqual(forward.se_diff, backward.se_diff, places=14)

    def test_order_invariant(self):
        """
        Test permuting the records leaves the summary unchanged.
        """
        rng = np.random.default_rng(2)
        log_t, log_r = rng.normal(0, 0.3, 20), rng.normal(0, 0.3, 20)
        self.assertEqual(
            summarize_logs(log_t, log_r),
            summarize_logs(rng.permutation(log_t), rng.permutation(log_r)),
        )

    def test_insufficient_data(self):
        """
        Test fewer than two observations in an arm is rejected.
        """
        with self.assertRaises(InsufficientDataError):
            summarize_logs([0.1], [0.2, 0.3])

    def test_from_moments(self):
        """
        Test a summary built from reported moments carries them through.
        """
        summary = GroupSummary.from_moments(diff=0.05, se_diff=0.08, df=22)
        self.assertEqual((summary.n_t, summary.n_r), (12, 12))
        self.assertEqual(summary.diff, 0.05)
        self.assertAlmostEqual(summary.s_p * summary.se_scale, 0.08, places=15)
