import io
import math

import numpy as np
from django.test import SimpleTestCase

from bequiv.exceptions import DomainError, InfeasibleError
from equivtest.limits import BeLimits
from power.exact import (
    PowerParams, exact_power, power_curve, sample_size, write_power_curve,
)
from simharness.engine import Scenario, estimate_rejection_rate


def params(mu_diff=0.0, n=20, sigma=0.25, alpha=0.05, limits=None):
    return PowerParams(
        mu_diff=mu_diff, n_t=n, n_r=n, sigma=sigma, alpha=alpha,
        limits=limits or BeLimits.default(),
    )


class ExactPowerTest(SimpleTestCase):
    """Test the Owen's Q form of TOST power."""

    def test_huge_sigma(self):
        """Test an interval far wider than the limits has almost no power."""
        for n in (2, 6, 12, 24):
            self.assertLess(exact_power(params(sigma=10.0, n=n)), 1e-6)

    def test_tiny_sigma(self):
        """Test near-degenerate data at mu_diff = 0 almost always concludes equivalence."""
        self.assertGreater(exact_power(params(sigma=0.01, n=24)), 0.9999)

    def test_boundary_size(self):
        """Test power at theta_u tends to alpha as sigma shrinks."""
        limits = BeLimits.default()
        power = exact_power(params(mu_diff=limits.theta_u, sigma=0.01, n=24))
        self.assertAlmostEqual(power, 0.05, delta=0.002)

    def test_unit_interval(self):
        """Test power stays in [0, 1] across a range of inputs."""
        for sigma in (0.05, 0.3, 2.0):
            for mu in (-0.5, -0.1, 0.0, 0.2, 0.5):
                power = exact_power(params(mu_diff=mu, sigma=sigma, n=8))
                self.assertGreaterEqual(power, 0.0)
                self.assertLessEqual(power, 1.0)

    def test_non_increasing_in_sigma(self):
        """Test power falls as the SD grows."""
        for mu in (0.0, 0.1):
            values = [exact_power(params(mu_diff=mu, sigma=s)) for s in np.linspace(0.1, 0.6, 11)]
            self.assertTrue(all(b <= a + 1e-9 for a, b in zip(values, values[1:])))

    def test_unbalanced(self):
        """Test unequal arms use sqrt(1/n_t + 1/n_r) and stay between the balanced bounds."""
        limits = BeLimits.default()
        small = exact_power(PowerParams(0.05, 12, 12, 0.25, 0.05, limits))
        mixed = exact_power(PowerParams(0.05, 12, 30, 0.25, 0.05, limits))
        large = exact_power(PowerParams(0.05, 30, 30, 0.25, 0.05, limits))
        self.assertLess(small, mixed)
        self.assertLess(mixed, large)

    def test_invalid_params(self):
        """Test PowerParams validation."""
        with self.assertRaises(DomainError):
            params(sigma=0.0)
        with self.assertRaises(DomainError):
            params(n=1)
        with self.assertRaises(DomainError):
            params(alpha=0.5)

    def test_monte_carlo_grid(self):
        """Test exact power against simulated TOST rejection rates on a 3x3 grid."""
        limits = BeLimits.default()
        for sigma in (0.15, 0.25, 0.4):
            for gmr in (1.0, 1.05, 1.15):
                mu = math.log(gmr)
                scenario = Scenario.from_difference(mu, sigma, 20, 20, 0.05, limits)
                report = estimate_rejection_rate('tost', scenario, 200_000, seed=2024)
                exact = exact_power(params(mu_diff=mu, sigma=sigma))
                self.assertLessEqual(abs(exact - report.rate), 3 * report.std_error)


class PowerCurveTest(SimpleTestCase):
    """Test power curves and their CSV output."""

    def test_singleton(self):
        """Test a one-point grid matches the scalar call."""
        (row,) = power_curve(params(), [0.0])
        self.assertEqual(row.mu_diff, 0.0)
        self.assertEqual(row.power, exact_power(params()))

    def test_symmetric_grid(self):
        """Test mirror-image differences have the same power."""
        grid = np.linspace(-0.22, 0.22, 23)
        rows = power_curve(params(), grid)
        for left, right in zip(rows, reversed(rows)):
            self.assertAlmostEqual(left.power, right.power, delta=1e-9)

    def test_decreasing_away_from_zero(self):
        """Test power falls as |mu_diff| grows."""
        rows = power_curve(params(), np.linspace(0.0, 0.22, 12))
        powers = [row.power for row in rows]
        self.assertTrue(all(b < a for a, b in zip(powers, powers[1:])))

    def test_workers_keep_order(self):
        """Test a parallel curve equals the serial one row for row."""
        grid = [0.1, -0.05, 0.0, 0.2]
        self.assertEqual(power_curve(params(), grid, workers=2), power_curve(params(), grid))

    def test_empty_grid(self):
        """Test an empty grid is rejected."""
        with self.assertRaises(DomainError):
            power_curve(params(), [])

    def test_csv(self):
        """Test the mu_diff,power header and one line per row."""
        out = io.StringIO()
        write_power_curve(power_curve(params(), [0.0, 0.1]), out)
        lines = out.getvalue().splitlines()
        self.assertEqual(lines[0], 'mu_diff,power')
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[1].startswith('0.0,'))


class SampleSizeTest(SimpleTestCase):
    """Test the sample-size search."""

    def setUp(self):
        self.limits = BeLimits.default()

    def test_linear_scan_oracle(self):
        """Test the result equals a direct scan over n = 2..200."""
        result = sample_size(0.8, 0.0, 0.25, 0.05, self.limits)
        oracle = next(
            n for n in range(2, 201)
            if exact_power(PowerParams(0.0, n, n, 0.25, 0.05, self.limits)) >= 0.8
        )
        self.assertEqual((result.n_t, result.n_r), (oracle, oracle))
        self.assertGreaterEqual(result.power, 0.8)
        previous = exact_power(PowerParams(0.0, oracle - 1, oracle - 1, 0.25, 0.05, self.limits))
        self.assertLess(previous, 0.8)

    def test_allocation_ratio(self):
        """Test a 2:1 allocation keeps n_t = 2 n_r."""
        result = sample_size(0.8, 0.05, 0.3, 0.05, self.limits, ratio=2.0)
        self.assertEqual(result.n_t, 2 * result.n_r)
        self.assertGreaterEqual(result.power, 0.8)

    def test_boundary_infeasible(self):
        """Test mu_diff on a limit is infeasible."""
        with self.assertRaises(InfeasibleError):
            sample_size(0.8, self.limits.theta_u, 0.25, 0.05, self.limits)

    def test_cap_exceeded(self):
        """Test a cap below the required size is infeasible."""
        with self.assertRaises(InfeasibleError):
            sample_size(0.9, 0.15, 0.5, 0.05, self.limits, cap=10)

    def test_invalid_target(self):
        """Test targets outside (0, 1) are domain errors."""
        with self.assertRaises(DomainError):
            sample_size(1.0, 0.0, 0.25, 0.05, self.limits)
