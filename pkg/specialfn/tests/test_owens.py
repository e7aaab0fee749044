import numpy as np
from django.test import SimpleTestCase
from scipy import stats

from bequiv.exceptions import DomainError, NumericalError
from specialfn.owens import QuadratureSpec, owens_q


class QuadratureSpecTest(SimpleTestCase):
    """Test QuadratureSpec validation and settings lookup."""

    def test_defaults(self):
        """Test the default tolerances and subdivision budget."""
        spec = QuadratureSpec()
        self.assertEqual(spec.rel_tolerance, 1e-10)
        self.assertEqual(spec.abs_tolerance, 1e-12)
        self.assertEqual(spec.max_subdivisions, 1024)

    def test_from_settings(self):
        """Test tolerances are read from the EQUIVALENCE settings block."""
        with self.settings(EQUIVALENCE={'QUADRATURE': {'REL_TOLERANCE': 1e-8}}):
            spec = QuadratureSpec.from_settings()
        self.assertEqual(spec.rel_tolerance, 1e-8)
        self.assertEqual(spec.abs_tolerance, 1e-12)

    def test_invalid(self):
        """Test non-positive tolerances and subdivisions are rejected."""
        with self.assertRaises(DomainError):
            QuadratureSpec(rel_tolerance=0.0)
        with self.assertRaises(DomainError):
            QuadratureSpec(max_subdivisions=0)


class OwensQTest(SimpleTestCase):
    """Test Owen's Q against closed forms, the noncentral t and its properties."""

    def test_empty_interval(self):
        """Test a zero-length interval integrates to zero."""
        self.assertEqual(owens_q(5, 2.0, 0.3, 1.5, 1.5), 0.0)

    def test_saturated_normal_factor(self):
        """Test a huge negative delta leaves the chi(5) density, integrating to one."""
        self.assertAlmostEqual(owens_q(5, 2.0, -1e6, 0.0, 50.0), 1.0, delta=1e-8)

    def test_noncentral_t_oracle(self):
        """Test Q_5(1, 0.5; 0, 50) equals the noncentral t CDF."""
        expected = stats.nct.cdf(1.0, 5, 0.5)
        self.assertAlmostEqual(owens_q(5, 1.0, 0.5, 0.0, 50.0), expected, delta=5e-4)
        # The quadrature is far tighter than the Monte Carlo tolerance.
        self.assertAlmostEqual(owens_q(5, 1.0, 0.5, 0.0, 50.0), expected, delta=1e-7)

    def test_noncentral_t_monte_carlo(self):
        """Test against noncentral t draws built from Z and chi variates."""
        rng = np.random.default_rng(7)
        n = 10**6
        z = rng.standard_normal(n)
        chi = np.sqrt(rng.chisquare(5, n))
        draws = (z + 0.5) / (chi / np.sqrt(5))
        estimate = np.mean(draws <= 1.0)
        se = np.sqrt(estimate * (1 - estimate) / n)
        self.assertLess(abs(owens_q(5, 1.0, 0.5, 0.0, 50.0) - estimate), 4 * se)

    def test_interval_additivity(self):
        """Test Q(a, c) = Q(a, b) + Q(b, c)."""
        for v, t, delta in ((5, 1.0, 0.5), (22, -1.7171, -2.0), (46, 1.68, 10.0)):
            for a, b, c in ((0.0, 1.0, 3.0), (0.5, 4.0, 9.0), (0.0, 6.0, 200.0)):
                whole = owens_q(v, t, delta, a, c)
                parts = owens_q(v, t, delta, a, b) + owens_q(v, t, delta, b, c)
                self.assertAlmostEqual(whole, parts, delta=1e-9)

    def test_monotone_in_delta(self):
        """Test Q is non-increasing in delta."""
        values = [owens_q(10, 1.3, d, 0.0, 8.0) for d in np.linspace(-6, 6, 49)]
        self.assertTrue(all(b <= a + 1e-10 for a, b in zip(values, values[1:])))

    def test_monotone_in_upper_limit(self):
        """Test Q is non-decreasing in b."""
        values = [owens_q(10, 1.3, 0.4, 0.0, b) for b in np.linspace(0, 12, 49)]
        self.assertTrue(all(b >= a - 1e-10 for a, b in zip(values, values[1:])))

    def test_value_in_unit_interval(self):
        """Test results stay in [0, 1]."""
        for t in (-3.0, 0.0, 3.0):
            for delta in (-20.0, 0.0, 20.0):
                value = owens_q(3, t, delta, 0.0, 30.0)
                self.assertGreaterEqual(value, 0.0)
                self.assertLessEqual(value, 1.0)

    def test_domain_errors(self):
        """Test a > b, v < 1 and non-finite limits are rejected."""
        with self.assertRaises(DomainError):
            owens_q(5, 1.0, 0.0, 2.0, 1.0)
        with self.assertRaises(DomainError):
            owens_q(0.5, 1.0, 0.0, 0.0, 1.0)
        with self.assertRaises(DomainError):
            owens_q(5, 1.0, 0.0, 0.0, float('inf'))

    def test_non_convergence(self):
        """Test an exhausted subdivision budget raises NumericalError."""
        tight = QuadratureSpec(rel_tolerance=1e-15, abs_tolerance=1e-300, max_subdivisions=1)
        with self.assertRaises(NumericalError) as ctx:
            owens_q(46, 0.0, 0.0, 10.0, 40.0, tight)
        self.assertIsNotNone(ctx.exception.achieved_tolerance)
