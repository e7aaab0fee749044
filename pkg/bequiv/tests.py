from django.test import SimpleTestCase

from bequiv.conf import DEFAULTS, toolkit_setting


class ToolkitSettingTests(SimpleTestCase):
    """
    Test suite for the EQUIVALENCE settings lookup.
    """

    def test_empty_block_gives_defaults(self):
        """
        Test that an empty EQUIVALENCE block falls back to DEFAULTS.
        """
        with self.settings(EQUIVALENCE={}):
            for name, value in DEFAULTS.items():
                self.assertEqual(toolkit_setting(name), value)
        self.assertEqual(toolkit_setting('SIMULATION')['WORKERS'], 1)

    def test_nested_override_merges(self):
        """
        Test that overriding one simulation key keeps the others.
        """
        with self.settings(EQUIVALENCE={'SIMULATION': {'WORKERS': 4}}):
            simulation = toolkit_setting('SIMULATION')
        self.assertEqual(simulation['WORKERS'], 4)
        self.assertEqual(simulation['REPLICATIONS'], DEFAULTS['SIMULATION']['REPLICATIONS'])

    def test_scalar_override_and_defaults_untouched(self):
        """
        Test that scalar overrides replace the default without mutating DEFAULTS.
        """
        with self.settings(EQUIVALENCE={'SAMPLE_SIZE_CAP': 10}):
            self.assertEqual(toolkit_setting('SAMPLE_SIZE_CAP'), 10)
        self.assertEqual(DEFAULTS['SAMPLE_SIZE_CAP'], 100000)

    def test_unknown_name(self):
        """
        Test that an unknown setting name raises KeyError.
        """
        with self.assertRaises(KeyError):
            toolkit_setting('NO_SUCH_SETTING')
