"""
Option validation for the management commands and rendering of the
documents they print.
"""
import math

from rest_framework import serializers

from bequiv.exceptions import ConfigurationError
from bequiv.fields import FiniteFloatField, LimitsField
from equivtest.serializers import BeLimitsSerializer, IntervalSerializer, TostOutcomeSerializer
from pkdata.serializers import GroupSummarySerializer
from simharness.engine import CoverageSpec, ProcedureSpec
from simharness.serializers import ScenarioSerializer, SimReportSerializer

MODES = ('size', 'power', 'coverage')


def _check_alpha(value):
    if not (0.0 < value < 0.5):
        raise serializers.ValidationError("alpha must satisfy 0 < alpha < 0.5")
    return value


def _check_positive(value, name):
    if not (value > 0 and math.isfinite(value)):
        raise serializers.ValidationError(f"{name} must be positive and finite")
    return value


class AnalyzeOptionsSerializer(serializers.Serializer):
    """
    Options of ``analyze``.

    ``ci_method`` is ``equal``, ``minmax`` or ``unequal:A1,A2`` and is
    returned as a CoverageSpec.
    """
    input = serializers.CharField()
    alpha = serializers.FloatField()
    limits = LimitsField()
    ci_method = serializers.CharField()
    output = serializers.CharField(required=False, allow_null=True, default=None)

    def validate_alpha(self, value):
        return _check_alpha(value)

    def validate_ci_method(self, value):
        try:
            return CoverageSpec.parse(value)
        except ConfigurationError as exc:
            raise serializers.ValidationError(str(exc))


class PowerOptionsSerializer(serializers.Serializer):
    """
    Options of ``power``.

    ``curve`` is a comma-separated list of GMR values; each becomes a
    mu_diff = ln(GMR) row of the CSV.
    """
    gmr = serializers.FloatField(required=False, allow_null=True, default=None)
    sigma = serializers.FloatField()
    n_t = serializers.IntegerField(min_value=2)
    n_r = serializers.IntegerField(min_value=2)
    alpha = serializers.FloatField()
    limits = LimitsField()
    curve = serializers.CharField(required=False, allow_null=True, default=None)
    workers = serializers.IntegerField(min_value=1)

    def validate_sigma(self, value):
        return _check_positive(value, 'sigma')

    def validate_alpha(self, value):
        return _check_alpha(value)

    def validate_gmr(self, value):
        return None if value is None else _check_positive(value, 'gmr')

    def validate_curve(self, value):
        if value is None:
            return None
        try:
            grid = [float(part) for part in value.split(',') if part.strip()]
        except ValueError:
            raise serializers.ValidationError("curve must be a comma-separated list of GMR values")
        if not grid:
            raise serializers.ValidationError("curve needs at least one GMR value")
        for gmr in grid:
            _check_positive(gmr, 'every curve GMR')
        return grid

    def validate(self, attrs):
        if attrs.get('gmr') is None and attrs.get('curve') is None:
            raise serializers.ValidationError({'gmr': "gmr is required unless --curve is given"})
        return attrs


class SampleSizeOptionsSerializer(serializers.Serializer):
    target_power = serializers.FloatField()
    gmr = serializers.FloatField()
    sigma = serializers.FloatField()
    alpha = serializers.FloatField()
    limits = LimitsField()
    ratio = serializers.FloatField()

    def validate_target_power(self, value):
        if not (0.0 < value < 1.0):
            raise serializers.ValidationError("target power must satisfy 0 < P < 1")
        return value

    def validate_gmr(self, value):
        return _check_positive(value, 'gmr')

    def validate_sigma(self, value):
        return _check_positive(value, 'sigma')

    def validate_alpha(self, value):
        return _check_alpha(value)

    def validate_ratio(self, value):
        return _check_positive(value, 'ratio')


class SimulateOptionsSerializer(serializers.Serializer):
    """Options of ``simulate``; ``procedure`` is returned as a ProcedureSpec."""
    procedure = serializers.CharField()
    mu_t = serializers.FloatField()
    mu_r = serializers.FloatField()
    sigma = serializers.FloatField()
    n_t = serializers.IntegerField(min_value=2)
    n_r = serializers.IntegerField(min_value=2)
    alpha = serializers.FloatField()
    limits = LimitsField()
    reps = serializers.IntegerField(min_value=1)
    seed = serializers.IntegerField(min_value=0, max_value=2 ** 64 - 1)
    mode = serializers.ChoiceField(choices=MODES)
    workers = serializers.IntegerField(min_value=1)

    def validate_procedure(self, value):
        try:
            return ProcedureSpec.parse(value)
        except ConfigurationError as exc:
            raise serializers.ValidationError(str(exc))

    def validate_sigma(self, value):
        return _check_positive(value, 'sigma')

    def validate_alpha(self, value):
        return _check_alpha(value)


class CiResultSerializer(serializers.Serializer):
    method = serializers.CharField()
    log = IntervalSerializer()
    ratio = IntervalSerializer()
    reject = serializers.BooleanField()


class AnalysisReportSerializer(serializers.Serializer):
    """
    The ``analyze`` report.

    Fields:
        version (str): toolkit version.
        input_digest (str): sha256 of the input file bytes.
        alpha (float), limits (object): the inputs of the decision.
        summary (object): log-scale group summary.
        gmr (float): geometric mean ratio, exp(diff).
        ci_method (str): interval used for ``ci_log``/``ci_ratio``.
        ci_log, ci_ratio (object): selected interval on both scales.
        ci_decision (bool): strict containment of the selected interval.
        intervals (list): every interval construction computed.
        tost (object): the two one-sided tests.
        p_overall (float): max of the one-sided p-values.
        decision (str): "bioequivalent" or "not bioequivalent".
        degenerate (bool): zero standard error.
        limits_symmetric (bool): theta_l == -theta_u.
    """
    version = serializers.CharField()
    input_digest = serializers.CharField()
    alpha = serializers.FloatField()
    limits = BeLimitsSerializer()
    summary = GroupSummarySerializer()
    gmr = serializers.FloatField()
    ci_method = serializers.CharField()
    ci_log = IntervalSerializer()
    ci_ratio = IntervalSerializer()
    ci_decision = serializers.BooleanField()
    intervals = CiResultSerializer(many=True)
    tost = TostOutcomeSerializer()
    p_overall = FiniteFloatField()
    decision = serializers.CharField()
    degenerate = serializers.BooleanField()
    limits_symmetric = serializers.BooleanField()


class SampleSizeReportSerializer(serializers.Serializer):
    version = serializers.CharField()
    target_power = serializers.FloatField()
    gmr = serializers.FloatField()
    mu_diff = serializers.FloatField()
    sigma = serializers.FloatField()
    alpha = serializers.FloatField()
    ratio = serializers.FloatField()
    limits = BeLimitsSerializer()
    n_t = serializers.IntegerField()
    n_r = serializers.IntegerField()
    achieved_power = serializers.FloatField()


class SimulationReportSerializer(serializers.Serializer):
    version = serializers.CharField()
    mode = serializers.CharField()
    scenario = ScenarioSerializer()
    report = SimReportSerializer()
