from rest_framework import serializers

from bequiv.fields import FiniteFloatField


class IntervalSerializer(serializers.Serializer):
    lower = FiniteFloatField()
    upper = FiniteFloatField()


class BeLimitsSerializer(serializers.Serializer):
    """Limits on both scales; theta_* are logs of delta_*."""
    theta_l = serializers.FloatField()
    theta_u = serializers.FloatField()
    delta_l = serializers.FloatField()
    delta_u = serializers.FloatField()
    is_symmetric = serializers.BooleanField()


class TostOutcomeSerializer(serializers.Serializer):
    """
    Renders a TostOutcome.

    Fields:
        t_lower, t_upper (float|null): one-sided statistics, null when infinite.
        critical (float): t_{1-alpha, df}.
        p_lower, p_upper, p_overall (float): p-values; p_overall is the
            larger of the two one-sided p-values.
        reject (bool): both one-sided tests reject.
        degenerate (bool): zero standard error, limiting rule applied.
    """
    t_lower = FiniteFloatField()
    t_upper = FiniteFloatField()
    critical = serializers.FloatField()
    p_lower = serializers.FloatField()
    p_upper = serializers.FloatField()
    p_overall = serializers.FloatField()
    reject = serializers.BooleanField()
    degenerate = serializers.BooleanField()
