import math

from rest_framework import serializers

from .datasets import Arm


class PkRecordSerializer(serializers.Serializer):
    """
    Validates one row of a PK CSV file.

    Fields:
        subject_id (str): opaque subject identifier.
        arm (str): 'T' or 'R', case-insensitive; normalised to an Arm value.
        value (float): the PK measurement (AUC, Cmax, ...) in original
            units; must be finite and strictly positive.
    """
    subject_id = serializers.CharField(max_length=255, trim_whitespace=True)
    arm = serializers.CharField(max_length=16, trim_whitespace=True)
    value = serializers.FloatField()

    def validate_arm(self, value):
        label = value.upper()
        if label not in Arm.values:
            raise serializers.ValidationError(f"unknown arm label '{value}' (expected T or R)")
        return Arm(label)

    def validate_value(self, value):
        if not math.isfinite(value):
            raise serializers.ValidationError("value must be finite")
        if value <= 0:
            raise serializers.ValidationError(f"value must be positive, got {value}")
        return value


class GroupSummarySerializer(serializers.Serializer):
    """Renders a GroupSummary for reports (log-scale quantities)."""
    n_t = serializers.IntegerField()
    n_r = serializers.IntegerField()
    xbar_t = serializers.FloatField()
    xbar_r = serializers.FloatField()
    s_t = serializers.FloatField()
    s_r = serializers.FloatField()
    s_p = serializers.FloatField()
    se_diff = serializers.FloatField()
    df = serializers.IntegerField()
    diff = serializers.FloatField()
