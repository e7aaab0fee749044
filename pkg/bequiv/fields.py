import math

from rest_framework import serializers


class FiniteFloatField(serializers.FloatField):
    """
    Float field that renders infinities and NaN as null.

    Degenerate studies (zero standard error) produce infinite test
    statistics; strict JSON has no representation for them.
    """

    def to_representation(self, value):
        value = float(value)
        return value if math.isfinite(value) else None


class LimitsField(serializers.Field):
    """
    Parses ``LO,HI`` ratio-scale limits into a (lo, hi) float pair.
    """
    default_error_messages = {
        'invalid': 'limits must look like LO,HI (e.g. 0.8,1.25)',
        'order': 'limits must satisfy LO < HI',
        'positive': 'limits must be positive',
        'bracket': 'limits must satisfy LO < 1 < HI',
    }

    def to_internal_value(self, data):
        if isinstance(data, (list, tuple)):
            parts = list(data)
        else:
            parts = str(data).split(',')
        if len(parts) != 2:
            self.fail('invalid')
        try:
            lo, hi = (float(str(p).strip()) for p in parts)
        except ValueError:
            self.fail('invalid')
        if not (math.isfinite(lo) and math.isfinite(hi)):
            self.fail('invalid')
        if lo <= 0 or hi <= 0:
            self.fail('positive')
        if not lo < hi:
            self.fail('order')
        if not lo < 1.0 < hi:
            self.fail('bracket')
        return lo, hi

    def to_representation(self, value):
        return [float(value[0]), float(value[1])]
