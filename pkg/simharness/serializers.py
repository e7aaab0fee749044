from rest_framework import serializers

from bequiv.fields import FiniteFloatField
from equivtest.serializers import BeLimitsSerializer


class ScenarioSerializer(serializers.Serializer):
    """Renders a Scenario; mu_diff is mu_t - mu_r."""
    mu_t = serializers.FloatField()
    mu_r = serializers.FloatField()
    mu_diff = serializers.FloatField()
    sigma = serializers.FloatField()
    n_t = serializers.IntegerField()
    n_r = serializers.IntegerField()
    alpha = serializers.FloatField()
    limits = BeLimitsSerializer()


class SimReportSerializer(serializers.Serializer):
    """
    Renders a SimReport.

    Fields:
        replications (int): simulated studies.
        hits (int): rejections, or intervals covering mu_diff.
        rate (float): hits / replications.
        std_error (float): binomial standard error of rate.
        seed (int): master seed; with replications and block_size it
            reproduces the run exactly.
        procedure (str): procedure or coverage method identifier.
        block_size (int): replications per random stream block.
    """
    replications = serializers.IntegerField()
    hits = serializers.IntegerField()
    rate = serializers.FloatField()
    std_error = serializers.FloatField()
    seed = serializers.IntegerField()
    procedure = serializers.CharField()
    block_size = serializers.IntegerField()


class EstimateCheckSerializer(serializers.Serializer):
    empirical = serializers.FloatField()
    predicted = serializers.FloatField()
    std_error = FiniteFloatField()
    z_score = FiniteFloatField()
