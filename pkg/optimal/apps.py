from django.apps import AppConfig


class OptimalConfig(AppConfig):
    name = 'optimal'
    verbose_name = 'Optimal equivalence tests'
