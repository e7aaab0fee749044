from django.apps import AppConfig


class EquivtestConfig(AppConfig):
    name = 'equivtest'
    verbose_name = 'Equivalence tests'
