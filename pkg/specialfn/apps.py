from django.apps import AppConfig


class SpecialfnConfig(AppConfig):
    name = 'specialfn'
    verbose_name = 'Special functions'
