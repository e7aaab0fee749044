from django.apps import AppConfig


class PkdataConfig(AppConfig):
    name = 'pkdata'
    verbose_name = 'PK data'
