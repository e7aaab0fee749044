"""
Django settings for the bequiv project.

bequiv runs as a command-line toolkit: there are no views, templates or
database tables, only the apps whose management commands and serializers
carry the bioequivalence computations.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
# Nothing is signed by the toolkit; Django only requires the setting to exist.
SECRET_KEY = 'django-insecure-bequiv-command-line-toolkit'

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    # Custom apps
    'specialfn',
    'pkdata',
    'equivtest',
    'power',
    'optimal',
    'simharness',
    'reports',
]

# No database: every computation is a pure function of its inputs.
DATABASES = {}

# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Logging goes to stderr so that JSON and CSV on stdout stay machine-readable.
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}

# Overrides of the toolkit defaults in bequiv/conf.py DEFAULTS, e.g.
# EQUIVALENCE = {'SIMULATION': {'WORKERS': 4}}
EQUIVALENCE = {}
