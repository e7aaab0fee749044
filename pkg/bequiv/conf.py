"""
Access to the ``EQUIVALENCE`` settings block with defaults filled in.
"""
from copy import deepcopy

from django.conf import settings

DEFAULTS = {
    'DEFAULT_ALPHA': 0.05,
    'DEFAULT_LIMITS': (0.8, 1.25),
    'QUADRATURE': {
        'REL_TOLERANCE': 1e-10,
        'ABS_TOLERANCE': 1e-12,
        'MAX_SUBDIVISIONS': 1024,
    },
    'SAMPLE_SIZE_CAP': 100000,
    'SIMULATION': {
        'REPLICATIONS': 200000,
        'BLOCK_SIZE': 4096,
        'WORKERS': 1,
        'SEED': 20240601,
    },
}


def toolkit_setting(name):
    """
    Return one entry of ``settings.EQUIVALENCE``, falling back to DEFAULTS.

    Nested dicts are merged key by key so a deployment can override a
    single quadrature or simulation knob.
    """
    if name not in DEFAULTS:
        raise KeyError(f"Unknown EQUIVALENCE setting: {name}")
    user = getattr(settings, 'EQUIVALENCE', {}) or {}
    value = deepcopy(DEFAULTS[name])
    if name in user:
        if isinstance(value, dict):
            value.update(user[name])
        else:
            value = user[name]
    return value
