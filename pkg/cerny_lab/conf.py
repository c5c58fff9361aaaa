import os

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

JSON_SCHEMA = "cerny-lab/1"

DEFAULTS = {
    "CERNY_LAB_THREADS": 1,
    "CERNY_LAB_SUBSET_LIMIT": 2**22,
    "CERNY_LAB_SIM_CHUNK": 10000,
}

# Settings which an environment variable of the same name may override
ENV_OVERRIDES = ["CERNY_LAB_THREADS"]


def _positive_int(name: str, value) -> int:
    try:
        value = int(value)
    except (TypeError, ValueError):
        raise ImproperlyConfigured(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise ImproperlyConfigured(f"{name} must be at least 1, got {value}")
    return value


class LabSettings:
    """Read-through accessor for the CERNY_LAB_* settings

    Values come from the environment (where allowed), then from django.conf.settings, then from DEFAULTS.
    """

    def __getattr__(self, name: str) -> int:
        key = f"CERNY_LAB_{name}"
        if key not in DEFAULTS:
            raise AttributeError(name)
        if key in ENV_OVERRIDES and os.environ.get(key):
            return _positive_int(key, os.environ[key])
        value = DEFAULTS[key]
        if settings.configured and hasattr(settings, key):
            value = getattr(settings, key)
        return _positive_int(key, value)


lab_settings = LabSettings()
