"""
Access to the toolkit's settings.

The project settings carry a ``MITL`` dictionary; keys missing there fall back
to the defaults below.
"""
from pathlib import Path
from typing import Any

from django.conf import settings

DEFAULTS = {
    'SEARCH_MAX_DEFAULT_LENGTH': 4,
    'SAMPLER_SEED': 2024,
    'SAMPLER_WORDS': 200,
    'SAMPLER_MAX_LENGTH': 5,
    'SAMPLER_GRID': 4,
    'SAMPLER_HORIZON': 6,
    'RUN_STEP_SLACK': 4,
    'PROPERTY_CASES': 150,
    'SCALE_CASES': 10000,
    'SAMPLES_DIR': Path(__file__).resolve().parent / 'samples',
}


def get_setting(name: str) -> Any:
    """
    Look up a toolkit setting.

    Args:
        name: Key of the ``MITL`` settings dictionary

    Returns:
        The configured value, or the built-in default
    """
    if name not in DEFAULTS:
        raise KeyError(f"Unknown toolkit setting: {name}")
    overrides = getattr(settings, 'MITL', {}) or {}
    return overrides.get(name, DEFAULTS[name])
