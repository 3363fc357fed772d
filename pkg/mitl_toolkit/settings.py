"""
Django settings for mitl_toolkit project.

Generated by 'django-admin startproject' using Django 5.2.9 and trimmed down to
what the toolkit uses: one app, no database, no URL routing. The library is
driven through its Python API and through management commands.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get(
    'MITL_SECRET_KEY',
    'django-insecure-mitl-toolkit-local-key-not-for-deployment',
)

DEBUG = os.environ.get('MITL_DEBUG', '') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'mitl',  # Timed logic toolkit
]

# No models, so no database is configured.
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Logging
# https://docs.djangoproject.com/en/5.2/topics/logging/

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'mitl': {
            'handlers': ['console'],
            'level': os.environ.get('MITL_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}


# Toolkit settings (see mitl/conf.py for the defaults)

MITL = {
    'SEARCH_MAX_DEFAULT_LENGTH': 4,
    'SAMPLER_SEED': 2024,
    'SAMPLER_WORDS': 200,
    'SAMPLER_MAX_LENGTH': 5,
    'SAMPLER_GRID': 4,
    'SAMPLER_HORIZON': 6,
    'RUN_STEP_SLACK': 4,
    'PROPERTY_CASES': int(os.environ.get('MITL_PROPERTY_CASES', '150')),
    'SCALE_CASES': int(os.environ.get('MITL_SCALE_CASES', '10000')),
    'SAMPLES_DIR': BASE_DIR / 'mitl' / 'samples',
}
