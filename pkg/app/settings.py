"""
Django settings for the bayes factor toolkit.

The project has no web surface: it is driven through management commands
(`python manage.py <command>`), so only the apps, logging and the
BAYES_FACTOR defaults matter here.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/6.0/ref/settings/
"""

import os
import dotenv
from pathlib import Path

dotenv.load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


def env_float(name, default):
    value = os.getenv(name)
    return float(value) if value not in (None, '') else default


def env_int(name, default):
    value = os.getenv(name)
    return int(value) if value not in (None, '') else default


def env_bool(name, default):
    value = os.getenv(name)
    if value in (None, ''):
        return default
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


def env_list(name, default, cast = int):
    value = os.getenv(name)
    if value in (None, ''):
        return default
    return [cast(item) for item in value.split(',') if item.strip()]


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'django-insecure-bayes-factor-local-key')

DEBUG = env_bool('DJANGO_DEBUG', False)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',

    'rest_framework',

    'bayes_factor',
]

# REST FRAMEWORK SETTINGS
# Only serializers and the JSON renderer are used.
REST_FRAMEWORK = {
    'COMPACT_JSON': False,
    'STRICT_JSON': True,
    'UNICODE_JSON': True,
    'COERCE_DECIMAL_TO_STRING': False,
}

# Database
# Nothing is persisted; the sqlite file only exists so `manage.py check` is happy.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.getenv('DB_NAME', BASE_DIR / 'db.sqlite3'),
    }
}

# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# LOGGING
# Diagnostics go to stderr, data output is reserved for stdout.

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
    'loggers': {
        'bayes_factor': {
            'handlers': ['console'],
            'level': os.getenv('BAYES_FACTOR_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}


# BAYES FACTOR SETTINGS

BAYES_FACTOR = {
    # worksheet constant for n = 200 and the chi-square critical value it comes from
    'THRESHOLD': env_float('BAYES_FACTOR_THRESHOLD', 0.07),
    'THRESHOLD_SAMPLE_SIZE': env_int('BAYES_FACTOR_THRESHOLD_SAMPLE_SIZE', 200),
    'CHI2_CRITICAL': env_float('BAYES_FACTOR_CHI2_CRITICAL', 3.84),
    'CANONICALIZE': env_bool('BAYES_FACTOR_CANONICALIZE', True),

    'TEST_VALUE': env_float('BAYES_FACTOR_TEST_VALUE', 0.5),
    'ALTERNATIVE': os.getenv('BAYES_FACTOR_ALTERNATIVE', 'greater'),

    'EXCLUSION_BELOW': env_float('BAYES_FACTOR_EXCLUSION_BELOW', 0.15),
    'SEGMENTS': [(0.15, 0.45), (0.45, 0.55)],
    'FIT_GRID_STEP': env_float('BAYES_FACTOR_FIT_GRID_STEP', 0.01),

    'SCAN_PROPORTION': env_float('BAYES_FACTOR_SCAN_PROPORTION', 0.57),
    'SCAN_SIZES': env_list('BAYES_FACTOR_SCAN_SIZES', [300, 325, 350, 400, 450, 500, 1000, 2000]),
    'SCAN_WORKERS': env_int('BAYES_FACTOR_SCAN_WORKERS', 1),
    'STRONG_EVIDENCE_MIN_N': env_int('BAYES_FACTOR_STRONG_EVIDENCE_MIN_N', 325),
    'EVIDENCE_THRESHOLD': env_float('BAYES_FACTOR_EVIDENCE_THRESHOLD', 3.0),

    'OUTPUT_FORMAT': os.getenv('BAYES_FACTOR_OUTPUT_FORMAT', 'tsv'),
    'SIGNIFICANT_DIGITS': env_int('BAYES_FACTOR_SIGNIFICANT_DIGITS', 12),

    'MODEL_DIR': Path(os.getenv('BAYES_FACTOR_MODEL_DIR', BASE_DIR / 'models')),
    'REFERENCE_DATA': BASE_DIR / 'bayes_factor' / 'data' / 'table2.csv',
}
