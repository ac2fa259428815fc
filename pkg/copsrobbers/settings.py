"""
Django settings for the copsrobbers project.

Pursuit-game solver, digraph constructions and the verification harness
all read their defaults from the PURSUIT and VERIFICATION dictionaries
below. Every value can be overridden from the environment or a `.env`
file at the repository root.

For the full list of Django settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path
import os
import sys

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / '.env')


def env_bool(name, default=False):
    return os.getenv(name, str(default)).strip().lower() in ('1', 'true', 'yes', 'on')


def env_list(name, default, cast=str):
    raw = os.getenv(name)
    if not raw:
        return default
    return [cast(item) for item in raw.split(',') if item.strip()]


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv(
    'DJANGO_SECRET_KEY',
    'django-insecure-copsrobbers-local-only-key',
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = env_bool('DJANGO_DEBUG', True)

ALLOWED_HOSTS = env_list('DJANGO_ALLOWED_HOSTS', ['*'])


# Application definition

INSTALLED_APPS = [
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',
    'rest_framework',
    'digraphs.apps.DigraphsConfig',
    'pursuit.apps.PursuitConfig',
    'verification.apps.VerificationConfig',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'copsrobbers.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

WSGI_APPLICATION = 'copsrobbers.wsgi.application'


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.getenv('COPS_DATABASE', str(BASE_DIR / 'db.sqlite3')),
    }
}


# Password validation
# https://docs.djangoproject.com/en/5.2/ref/settings/#auth-password-validators

AUTH_PASSWORD_VALIDATORS = [
    {
        'NAME': 'django.contrib.auth.password_validation.UserAttributeSimilarityValidator',
    },
    {
        'NAME': 'django.contrib.auth.password_validation.MinimumLengthValidator',
    },
    {
        'NAME': 'django.contrib.auth.password_validation.CommonPasswordValidator',
    },
    {
        'NAME': 'django.contrib.auth.password_validation.NumericPasswordValidator',
    },
]


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# Static files
STATIC_URL = '/assets/'
STATIC_ROOT = os.path.join(BASE_DIR, 'static')

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
        'rest_framework.renderers.BrowsableAPIRenderer',
    ],
    'DEFAULT_PAGINATION_CLASS': 'rest_framework.pagination.LimitOffsetPagination',
    'PAGE_SIZE': 100,
}

# HTTPS settings, off unless deployed behind a TLS proxy
SECURE_SSL_REDIRECT = env_bool('DJANGO_SECURE_SSL_REDIRECT', False)
SESSION_COOKIE_SECURE = SECURE_SSL_REDIRECT
CSRF_COOKIE_SECURE = SECURE_SSL_REDIRECT
if SECURE_SSL_REDIRECT:
    SECURE_PROXY_SSL_HEADER = ('HTTP_X_FORWARDED_PROTO', 'https')
    SECURE_HSTS_SECONDS = 31536000  # 1 year
    SECURE_HSTS_INCLUDE_SUBDOMAINS = True
SECURE_CONTENT_TYPE_NOSNIFF = True
CSRF_TRUSTED_ORIGINS = env_list('DJANGO_CSRF_TRUSTED_ORIGINS', [])


# Pursuit game solver
PURSUIT = {
    # Positions (cop multiset x robber vertex x side to move) allowed per solve.
    'STATE_BUDGET': int(os.getenv('COPS_STATE_BUDGET', 50_000_000)),
    'MAX_ROUNDS': int(os.getenv('COPS_MAX_ROUNDS', 10_000)),
}

# Verification harness defaults
VERIFICATION = {
    'TRIALS': int(os.getenv('COPS_VERIFY_TRIALS', 200)),
    'N_MAX': int(os.getenv('COPS_VERIFY_N_MAX', 6)),
    'P': float(os.getenv('COPS_VERIFY_P', 0.35)),
    'SEED': int(os.getenv('COPS_VERIFY_SEED', 0)),
    'K_VALUES': env_list('COPS_VERIFY_K_VALUES', [3, 4], cast=int),
    'SUBDIVISION_LENGTHS': env_list('COPS_VERIFY_LENGTHS', [2, 3], cast=int),
    'GIRTHS': env_list('COPS_VERIFY_GIRTHS', [2, 3, 4], cast=int),
    'EXHAUSTIVE_N_MAX': int(os.getenv('COPS_VERIFY_EXHAUSTIVE_N_MAX', 4)),
    'RETRY_CAP': int(os.getenv('COPS_VERIFY_RETRY_CAP', 1000)),
    'RECORD_TIMINGS': env_bool('COPS_VERIFY_RECORD_TIMINGS', False),
    'OUT_DIR': Path(os.getenv('COPS_VERIFY_OUT_DIR', BASE_DIR / 'verification_out')),
}

# Quiet console under `manage.py test`.
TESTING = sys.argv[1:2] == ['test']
LOG_LEVEL = 'ERROR' if TESTING else os.getenv('COPS_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
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
        'digraphs': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'pursuit': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'verification': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}
