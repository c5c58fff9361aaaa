import os
import random
import string

import django

BASE_DIR = os.path.dirname(os.path.dirname(__file__))
DEBUG = False

characters = string.ascii_letters + string.digits
SECRET_KEY = "".join(random.choice(characters) for i in range(48))

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": os.path.join(BASE_DIR, "db.sqlite3"),
    }
}

INSTALLED_APPS = [
    "cerny_lab",
    "tests",
]

TIME_ZONE = "UTC"
USE_TZ = True

CERNY_LAB_THREADS = 2
CERNY_LAB_SIM_CHUNK = 500

if django.VERSION >= (3, 2):
    DEFAULT_AUTO_FIELD = "django.db.models.AutoField"
