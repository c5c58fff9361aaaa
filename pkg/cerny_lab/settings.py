# Settings used when cerny_lab runs as a standalone command line tool
import os

DEBUG = False

SECRET_KEY = "cerny-lab-standalone"

INSTALLED_APPS = [
    "cerny_lab",
]

DATABASES = {}

USE_TZ = True

CERNY_LAB_THREADS = 1

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "stderr": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "loggers": {
        "cerny_lab": {
            "handlers": ["stderr"],
            "level": os.environ.get("CERNY_LAB_LOG_LEVEL", "WARNING"),
            "propagate": False,
        },
    },
}
