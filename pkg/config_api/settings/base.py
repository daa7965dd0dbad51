from pathlib import Path
from dotenv import load_dotenv
import os

# Load environment variables
load_dotenv()

# BASE
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# SECURITY
# Sin servidor HTTP la clave solo protege utilidades internas de Django
SECRET_KEY = os.environ.get("SECRET_KEY", "defectont-local-only")

# APPS
INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.auth",
    # Third party
    "rest_framework",
    # Local apps
    "apps.ontology",
    "apps.linker",
    "apps.reasoner",
    "apps.measures",
    "apps.queries",
    "apps.diagnosis",
    "apps.oracle",
    "apps.assets",
    "apps.cli",
]

# Sin base de datos: la base de conocimiento vive en memoria
DATABASES = {}

# I18N
LANGUAGE_CODE = "es-co"
TIME_ZONE = "America/Bogota"
USE_I18N = True
USE_TZ = True

REST_FRAMEWORK = {
    # Solo se usan serializers y el renderer JSON
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
    "UNAUTHENTICATED_USER": None,
}

# HERRAMIENTA
ASSETS_ROOT = BASE_DIR / "apps" / "assets"

DEFECTONT = {
    "ASSETS_DIR": ASSETS_ROOT / "dlo",
    "GOLDEN_DIR": ASSETS_ROOT / "golden",
    "INVENTORY_FILE": ASSETS_ROOT / "inventory.tsv",
    "ROOT_MODULE": "defectont",
    # Límite de nodos del grafo de compleción por prueba
    "MAX_GRAPH_NODES": 20000,
    # Precisión decimal para conversiones de unidades
    "DECIMAL_PRECISION": 28,
    # Tamaño máximo de dominio del oráculo de modelos finitos
    "ORACLE_MAX_DOMAIN": 2,
    # Casos aleatorios por prueba de propiedades
    "PROPERTY_RUNS": 1000,
    "LOG_LEVEL": "WARNING",
}

# LOGGING
# Diagnósticos a stderr; las respuestas van siempre a stdout
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {
            "format": "%(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "simple",
        },
    },
    "loggers": {
        "apps": {
            "handlers": ["console"],
            "level": DEFECTONT["LOG_LEVEL"],
            "propagate": False,
        },
    },
}

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"
