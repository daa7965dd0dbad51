from .base import *
import os

DEBUG = False

SECRET_KEY = "defectont-testing"

# Las pruebas de propiedades completas se piden con DEFECTONT_PROPERTY_RUNS=1000
DEFECTONT = {
    **DEFECTONT,
    "LOG_LEVEL": "WARNING",
    "PROPERTY_RUNS": int(os.environ.get("DEFECTONT_PROPERTY_RUNS", "100")),
}
LOGGING["loggers"]["apps"]["level"] = DEFECTONT["LOG_LEVEL"]
