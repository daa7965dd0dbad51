from .base import *
import os


DEBUG = False

ALLOWED_HOSTS = []

# En CI y despliegues la clave debe venir del entorno
SECRET_KEY = os.environ.get("SECRET_KEY")
if not SECRET_KEY:
    raise ValueError("SECRET_KEY no configurada en variables de entorno")

DEFECTONT = {**DEFECTONT, "LOG_LEVEL": "WARNING"}
LOGGING["loggers"]["apps"]["level"] = DEFECTONT["LOG_LEVEL"]
