from .base import *

DEBUG = True

ALLOWED_HOSTS = []

DEFECTONT = {**DEFECTONT, "LOG_LEVEL": "INFO"}
LOGGING["loggers"]["apps"]["level"] = DEFECTONT["LOG_LEVEL"]
