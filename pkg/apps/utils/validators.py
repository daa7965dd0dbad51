import re

from django.core.exceptions import ValidationError
from django.core.validators import RegexValidator

from .constants import RESERVED_NAMES
from .exceptions import WellFormednessError

NAME_PATTERN = r"[A-Za-z][A-Za-z0-9_.]*"
NAME_RE = re.compile(NAME_PATTERN)

name_validator = RegexValidator(
    regex=rf"\A{NAME_PATTERN}\Z",
    message="Nombre inválido",
    code="invalid-name",
)


def validate_name(name, position=None):
    """Validar un nombre de la gramática antes de usarlo en el modelo"""
    try:
        name_validator(name)
    except ValidationError:
        raise WellFormednessError(
            "Nombre inválido: %(name)r", code="invalid-name", position=position,
            params={"name": name},
        )
    if name in RESERVED_NAMES:
        raise WellFormednessError(
            "%(name)r es una palabra reservada", code="reserved-name",
            position=position, params={"name": name},
        )
    return name
