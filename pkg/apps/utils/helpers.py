from decimal import Decimal
from pathlib import Path

from django.conf import settings
from rest_framework.renderers import JSONRenderer

from .constants import TOOLKIT_DEFAULTS


def toolkit_setting(key):
    """
    Lee una opción de settings.DEFECTONT.

    Si Django no está configurado (uso como librería) o la opción
    no existe, devuelve el valor por defecto.
    """
    if key not in TOOLKIT_DEFAULTS:
        raise KeyError(key)
    options = getattr(settings, "DEFECTONT", {}) if settings.configured else {}
    return options.get(key, TOOLKIT_DEFAULTS[key])


def property_runs(full):
    """Casos aleatorios a generar: full, acotado por PROPERTY_RUNS"""
    return max(1, min(full, toolkit_setting("PROPERTY_RUNS")))


def assets_dir():
    configured = toolkit_setting("ASSETS_DIR")
    if configured:
        return Path(configured)
    return Path(__file__).resolve().parent.parent / "assets" / "dlo"


def golden_dir():
    configured = toolkit_setting("GOLDEN_DIR")
    if configured:
        return Path(configured)
    return Path(__file__).resolve().parent.parent / "assets" / "golden"


def inventory_file():
    configured = toolkit_setting("INVENTORY_FILE")
    if configured:
        return Path(configured)
    return Path(__file__).resolve().parent.parent / "assets" / "inventory.tsv"


def format_decimal(value: Decimal) -> str:
    # Sin exponente y sin ceros sobrantes: 1.500 -> 1.5, 1.5E+3 -> 1500
    text = format(value.normalize(), "f")
    return "0" if text in ("-0", "") else text


def read_lines(path):
    """Líneas útiles de un archivo de texto (sin comentarios '#' ni vacías)"""
    lines = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def render_json(serializer_class, data, many=False):
    """JSON estable (indentado a 2) a partir de un Serializer de DRF"""
    payload = serializer_class(data, many=many).data
    rendered = JSONRenderer().render(payload, renderer_context={"indent": 2})
    return rendered.decode("utf-8") + "\n"
