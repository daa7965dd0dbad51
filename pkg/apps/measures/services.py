import logging
from decimal import localcontext

from apps.utils.exceptions import UnitError
from apps.utils.helpers import toolkit_setting

from .models import REGISTRY, Quantity

logger = logging.getLogger(__name__)


def convert(quantity: Quantity, target: str, registry=REGISTRY) -> Quantity:
    """
    Convertir una cantidad a otra unidad de la misma dimensión.

    valor' = (valor * factor(origen) + offset(origen) - offset(destino)) / factor(destino)
    Aritmética decimal con la precisión de DEFECTONT["DECIMAL_PRECISION"].
    """
    source_unit = registry.get(quantity.unit)
    target_unit = registry.get(target)
    if source_unit.dimension != target_unit.dimension:
        raise UnitError(
            "No se puede convertir %(source)s (%(sdim)s) a %(target)s (%(tdim)s)",
            code="dimension-mismatch",
            params={
                "source": source_unit.code,
                "sdim": source_unit.dimension,
                "target": target_unit.code,
                "tdim": target_unit.dimension,
            },
        )
    if source_unit.code == target_unit.code:
        return quantity

    with localcontext() as context:
        context.prec = toolkit_setting("DECIMAL_PRECISION")
        base = quantity.value * source_unit.factor + source_unit.offset
        value = (base - target_unit.offset) / target_unit.factor
    logger.debug("Conversión %s -> %s %s", quantity, value, target_unit.code)
    return Quantity(value, target_unit.code)
