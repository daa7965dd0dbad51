from dataclasses import dataclass
from decimal import Decimal

from apps.utils.exceptions import UnitError
from apps.utils.helpers import format_decimal

# ---- Dimensiones ----
LENGTH = "length"
AREA = "area"
TEMPERATURE = "temperature"


@dataclass(frozen=True)
class Unit:
    # valor_base = valor * factor + offset
    code: str
    dimension: str
    factor: Decimal
    offset: Decimal = Decimal(0)
    symbol: str = ""

    @property
    def is_base(self):
        return self.factor == 1 and self.offset == 0


class UnitRegistry:
    """
    Registro inmutable de unidades por código.

    Cada dimensión tiene exactamente una unidad base (factor 1, offset 0).
    """

    def __init__(self, units):
        self._units = {}
        for unit in units:
            if unit.code in self._units:
                raise UnitError(
                    "Unidad repetida: %(unit)s", code="duplicate-unit",
                    params={"unit": unit.code},
                )
            self._units[unit.code] = unit
        bases = {}
        for unit in self._units.values():
            if unit.is_base:
                bases.setdefault(unit.dimension, []).append(unit.code)
        for dimension in self.dimensions():
            if len(bases.get(dimension, [])) != 1:
                raise UnitError(
                    "La dimensión %(dim)s necesita una sola unidad base",
                    code="base-unit",
                    params={"dim": dimension},
                )

    def __contains__(self, code):
        return code in self._units

    def __iter__(self):
        return iter(self._units.values())

    def __len__(self):
        return len(self._units)

    def get(self, code) -> Unit:
        try:
            return self._units[code]
        except KeyError:
            raise UnitError(
                "Unidad desconocida: %(unit)s", code="unknown-unit",
                params={"unit": code},
            )

    def codes(self):
        return list(self._units)

    def dimensions(self):
        return sorted({unit.dimension for unit in self._units.values()})

    def base_unit(self, dimension) -> Unit:
        for unit in self._units.values():
            if unit.dimension == dimension and unit.is_base:
                return unit
        raise UnitError(
            "Dimensión desconocida: %(dim)s", code="unknown-unit",
            params={"dim": dimension},
        )


REGISTRY = UnitRegistry(
    [
        Unit("m", LENGTH, Decimal("1"), symbol="m"),
        Unit("mm", LENGTH, Decimal("0.001"), symbol="mm"),
        Unit("um", LENGTH, Decimal("0.000001"), symbol="µm"),
        Unit("m2", AREA, Decimal("1"), symbol="m²"),
        Unit("mm2", AREA, Decimal("0.000001"), symbol="mm²"),
        Unit("K", TEMPERATURE, Decimal("1"), symbol="K"),
        Unit("degC", TEMPERATURE, Decimal("1"), Decimal("273.15"), symbol="°C"),
    ]
)


@dataclass(frozen=True)
class Quantity:
    value: Decimal
    unit: str

    def __post_init__(self):
        if not isinstance(self.value, Decimal):
            object.__setattr__(self, "value", Decimal(str(self.value)))
        if not self.value.is_finite():
            raise UnitError("El valor no es finito", code="literal")
        REGISTRY.get(self.unit)

    @property
    def dimension(self):
        return REGISTRY.get(self.unit).dimension

    def __str__(self):
        # Formato de respuesta: "VALOR UNIDAD"
        return f"{format_decimal(self.value)} {self.unit}"
