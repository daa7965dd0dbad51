from decimal import Decimal

from django.test import SimpleTestCase

from apps.utils.exceptions import UnitError

from .models import REGISTRY, Quantity, Unit, UnitRegistry
from .services import convert


class UnitRegistryTests(SimpleTestCase):
    def test_codes_match_data_statements(self):
        self.assertEqual(REGISTRY.codes(), ["m", "mm", "um", "m2", "mm2", "K", "degC"])

    def test_one_base_unit_per_dimension(self):
        for dimension in REGISTRY.dimensions():
            base = REGISTRY.base_unit(dimension)
            self.assertEqual(base.factor, 1)
            self.assertEqual(base.offset, 0)
        self.assertEqual(REGISTRY.base_unit("temperature").code, "K")

    def test_registry_rejects_two_bases(self):
        with self.assertRaises(UnitError) as caught:
            UnitRegistry([Unit("m", "length", Decimal(1)), Unit("x", "length", Decimal(1))])
        self.assertEqual(caught.exception.code, "base-unit")

    def test_unknown_unit(self):
        with self.assertRaises(UnitError) as caught:
            Quantity(Decimal("1"), "ft")
        self.assertEqual(caught.exception.code, "unknown-unit")


class ConvertTests(SimpleTestCase):
    def test_millimetres_to_metres(self):
        result = convert(Quantity(Decimal("1500"), "mm"), "m")
        self.assertEqual(result.value, Decimal("1.5"))
        self.assertEqual(result.unit, "m")
        self.assertEqual(str(result), "1.5 m")

    def test_kelvin_to_celsius(self):
        result = convert(Quantity(Decimal("300"), "K"), "degC")
        self.assertEqual(result.value, Decimal("26.85"))

    def test_celsius_to_kelvin(self):
        result = convert(Quantity(Decimal("26.85"), "degC"), "K")
        self.assertEqual(result.value, Decimal("300"))

    def test_dimension_mismatch(self):
        with self.assertRaises(UnitError) as caught:
            convert(Quantity(Decimal("2"), "mm"), "degC")
        self.assertEqual(caught.exception.code, "dimension-mismatch")
        self.assertEqual(caught.exception.exit_code, 2)

    def test_identity_is_exact(self):
        quantity = Quantity(Decimal("0.050"), "mm")
        result = convert(quantity, "mm")
        self.assertIs(result, quantity)
        self.assertEqual(str(result), "0.05 mm")

    def test_area(self):
        result = convert(Quantity(Decimal("2"), "m2"), "mm2")
        self.assertEqual(result.value, Decimal("2000000"))

    def test_round_trip(self):
        samples = [
            (Decimal("0.05"), "mm", "um"),
            (Decimal("1500"), "mm", "m"),
            (Decimal("12.5"), "um", "m"),
            (Decimal("-40"), "degC", "K"),
            (Decimal("3"), "mm2", "m2"),
        ]
        for value, unit, other in samples:
            with self.subTest(unit=unit, other=other):
                there = convert(Quantity(value, unit), other)
                back = convert(there, unit)
                self.assertEqual(back.value, value)
                self.assertEqual(back.unit, unit)
