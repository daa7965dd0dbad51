"""
Inventario de axiomas de los módulos `.dlo` distribuidos.

¿Para qué?
- Auditar que cada axioma de los módulos tiene un ancla (definición,
  puente, paso de fusión, suplemento...) y que no falta ninguna.
- Reetiquetar el origen de los axiomas enlazados: los puentes quedan
  como "bridge" y los suplementos como "assets-supplement".
"""

import logging
from collections import Counter
from dataclasses import dataclass, replace
from pathlib import Path

from apps.ontology.parser import parse_axiom
from apps.utils.constants import ORIGIN_BRIDGE, ORIGIN_SUPPLEMENT
from apps.utils.exceptions import ParseError, SourcePosition

logger = logging.getLogger(__name__)

ANCHOR_SUPPLEMENT = "supplement"
BRIDGE_PREFIX = "bridge:"

# Anclas que deben aparecer exactamente una vez
DEFINED_CLASSES = (
    "Defect",
    "LocatedDefect",
    "InternalDefect",
    "SurfaceDefect",
    "InternalBallingDefect",
    "SurfaceBallingDefect",
    "BallingDefect",
    "CrackingDefect",
    "GeometricDefect",
    "MicrostructuralDefect",
    "VoidRegion",
    "InternalPorosityDefect",
    "SurfacePorosityDefect",
    "PorosityDefect",
    "SurfaceRoughnessDefect",
    "InducedDefect",
    "SupportsInducedDefect",
    "OrientationInducedDefect",
    "EquipmentInducedDefect",
    "BaseplateInducedDefect",
    "BeamScanningDeflectionSystemInducedDefect",
    "BuildChamberEnvironmentalControlInducedDefect",
    "PowderHandlingDepositionSystemInducedDefect",
    "FeedstockMaterialInducedDefect",
    "ProcessInducedDefect",
    "ByproductMaterialEjectionInducedDefect",
    "ParameterScanStrategyInducedDefect",
)
BRIDGED_CLASSES = (
    "BallingDefect",
    "CrackingDefect",
    "GeometricDefect",
    "MicrostructuralDefect",
    "PorosityDefect",
    "SurfaceRoughnessDefect",
)
REQUIRED_ANCHORS = (
    tuple(f"def:{name}" for name in DEFINED_CLASSES)
    + tuple(f"{BRIDGE_PREFIX}{name}" for name in BRIDGED_CLASSES)
    + ("disjoint:regions", "part:AMLayer")
)
UNIQUE_PREFIXES = ("def:", BRIDGE_PREFIX, "disjoint:", "part:")


@dataclass(frozen=True)
class InventoryEntry:
    module: str
    anchor: str
    axiom: object
    note: str = ""
    line: int = 0

    @property
    def origin(self):
        """Etiqueta de origen que recibe el axioma en la KB fusionada"""
        if self.anchor.startswith(BRIDGE_PREFIX):
            return ORIGIN_BRIDGE
        if self.anchor == ANCHOR_SUPPLEMENT:
            return ORIGIN_SUPPLEMENT
        return self.module


class AssetInventory:
    """Filas del inventario indexadas por (módulo, axioma)."""

    def __init__(self, entries):
        self.entries = tuple(entries)
        self._index = {}
        for entry in self.entries:
            self._index.setdefault((entry.module, entry.axiom), []).append(entry)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def lookup(self, module, axiom):
        found = self._index.get((module, axiom), [])
        return found[0] if found else None

    def count(self, module, axiom):
        return len(self._index.get((module, axiom), []))

    def anchors(self):
        return Counter(entry.anchor for entry in self.entries)

    def per_module(self):
        return Counter(entry.module for entry in self.entries)

    def missing_anchors(self):
        present = self.anchors()
        return [anchor for anchor in REQUIRED_ANCHORS if anchor not in present]

    def duplicated_anchors(self):
        return sorted(
            anchor for anchor, total in self.anchors().items()
            if total > 1 and anchor.startswith(UNIQUE_PREFIXES)
        )

    def supplements(self):
        return [entry for entry in self.entries if entry.anchor == ANCHOR_SUPPLEMENT]


def read_inventory(path, kb):
    """
    Lee el TSV (módulo, ancla, axioma, nota).

    Solo se parsean las filas de módulos presentes en `kb`; los nombres
    de cada axioma se resuelven contra la KB enlazada.
    """
    path = Path(path)
    modules = set(kb.origins)
    entries = []
    for number, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        cells = raw.split("\t")
        if len(cells) == 3:
            cells.append("")
        if len(cells) != 4 or not all(cell.strip() for cell in cells[:3]):
            raise ParseError(
                "Fila de inventario mal formada: se esperaban 4 columnas",
                code="syntax",
                position=SourcePosition(number, 1, str(path)),
            )
        module, anchor, text, note = (cell.strip() for cell in cells)
        if module not in modules:
            continue
        try:
            axiom = parse_axiom(text, kb)
        except ParseError as error:
            column = error.position.column if error.position else 1
            raise ParseError(
                error.message, code=error.code,
                position=SourcePosition(number, column, str(path)),
                params=error.params,
            )
        entries.append(InventoryEntry(module, anchor, axiom, note, number))
    logger.debug("Inventario %s: %d filas", path, len(entries))
    return AssetInventory(entries)


def retag(kb, inventory):
    """Sustituye el origen de cada axioma por el que indica su ancla"""
    origins = []
    for axiom, module in kb.tagged_axioms():
        entry = inventory.lookup(module, axiom)
        origins.append(entry.origin if entry is not None else module)
    changed = sum(1 for old, new in zip(kb.origins, origins) if old != new)
    logger.debug("Reetiquetados %d axiomas", changed)
    return replace(kb, origins=tuple(origins))
