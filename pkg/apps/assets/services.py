"""
Carga de los módulos distribuidos y de los archivos de referencia.

¿Para qué?
- `load_knowledge_base()` es la KB fusionada que usan consultas,
  diagnóstico y el CLI cuando no se indica otra ruta.
- Los lectores de `golden/` devuelven expresiones ya parseadas contra
  la KB, listas para los tests de aceptación.
"""

import logging
from pathlib import Path

from apps.linker.loaders import load_root, read_pairs, read_signature, read_triples
from apps.ontology.parser import parse_concept
from apps.utils.constants import MODULE_EXTENSION
from apps.utils.exceptions import ParseError, SourcePosition
from apps.utils.helpers import assets_dir, golden_dir, inventory_file, read_lines, toolkit_setting

from .inventory import read_inventory, retag

logger = logging.getLogger(__name__)

PIPELINE_DIR = Path(__file__).resolve().parent / "pipeline"


def module_path(name=None):
    """Ruta del módulo `name` (por defecto la raíz configurada)"""
    name = name or toolkit_setting("ROOT_MODULE")
    return assets_dir() / f"{name}{MODULE_EXTENSION}"


def load_knowledge_base(root=None, retagged=True):
    """
    Enlaza los módulos desde `root` y, si se pide, reetiqueta los
    orígenes según el inventario.
    """
    kb = load_root(module_path(root))
    if not retagged:
        return kb
    return retag(kb, load_inventory(kb))


def load_inventory(kb):
    return read_inventory(inventory_file(), kb)


# ---- Archivos de referencia ----
def golden_path(name):
    return golden_dir() / name


def _rows(path, columns):
    rows = []
    for number, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        cells = [cell.strip() for cell in raw.split("\t")]
        if len(cells) != columns:
            raise ParseError(
                "Se esperaban %(columns)d columnas separadas por tabulador",
                code="syntax",
                position=SourcePosition(number, 1, str(path)),
                params={"columns": columns},
            )
        rows.append((number, cells))
    return rows


def read_concept_pairs(name, kb):
    """Pares (sub, sup) de expresiones de clase, p. ej. subsumptions.tsv"""
    path = golden_path(name)
    pairs = []
    for number, (left, right) in _rows(path, 2):
        try:
            pairs.append((parse_concept(left, kb), parse_concept(right, kb)))
        except ParseError as error:
            raise ParseError(
                error.message, code=error.code,
                position=SourcePosition(number, 1, str(path)), params=error.params,
            )
    return pairs


def read_questions(name="questions.tsv"):
    """Tripletas (id, consulta, respuesta); las comas separan líneas"""
    return [
        (ident, query, "\n".join(answer.split(",")))
        for _, (ident, query, answer) in _rows(golden_path(name), 3)
    ]


def read_prune_expectation(name="porosity_prune.txt"):
    """(nombres que se conservan, nombres que desaparecen)"""
    kept, dropped = set(), set()
    for line in read_lines(golden_path(name)):
        sign, value = line[0], line[1:].strip()
        if sign not in "+-" or not value:
            raise ParseError(
                "Cada línea empieza por '+' o '-': %(line)s", code="syntax",
                params={"line": line},
            )
        (kept if sign == "+" else dropped).add(value)
    return kept, dropped


def read_golden_text(name):
    return golden_path(name).read_text(encoding="utf-8")


# ---- Entradas del pipeline de fusión ----
def pipeline_path(name):
    return PIPELINE_DIR / name


def pipeline_inputs():
    """Renombres, equivalencias, subclases y movimientos del pipeline de ejemplo"""
    inputs = {
        "renames": read_pairs(pipeline_path("renames.tsv")),
        "equivalences": read_pairs(pipeline_path("equivalences.tsv")),
        "subclasses": read_pairs(pipeline_path("subclasses.tsv")),
        "moves": read_triples(pipeline_path("reparent.tsv")),
    }
    logger.debug("Entradas del pipeline: %s", ", ".join(sorted(inputs)))
    return inputs


def porosity_seed(kb):
    return read_signature(pipeline_path("porosity_seed.txt"), kb)
