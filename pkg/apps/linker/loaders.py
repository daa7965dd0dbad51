import logging
from pathlib import Path

from apps.ontology.models import Signature
from apps.ontology.parser import parse_module
from apps.utils.constants import (
    KIND_ATTRIBUTE,
    KIND_CLASS,
    KIND_INDIVIDUAL,
    KIND_ROLE,
    MODULE_EXTENSION,
)
from apps.utils.exceptions import LinkError, ParseError, SourcePosition

from .services import resolve_imports

logger = logging.getLogger(__name__)


def directory_loader(base_dir):
    """
    Loader para resolve_imports: NOMBRE -> `<base_dir>/NOMBRE.dlo`.

    Los errores de parseo llevan la ruta del archivo.
    """
    base = Path(base_dir)

    def load(name):
        path = base / f"{name}{MODULE_EXTENSION}"
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise LookupError(name)
        logger.debug("Leyendo %s", path)
        try:
            return parse_module(text, str(path))
        except ParseError as error:
            raise error.located(str(path))

    return load


def module_name_of(path):
    return Path(path).stem


def _table_rows(path, columns):
    rows = []
    text = Path(path).read_text(encoding="utf-8")
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        cells = [cell.strip() for cell in line.split("\t")]
        if len(cells) != columns or not all(cells):
            raise ParseError(
                "Se esperaban %(columns)d columnas separadas por tabulador",
                code="syntax",
                position=SourcePosition(number, 1, str(path)),
                params={"columns": columns},
            )
        rows.append(tuple(cells))
    return rows


def read_pairs(path):
    """Archivo TSV de dos columnas (renombres, puentes)"""
    return _table_rows(path, 2)


def read_triples(path):
    """Archivo TSV de tres columnas (clase, padre viejo, padre nuevo)"""
    return _table_rows(path, 3)


def read_signature(path, kb) -> Signature:
    """Un nombre por línea; el tipo se infiere de la KB"""
    groups = {KIND_CLASS: set(), KIND_ROLE: set(), KIND_ATTRIBUTE: set(), KIND_INDIVIDUAL: set()}
    text = Path(path).read_text(encoding="utf-8")
    for number, raw in enumerate(text.splitlines(), start=1):
        name = raw.split("#", 1)[0].strip()
        if not name:
            continue
        kind = kb.kind_of(name)
        if kind is None:
            raise LinkError(
                "%(name)s no está declarado en la KB",
                code="unknown-name",
                position=SourcePosition(number, 1, str(path)),
                params={"name": name},
            )
        groups[kind].add(name)
    return Signature(
        classes=groups[KIND_CLASS],
        roles=groups[KIND_ROLE],
        attributes=groups[KIND_ATTRIBUTE],
        individuals=groups[KIND_INDIVIDUAL],
    )


def load_root(path):
    """
    Enlaza el módulo raíz `path`; las importaciones se buscan como
    archivos hermanos `<nombre>.dlo`.
    """
    root = Path(path)
    if not root.is_file():
        raise LinkError(
            "No existe el archivo %(path)s", code="missing-module", params={"path": str(root)}
        )
    loader = directory_loader(root.parent)
    return resolve_imports(module_name_of(root), loader)
