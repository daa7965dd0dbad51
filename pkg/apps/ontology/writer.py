from decimal import Decimal

from apps.utils.constants import KIND_ATTRIBUTE, KIND_ROLE
from apps.utils.exceptions import WellFormednessError

from .models import (
    ClassAssertion,
    DataAssertion,
    DisjointClasses,
    EquivalentClasses,
    RoleAssertion,
    RoleDomain,
    RoleRange,
    SourceModule,
    SubClassOf,
    SubRoleOf,
)
from .parser import escape


def render_declaration(declaration) -> str:
    line = f"{declaration.kind} {declaration.name}"
    if declaration.kind == KIND_ROLE:
        if declaration.inverse:
            line += f" inverse {declaration.inverse}"
        if declaration.symmetric:
            line += " symmetric"
    elif declaration.kind == KIND_ATTRIBUTE:
        line += f" : {declaration.datatype}"
    return line


def render_literal(value) -> str:
    if isinstance(value, Decimal):
        return str(value)
    return f'"{escape(value)}"'


def render_axiom(axiom) -> str:
    """Una sentencia `.dlo` por axioma"""
    if isinstance(axiom, SubClassOf):
        return f"subclass {axiom.sub} {axiom.sup}"
    if isinstance(axiom, EquivalentClasses):
        return f"equiv {axiom.left} {axiom.right}"
    if isinstance(axiom, DisjointClasses):
        return "disjoint " + " ".join(axiom.classes)
    if isinstance(axiom, SubRoleOf):
        return f"subrole {axiom.sub} {axiom.sup}"
    if isinstance(axiom, RoleDomain):
        return f"domain {axiom.role} {axiom.concept}"
    if isinstance(axiom, RoleRange):
        return f"range {axiom.role} {axiom.concept}"
    if isinstance(axiom, ClassAssertion):
        return f"instance {axiom.individual} {axiom.concept}"
    if isinstance(axiom, RoleAssertion):
        return f"rel {axiom.subject} {axiom.role} {axiom.object}"
    if isinstance(axiom, DataAssertion):
        line = f"data {axiom.individual} {axiom.attribute} {render_literal(axiom.value)}"
        if axiom.unit is not None:
            line += f" {axiom.unit}"
        return line
    # InverseRoles/SymmetricRole viajan como banderas de la declaración
    raise WellFormednessError(
        "El axioma %(axiom)s no tiene forma de sentencia; use module_from_kb",
        code="unsupported",
        params={"axiom": type(axiom).__name__},
    )


def serialize_module(module: SourceModule) -> str:
    """
    Texto `.dlo` determinista.

    Orden: ontology, imports, declaraciones (por tipo y nombre), axiomas
    en su orden original. Los comentarios del archivo de origen no se
    conservan.
    """
    lines = [f"ontology {module.name}"]
    lines += [f"import {name}" for name in module.imports]
    if module.declarations:
        lines.append("")
        lines += [
            render_declaration(declaration)
            for declaration in sorted(module.declarations, key=lambda d: d.sort_key)
        ]
    if module.axioms:
        lines.append("")
        lines += [render_axiom(axiom) for axiom in module.axioms]
    return "\n".join(lines) + "\n"
