"""
Métricas de una KB: conteos por tipo, por caja, por origen y la etiqueta
de expresividad de los constructores realmente usados.
"""

from collections import Counter

from apps.ontology.models import (
    Bottom,
    DataAssertion,
    InverseRole,
    InverseRoles,
    Named,
    Nominal,
    Not,
    Or,
    Some,
    SubRoleOf,
    SymmetricRole,
    Top,
)


def _walk(concept):
    stack = [concept]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(current.children())


def expressivity(kb):
    """Etiqueta tipo ALCHOI(D); AL es la base"""
    complement = nominals = inverses = False
    for axiom in kb.axioms:
        for concept in axiom.concepts():
            for part in _walk(concept):
                if isinstance(part, Or):
                    complement = True
                elif isinstance(part, Not) and not isinstance(part.operand, Named):
                    complement = True
                elif isinstance(part, Some) and not isinstance(part.filler, (Top, Bottom)):
                    complement = True
                if isinstance(part, Nominal):
                    nominals = True
                if getattr(part, "role", None) is not None and isinstance(part.role, InverseRole):
                    inverses = True
        if any(isinstance(role, InverseRole) for role in axiom.roles()):
            inverses = True
        if isinstance(axiom, (InverseRoles, SymmetricRole)):
            inverses = True
    if any(role.inverse is not None or role.symmetric for role in kb.roles):
        inverses = True
    hierarchy = any(isinstance(axiom, SubRoleOf) for axiom in kb.axioms)
    data = bool(kb.attributes) or any(isinstance(axiom, DataAssertion) for axiom in kb.axioms)

    label = "AL"
    label += "C" if complement else ""
    label += "H" if hierarchy else ""
    label += "O" if nominals else ""
    label += "I" if inverses else ""
    label += "(D)" if data else ""
    return label


def kb_metrics(kb):
    boxes = Counter(axiom.box for axiom in kb.axioms)
    kinds = Counter(type(axiom).__name__ for axiom in kb.axioms)
    origins = Counter(origin or "-" for origin in kb.origins)
    return {
        "classes": len(kb.classes),
        "roles": len(kb.roles),
        "attributes": len(kb.attributes),
        "individuals": len(kb.individuals),
        "axioms": len(kb.axioms),
        "tbox": boxes.get("tbox", 0),
        "rbox": boxes.get("rbox", 0),
        "abox": boxes.get("abox", 0),
        "axiom_types": dict(sorted(kinds.items())),
        "origins": dict(sorted(origins.items())),
        "expressivity": expressivity(kb),
    }


def render_metrics(metrics):
    """Texto para `stats`: una línea clave: valor, diccionarios indentados"""
    lines = []
    for key, value in metrics.items():
        if isinstance(value, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {name}: {count}" for name, count in value.items())
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"
