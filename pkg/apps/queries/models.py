from dataclasses import dataclass

from apps.ontology.models import ConceptExpr, RoleExpr


# ---- Consultas (preguntas de competencia) ----
@dataclass(frozen=True)
class InstanceQuery:
    # instance? IND CONCEPT
    individual: str
    concept: ConceptExpr


@dataclass(frozen=True)
class InstancesQuery:
    # instances? CONCEPT
    concept: ConceptExpr


@dataclass(frozen=True)
class FillersQuery:
    # fillers? IND ROLE
    individual: str
    role: RoleExpr


@dataclass(frozen=True)
class ValueQuery:
    # value? IND ATTR UNIT
    individual: str
    attribute: str
    unit: str
