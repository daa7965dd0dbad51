from dataclasses import dataclass
from decimal import Decimal

from apps.utils.constants import (
    KIND_ATTRIBUTE,
    KIND_CLASS,
    KIND_INDIVIDUAL,
    KIND_ROLE,
)
from apps.utils.exceptions import WellFormednessError

from .concepts import ConceptExpr, NamedRole, RoleExpr, concept_signature


class Axiom:
    """Axioma TBox, RBox o ABox."""

    __slots__ = ()
    box = "tbox"

    def concepts(self):
        return ()

    def roles(self):
        return ()

    def names(self):
        """Pares (tipo, nombre) mencionados por el axioma"""
        found = []
        for concept in self.concepts():
            classes, roles, individuals = concept_signature(concept)
            found.extend((KIND_CLASS, name) for name in classes)
            found.extend((KIND_ROLE, name) for name in roles)
            found.extend((KIND_INDIVIDUAL, name) for name in individuals)
        found.extend((KIND_ROLE, role.name) for role in self.roles())
        found.extend(self.extra_names())
        # sin duplicados, orden estable
        return list(dict.fromkeys(found))

    def extra_names(self):
        return ()


@dataclass(frozen=True, slots=True)
class SubClassOf(Axiom):
    sub: ConceptExpr
    sup: ConceptExpr

    def concepts(self):
        return (self.sub, self.sup)


@dataclass(frozen=True, slots=True)
class EquivalentClasses(Axiom):
    left: ConceptExpr
    right: ConceptExpr

    def concepts(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class DisjointClasses(Axiom):
    classes: tuple

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        if len(self.classes) < 2:
            raise WellFormednessError(
                "disjoint necesita al menos dos clases", code="arity"
            )

    def extra_names(self):
        return [(KIND_CLASS, name) for name in self.classes]


@dataclass(frozen=True, slots=True)
class SubRoleOf(Axiom):
    box = "rbox"
    sub: RoleExpr
    sup: RoleExpr

    def roles(self):
        return (self.sub, self.sup)


@dataclass(frozen=True, slots=True)
class InverseRoles(Axiom):
    box = "rbox"
    first: str
    second: str

    def roles(self):
        return (NamedRole(self.first), NamedRole(self.second))


@dataclass(frozen=True, slots=True)
class SymmetricRole(Axiom):
    box = "rbox"
    role: str

    def roles(self):
        return (NamedRole(self.role),)


@dataclass(frozen=True, slots=True)
class RoleDomain(Axiom):
    role: RoleExpr
    concept: ConceptExpr

    def concepts(self):
        return (self.concept,)

    def roles(self):
        return (self.role,)


@dataclass(frozen=True, slots=True)
class RoleRange(Axiom):
    role: RoleExpr
    concept: ConceptExpr

    def concepts(self):
        return (self.concept,)

    def roles(self):
        return (self.role,)


@dataclass(frozen=True, slots=True)
class ClassAssertion(Axiom):
    box = "abox"
    individual: str
    concept: ConceptExpr

    def concepts(self):
        return (self.concept,)

    def extra_names(self):
        return [(KIND_INDIVIDUAL, self.individual)]


@dataclass(frozen=True, slots=True)
class RoleAssertion(Axiom):
    box = "abox"
    subject: str
    role: str
    object: str

    def roles(self):
        return (NamedRole(self.role),)

    def extra_names(self):
        return [(KIND_INDIVIDUAL, self.subject), (KIND_INDIVIDUAL, self.object)]


@dataclass(frozen=True, slots=True)
class DataAssertion(Axiom):
    box = "abox"
    individual: str
    attribute: str
    value: Decimal | str
    unit: str | None = None

    def __post_init__(self):
        if isinstance(self.value, Decimal) and not self.value.is_finite():
            raise WellFormednessError(
                "El literal de %(attr)s no es finito", code="literal",
                params={"attr": self.attribute},
            )

    @property
    def is_numeric(self):
        return isinstance(self.value, Decimal)

    def extra_names(self):
        return [(KIND_INDIVIDUAL, self.individual), (KIND_ATTRIBUTE, self.attribute)]
