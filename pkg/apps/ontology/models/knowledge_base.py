from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable

from apps.measures.models import REGISTRY
from apps.utils.constants import (
    DATATYPE_CHOICES,
    DATATYPE_DECIMAL,
    KIND_ATTRIBUTE,
    KIND_CLASS,
    KIND_INDIVIDUAL,
    KIND_ROLE,
)
from apps.utils.exceptions import WellFormednessError
from apps.utils.validators import validate_name

from .axioms import (
    Axiom,
    ClassAssertion,
    DataAssertion,
    DisjointClasses,
    EquivalentClasses,
    InverseRoles,
    RoleDomain,
    RoleRange,
    SubClassOf,
    SubRoleOf,
    SymmetricRole,
)
from .concepts import BOTTOM, TOP, All, And, Named, Some


@dataclass(frozen=True)
class RoleDeclaration:
    name: str
    inverse: str | None = None
    symmetric: bool = False


@dataclass(frozen=True)
class AttributeDeclaration:
    name: str
    datatype: str = DATATYPE_DECIMAL


@dataclass(frozen=True)
class Signature:
    classes: frozenset = frozenset()
    roles: frozenset = frozenset()
    attributes: frozenset = frozenset()
    individuals: frozenset = frozenset()

    def __post_init__(self):
        for kind in ("classes", "roles", "attributes", "individuals"):
            object.__setattr__(self, kind, frozenset(getattr(self, kind)))

    def names(self):
        return self.classes | self.roles | self.attributes | self.individuals

    def __contains__(self, name):
        return name in self.names()

    def __len__(self):
        return len(self.names())

    def kind_of(self, name):
        if name in self.classes:
            return KIND_CLASS
        if name in self.roles:
            return KIND_ROLE
        if name in self.attributes:
            return KIND_ATTRIBUTE
        if name in self.individuals:
            return KIND_INDIVIDUAL
        return None

    def is_empty(self):
        return not self.names()

    def union(self, other):
        return Signature(
            self.classes | other.classes,
            self.roles | other.roles,
            self.attributes | other.attributes,
            self.individuals | other.individuals,
        )

    def issubset(self, other):
        return (
            self.classes <= other.classes
            and self.roles <= other.roles
            and self.attributes <= other.attributes
            and self.individuals <= other.individuals
        )


@dataclass(frozen=True, eq=False)
class KnowledgeBase:
    """
    TBox + RBox + ABox fusionados, inmutables.

    ¿Para qué?
    - Es la entrada de todos los servicios: razonador, consultas, diagnóstico.
    - Cada axioma lleva el módulo de origen en `origins` (misma posición).
    - Los nombres se internan a enteros al construir (`*_ids`).
    """

    classes: tuple = ()
    roles: tuple = ()
    attributes: tuple = ()
    individuals: tuple = ()
    axioms: tuple = ()
    origins: tuple = ()

    # ---- Índices internos ----
    class_ids: dict = field(init=False, repr=False)
    role_ids: dict = field(init=False, repr=False)
    attribute_ids: dict = field(init=False, repr=False)
    individual_ids: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        object.__setattr__(
            self, "roles",
            tuple(r if isinstance(r, RoleDeclaration) else RoleDeclaration(r) for r in self.roles),
        )
        object.__setattr__(
            self, "attributes",
            tuple(
                a if isinstance(a, AttributeDeclaration) else AttributeDeclaration(a)
                for a in self.attributes
            ),
        )
        object.__setattr__(self, "individuals", tuple(self.individuals))
        object.__setattr__(self, "axioms", tuple(self.axioms))
        origins = tuple(self.origins) or ("",) * len(self.axioms)
        object.__setattr__(self, "origins", origins)

        object.__setattr__(self, "class_ids", _intern(self.classes, KIND_CLASS))
        object.__setattr__(
            self, "role_ids", _intern([r.name for r in self.roles], KIND_ROLE)
        )
        object.__setattr__(
            self, "attribute_ids", _intern([a.name for a in self.attributes], KIND_ATTRIBUTE)
        )
        object.__setattr__(
            self, "individual_ids", _intern(self.individuals, KIND_INDIVIDUAL)
        )
        self.validate()

    # ---- Validación ----
    def validate(self):
        """Validar nombres, tipos y axiomas contra las declaraciones"""
        if len(self.origins) != len(self.axioms):
            raise WellFormednessError(
                "Cada axioma necesita una etiqueta de origen", code="origin"
            )
        seen = {}
        for kind, names in (
            (KIND_CLASS, self.class_ids),
            (KIND_ROLE, self.role_ids),
            (KIND_ATTRIBUTE, self.attribute_ids),
            (KIND_INDIVIDUAL, self.individual_ids),
        ):
            for name in names:
                validate_name(name)
                if name in seen:
                    raise WellFormednessError(
                        "%(name)s declarado como %(first)s y como %(second)s",
                        code="kind-clash",
                        params={"name": name, "first": seen[name], "second": kind},
                    )
                seen[name] = kind
        for role in self.roles:
            if role.inverse is not None and role.inverse not in self.role_ids:
                raise WellFormednessError(
                    "El inverso %(inv)s de %(role)s no está declarado como rol",
                    code="undeclared",
                    params={"inv": role.inverse, "role": role.name},
                )
        valid_datatypes = {choice for choice, _ in DATATYPE_CHOICES}
        for attribute in self.attributes:
            if attribute.datatype not in valid_datatypes:
                raise WellFormednessError(
                    "Tipo de dato desconocido para %(attr)s", code="datatype",
                    params={"attr": attribute.name},
                )
        for axiom in self.axioms:
            self.check_axiom(axiom)

    def check_axiom(self, axiom):
        if not isinstance(axiom, Axiom):
            raise WellFormednessError(
                "No es un axioma: %(value)r", code="unsupported",
                params={"value": axiom},
            )
        for kind, name in axiom.names():
            if self.kind_of(name) != kind:
                raise WellFormednessError(
                    "%(name)s no está declarado como %(kind)s en %(axiom)s",
                    code="undeclared",
                    params={"name": name, "kind": kind, "axiom": type(axiom).__name__},
                )
        if isinstance(axiom, DataAssertion):
            datatype = self.attribute(axiom.attribute).datatype
            if (datatype == DATATYPE_DECIMAL) != axiom.is_numeric:
                raise WellFormednessError(
                    "El literal de %(attr)s no es de tipo %(type)s", code="literal",
                    params={"attr": axiom.attribute, "type": datatype},
                )
            if axiom.unit is not None:
                if not axiom.is_numeric:
                    raise WellFormednessError(
                        "Solo los atributos decimales llevan unidad", code="literal"
                    )
                if axiom.unit not in REGISTRY:
                    raise WellFormednessError(
                        "Unidad desconocida: %(unit)s", code="unknown-unit",
                        params={"unit": axiom.unit},
                    )

    # ---- Consultas de nombres ----
    def kind_of(self, name):
        if name in self.class_ids:
            return KIND_CLASS
        if name in self.role_ids:
            return KIND_ROLE
        if name in self.attribute_ids:
            return KIND_ATTRIBUTE
        if name in self.individual_ids:
            return KIND_INDIVIDUAL
        return None

    def role(self, name) -> RoleDeclaration:
        return self.roles[self.role_ids[name]]

    def attribute(self, name) -> AttributeDeclaration:
        return self.attributes[self.attribute_ids[name]]

    def signature(self) -> Signature:
        return Signature(
            frozenset(self.classes),
            frozenset(self.role_ids),
            frozenset(self.attribute_ids),
            frozenset(self.individuals),
        )

    def tagged_axioms(self):
        return zip(self.axioms, self.origins)

    def axioms_from(self, origin):
        return [axiom for axiom, tag in self.tagged_axioms() if tag == origin]

    def data_assertions(self, individual, attribute):
        return [
            axiom
            for axiom in self.axioms
            if isinstance(axiom, DataAssertion)
            and axiom.individual == individual
            and axiom.attribute == attribute
        ]

    def rbox_axioms(self):
        """Axiomas de roles explícitos más los implicados por las declaraciones"""
        derived = []
        for role in self.roles:
            if role.inverse is not None:
                derived.append(InverseRoles(role.name, role.inverse))
            if role.symmetric:
                derived.append(SymmetricRole(role.name))
        explicit = [axiom for axiom in self.axioms if axiom.box == "rbox"]
        return list(dict.fromkeys(derived + explicit))

    # ---- Construcción ----
    def extend(self, axioms: Iterable[Axiom], origin: str):
        axioms = tuple(axioms)
        if not axioms:
            return self
        return replace(
            self,
            axioms=self.axioms + axioms,
            origins=self.origins + (origin,) * len(axioms),
        )

    def without_axioms(self, predicate):
        kept = [(axiom, tag) for axiom, tag in self.tagged_axioms() if not predicate(axiom, tag)]
        return replace(
            self,
            axioms=tuple(axiom for axiom, _ in kept),
            origins=tuple(tag for _, tag in kept),
        )

    def structure(self):
        """Forma comparable ignorando el orden de axiomas y declaraciones"""
        return (
            frozenset(self.classes),
            frozenset(self.roles),
            frozenset(self.attributes),
            frozenset(self.individuals),
            Counter(self.axioms),
        )

    def __len__(self):
        return len(self.axioms)

    def __repr__(self):
        return (
            f"KnowledgeBase(classes={len(self.classes)}, roles={len(self.roles)}, "
            f"attributes={len(self.attributes)}, individuals={len(self.individuals)}, "
            f"axioms={len(self.axioms)})"
        )


def _intern(names, kind):
    index = {}
    for position, name in enumerate(names):
        if name in index:
            raise WellFormednessError(
                "%(name)s declarado dos veces como %(kind)s", code="duplicate",
                params={"name": name, "kind": kind},
            )
        index[name] = position
    return index


def signature_of(kb: KnowledgeBase) -> Signature:
    return kb.signature()


def to_gcis(kb: KnowledgeBase) -> KnowledgeBase:
    """
    Normaliza la TBox a inclusiones generales (GCIs).

    - C ≡ D pasa a C ⊑ D y D ⊑ C
    - disjoint A1..An pasa a Ai ⊓ Aj ⊑ ⊥ por pares
    - domain r C pasa a ∃r.⊤ ⊑ C; range r C pasa a ⊤ ⊑ ∀r.C
    - las banderas inverse/symmetric de las declaraciones pasan a InverseRoles
    RBox y ABox quedan igual.
    """

    axioms, origins = [], []

    def emit(axiom, origin):
        axioms.append(axiom)
        origins.append(origin)

    for role in kb.roles:
        if role.inverse is not None:
            emit(InverseRoles(role.name, role.inverse), "")
        if role.symmetric:
            emit(InverseRoles(role.name, role.name), "")

    for axiom, origin in kb.tagged_axioms():
        if isinstance(axiom, EquivalentClasses):
            emit(SubClassOf(axiom.left, axiom.right), origin)
            emit(SubClassOf(axiom.right, axiom.left), origin)
        elif isinstance(axiom, DisjointClasses):
            names = axiom.classes
            for i, first in enumerate(names):
                for second in names[i + 1:]:
                    emit(SubClassOf(And((Named(first), Named(second))), BOTTOM), origin)
        elif isinstance(axiom, RoleDomain):
            emit(SubClassOf(Some(axiom.role, TOP), axiom.concept), origin)
        elif isinstance(axiom, RoleRange):
            emit(SubClassOf(TOP, All(axiom.role, axiom.concept)), origin)
        elif isinstance(axiom, SymmetricRole):
            emit(InverseRoles(axiom.role, axiom.role), origin)
        else:
            emit(axiom, origin)

    stripped_roles = tuple(RoleDeclaration(role.name) for role in kb.roles)
    return replace(kb, roles=stripped_roles, axioms=tuple(axioms), origins=tuple(origins))


def is_gci_form(kb: KnowledgeBase) -> bool:
    # Solo SubClassOf en la TBox, solo SubRoleOf/InverseRoles en la RBox
    allowed = (SubClassOf, SubRoleOf, InverseRoles)
    return all(axiom.box == "abox" or isinstance(axiom, allowed) for axiom in kb.axioms)
