from dataclasses import dataclass, field

from apps.utils.constants import (
    KIND_ATTRIBUTE,
    KIND_CLASS,
    KIND_INDIVIDUAL,
    KIND_ORDER,
    KIND_ROLE,
)

from .axioms import InverseRoles, SubRoleOf, SymmetricRole
from .concepts import InverseRole, NamedRole
from .knowledge_base import AttributeDeclaration, KnowledgeBase, RoleDeclaration


@dataclass(frozen=True)
class Declaration:
    kind: str
    name: str
    inverse: str | None = None
    symmetric: bool = False
    datatype: str | None = None
    position: object = field(default=None, compare=False)

    @property
    def sort_key(self):
        return (KIND_ORDER[self.kind], self.name)


@dataclass(frozen=True)
class SourceModule:
    """
    Un archivo `.dlo`: nombre, importaciones, declaraciones y axiomas,
    con la posición de cada elemento.
    """

    name: str
    imports: tuple = ()
    declarations: tuple = ()
    axioms: tuple = ()
    position: object = field(default=None, compare=False)
    import_positions: tuple = field(default=(), compare=False)
    axiom_positions: tuple = field(default=(), compare=False)

    def declared(self):
        """Nombre -> tipo, incluyendo los inversos declarados implícitamente"""
        kinds = {}
        for declaration in self.declarations:
            kinds[declaration.name] = declaration.kind
            if declaration.inverse:
                kinds.setdefault(declaration.inverse, KIND_ROLE)
        return kinds

    def structure(self):
        # Declaraciones como conjunto: la salida las ordena por tipo y nombre
        return (
            self.name,
            tuple(self.imports),
            tuple(sorted(self.declarations, key=lambda d: d.sort_key)),
            tuple(self.axioms),
        )

    def same_structure(self, other):
        return self.structure() == other.structure()


def kb_from_module(module: SourceModule, origin=None) -> KnowledgeBase:
    """KB de un solo módulo, sin resolver importaciones"""
    classes, roles, attributes, individuals = [], {}, [], []
    for declaration in module.declarations:
        if declaration.kind == KIND_CLASS:
            classes.append(declaration.name)
        elif declaration.kind == KIND_ROLE:
            roles[declaration.name] = RoleDeclaration(
                declaration.name, declaration.inverse, declaration.symmetric
            )
        elif declaration.kind == KIND_ATTRIBUTE:
            attributes.append(AttributeDeclaration(declaration.name, declaration.datatype))
        elif declaration.kind == KIND_INDIVIDUAL:
            individuals.append(declaration.name)
    for declaration in module.declarations:
        if declaration.inverse and declaration.inverse not in roles:
            roles[declaration.inverse] = RoleDeclaration(declaration.inverse)
    tag = module.name if origin is None else origin
    return KnowledgeBase(
        classes=classes,
        roles=tuple(roles.values()),
        attributes=attributes,
        individuals=individuals,
        axioms=module.axioms,
        origins=(tag,) * len(module.axioms),
    )


def module_from_kb(kb: KnowledgeBase, name: str) -> SourceModule:
    """
    Convierte una KB en un módulo serializable.

    Los axiomas InverseRoles/SymmetricRole vuelven a las banderas de la
    declaración; si un rol ya tiene inverso, el segundo se expresa con
    dos `subrole`.
    """
    inverse_of = {role.name: role.inverse for role in kb.roles}
    symmetric = {role.name: role.symmetric for role in kb.roles}
    axioms = []
    for axiom in kb.axioms:
        if isinstance(axiom, SymmetricRole):
            symmetric[axiom.role] = True
        elif isinstance(axiom, InverseRoles):
            first, second = axiom.first, axiom.second
            if first == second:
                symmetric[first] = True
            elif inverse_of.get(first) in (None, second):
                inverse_of[first] = second
            elif inverse_of.get(second) in (None, first):
                inverse_of[second] = first
            else:
                axioms.append(SubRoleOf(NamedRole(second), InverseRole(first)))
                axioms.append(SubRoleOf(InverseRole(first), NamedRole(second)))
        else:
            axioms.append(axiom)

    declarations = [Declaration(KIND_CLASS, c) for c in kb.classes]
    declarations += [
        Declaration(KIND_ROLE, r.name, inverse_of[r.name], symmetric[r.name])
        for r in kb.roles
    ]
    declarations += [
        Declaration(KIND_ATTRIBUTE, a.name, datatype=a.datatype) for a in kb.attributes
    ]
    declarations += [Declaration(KIND_INDIVIDUAL, i) for i in kb.individuals]
    return SourceModule(name=name, declarations=tuple(declarations), axioms=tuple(axioms))
