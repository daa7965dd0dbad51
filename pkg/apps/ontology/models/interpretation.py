from dataclasses import dataclass, field

from .axioms import (
    ClassAssertion,
    DataAssertion,
    DisjointClasses,
    EquivalentClasses,
    InverseRoles,
    RoleAssertion,
    RoleDomain,
    RoleRange,
    SubClassOf,
    SubRoleOf,
    SymmetricRole,
)
from .concepts import (
    All,
    And,
    Bottom,
    InverseRole,
    Named,
    Nominal,
    Not,
    Or,
    Some,
    Top,
)


@dataclass(frozen=True)
class Interpretation:
    """
    Interpretación finita: dominio {0..size-1}, extensiones de clases y
    roles, y la asignación de individuos a elementos (no necesariamente
    inyectiva).
    """

    size: int
    classes: dict = field(default_factory=dict)
    roles: dict = field(default_factory=dict)
    individuals: dict = field(default_factory=dict)

    @property
    def domain(self):
        return frozenset(range(self.size))

    def role_pairs(self, role):
        pairs = self.roles.get(role.name, frozenset())
        if isinstance(role, InverseRole):
            return frozenset((b, a) for a, b in pairs)
        return pairs

    def extension(self, concept):
        # Evaluación directa, sin atajos
        if isinstance(concept, Top):
            return self.domain
        if isinstance(concept, Bottom):
            return frozenset()
        if isinstance(concept, Named):
            return frozenset(self.classes.get(concept.name, frozenset()))
        if isinstance(concept, Nominal):
            return frozenset({self.individuals[concept.individual]})
        if isinstance(concept, Not):
            return self.domain - self.extension(concept.operand)
        if isinstance(concept, And):
            result = self.domain
            for operand in concept.operands:
                result = result & self.extension(operand)
            return result
        if isinstance(concept, Or):
            result = frozenset()
            for operand in concept.operands:
                result = result | self.extension(operand)
            return result
        if isinstance(concept, Some):
            filler = self.extension(concept.filler)
            pairs = self.role_pairs(concept.role)
            return frozenset(a for a, b in pairs if b in filler)
        if isinstance(concept, All):
            filler = self.extension(concept.filler)
            pairs = self.role_pairs(concept.role)
            return frozenset(
                a for a in self.domain
                if all(b in filler for x, b in pairs if x == a)
            )
        raise TypeError(f"expresión no soportada: {concept!r}")

    def satisfies(self, axiom) -> bool:
        if isinstance(axiom, SubClassOf):
            return self.extension(axiom.sub) <= self.extension(axiom.sup)
        if isinstance(axiom, EquivalentClasses):
            return self.extension(axiom.left) == self.extension(axiom.right)
        if isinstance(axiom, DisjointClasses):
            extensions = [self.extension(Named(name)) for name in axiom.classes]
            for i, first in enumerate(extensions):
                for second in extensions[i + 1:]:
                    if first & second:
                        return False
            return True
        if isinstance(axiom, SubRoleOf):
            return self.role_pairs(axiom.sub) <= self.role_pairs(axiom.sup)
        if isinstance(axiom, InverseRoles):
            first = self.roles.get(axiom.first, frozenset())
            second = self.roles.get(axiom.second, frozenset())
            return second == frozenset((b, a) for a, b in first)
        if isinstance(axiom, SymmetricRole):
            pairs = self.roles.get(axiom.role, frozenset())
            return all((b, a) in pairs for a, b in pairs)
        if isinstance(axiom, RoleDomain):
            sources = frozenset(a for a, _ in self.role_pairs(axiom.role))
            return sources <= self.extension(axiom.concept)
        if isinstance(axiom, RoleRange):
            targets = frozenset(b for _, b in self.role_pairs(axiom.role))
            return targets <= self.extension(axiom.concept)
        if isinstance(axiom, ClassAssertion):
            return self.individuals[axiom.individual] in self.extension(axiom.concept)
        if isinstance(axiom, RoleAssertion):
            pair = (self.individuals[axiom.subject], self.individuals[axiom.object])
            return pair in self.roles.get(axiom.role, frozenset())
        if isinstance(axiom, DataAssertion):
            # Los datos no restringen la parte lógica
            return True
        raise TypeError(f"axioma no soportado: {axiom!r}")

    def is_model_of(self, kb) -> bool:
        return all(self.satisfies(axiom) for axiom in kb.axioms) and all(
            self.satisfies(axiom) for axiom in kb.rbox_axioms()
        )
