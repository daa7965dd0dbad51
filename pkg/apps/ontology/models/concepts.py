from collections import Counter
from dataclasses import dataclass

from apps.utils.exceptions import WellFormednessError


class RoleExpr:
    """Rol nombrado o inverso de un rol nombrado."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class NamedRole(RoleExpr):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class InverseRole(RoleExpr):
    # Solo guarda el nombre base: Inverse(Inverse(r)) no es representable
    name: str

    def __str__(self):
        return f"(inv {self.name})"


def inverse(role: RoleExpr) -> RoleExpr:
    if isinstance(role, InverseRole):
        return NamedRole(role.name)
    return InverseRole(role.name)


def as_role(role) -> RoleExpr:
    if isinstance(role, RoleExpr):
        return role
    return NamedRole(role)


class ConceptExpr:
    """
    Expresión de clase.

    Variantes: Top, Bottom, Named, Nominal, Not, And, Or, Some, All.
    Son inmutables y comparables; And/Or se comparan como multiconjuntos
    pero conservan el orden de origen para la salida.
    """

    __slots__ = ()

    def children(self):
        return ()

    def __and__(self, other):
        return And((self, other))

    def __or__(self, other):
        return Or((self, other))

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True, slots=True)
class Top(ConceptExpr):
    def __str__(self):
        return "top"


@dataclass(frozen=True, slots=True)
class Bottom(ConceptExpr):
    def __str__(self):
        return "bot"


@dataclass(frozen=True, slots=True)
class Named(ConceptExpr):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Nominal(ConceptExpr):
    individual: str

    def __str__(self):
        return f"(one {self.individual})"


@dataclass(frozen=True, slots=True)
class Not(ConceptExpr):
    operand: ConceptExpr

    def children(self):
        return (self.operand,)

    def __str__(self):
        return f"(not {self.operand})"


class _NaryConcept(ConceptExpr):
    __slots__ = ("operands",)
    keyword = ""

    def __init__(self, operands):
        operands = tuple(operands)
        if len(operands) < 2:
            raise WellFormednessError(
                "%(op)s necesita al menos dos operandos",
                code="arity",
                params={"op": self.keyword},
            )
        for operand in operands:
            if not isinstance(operand, ConceptExpr):
                raise WellFormednessError(
                    "Operando no es una expresión de clase: %(value)r",
                    code="arity",
                    params={"value": operand},
                )
        object.__setattr__(self, "operands", operands)

    def __setattr__(self, key, value):
        raise AttributeError("las expresiones de clase son inmutables")

    def children(self):
        return self.operands

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return Counter(self.operands) == Counter(other.operands)

    def __hash__(self):
        return hash((self.keyword, frozenset(Counter(self.operands).items())))

    def __repr__(self):
        return f"{type(self).__name__}({self.operands!r})"

    def __str__(self):
        inner = " ".join(str(operand) for operand in self.operands)
        return f"({self.keyword} {inner})"


class And(_NaryConcept):
    __slots__ = ()
    keyword = "and"


class Or(_NaryConcept):
    __slots__ = ()
    keyword = "or"


@dataclass(frozen=True, slots=True)
class Some(ConceptExpr):
    role: RoleExpr
    filler: ConceptExpr

    def children(self):
        return (self.filler,)

    def __str__(self):
        return f"(some {self.role} {self.filler})"


@dataclass(frozen=True, slots=True)
class All(ConceptExpr):
    role: RoleExpr
    filler: ConceptExpr

    def children(self):
        return (self.filler,)

    def __str__(self):
        return f"(all {self.role} {self.filler})"


TOP = Top()
BOTTOM = Bottom()


def nnf(concept: ConceptExpr) -> ConceptExpr:
    """
    Forma normal negada: Not solo queda sobre Named o Nominal.
    Es idempotente.
    """
    if isinstance(concept, (Top, Bottom, Named, Nominal)):
        return concept
    if isinstance(concept, And):
        return And(nnf(operand) for operand in concept.operands)
    if isinstance(concept, Or):
        return Or(nnf(operand) for operand in concept.operands)
    if isinstance(concept, Some):
        return Some(concept.role, nnf(concept.filler))
    if isinstance(concept, All):
        return All(concept.role, nnf(concept.filler))
    if isinstance(concept, Not):
        return _push_negation(concept.operand)
    raise WellFormednessError(
        "Expresión desconocida: %(value)r", code="unsupported",
        params={"value": concept},
    )


def _push_negation(operand):
    if isinstance(operand, (Named, Nominal)):
        return Not(operand)
    if isinstance(operand, Top):
        return BOTTOM
    if isinstance(operand, Bottom):
        return TOP
    if isinstance(operand, Not):
        return nnf(operand.operand)
    if isinstance(operand, And):
        return Or(_push_negation(child) for child in operand.operands)
    if isinstance(operand, Or):
        return And(_push_negation(child) for child in operand.operands)
    if isinstance(operand, Some):
        return All(operand.role, _push_negation(operand.filler))
    if isinstance(operand, All):
        return Some(operand.role, _push_negation(operand.filler))
    raise WellFormednessError(
        "Expresión desconocida: %(value)r", code="unsupported",
        params={"value": operand},
    )


def negate(concept: ConceptExpr) -> ConceptExpr:
    return nnf(Not(concept))


def is_nnf(concept: ConceptExpr) -> bool:
    if isinstance(concept, Not):
        return isinstance(concept.operand, (Named, Nominal))
    return all(is_nnf(child) for child in concept.children())


def concept_depth(concept: ConceptExpr) -> int:
    children = concept.children()
    if not children:
        return 0
    return 1 + max(concept_depth(child) for child in children)


def concept_signature(concept: ConceptExpr):
    """Nombres usados: (clases, roles, individuos)"""
    classes, roles, individuals = set(), set(), set()
    stack = [concept]
    while stack:
        current = stack.pop()
        if isinstance(current, Named):
            classes.add(current.name)
        elif isinstance(current, Nominal):
            individuals.add(current.individual)
        elif isinstance(current, (Some, All)):
            roles.add(current.role.name)
        stack.extend(current.children())
    return classes, roles, individuals


def rename_concept(concept: ConceptExpr, mapping) -> ConceptExpr:
    """Renombra clases, roles e individuos según `mapping` (nombre -> nombre)"""
    if isinstance(concept, Named):
        return Named(mapping.get(concept.name, concept.name))
    if isinstance(concept, Nominal):
        return Nominal(mapping.get(concept.individual, concept.individual))
    if isinstance(concept, Not):
        return Not(rename_concept(concept.operand, mapping))
    if isinstance(concept, And):
        return And(rename_concept(child, mapping) for child in concept.operands)
    if isinstance(concept, Or):
        return Or(rename_concept(child, mapping) for child in concept.operands)
    if isinstance(concept, (Some, All)):
        return type(concept)(
            rename_role(concept.role, mapping),
            rename_concept(concept.filler, mapping),
        )
    return concept


def rename_role(role: RoleExpr, mapping) -> RoleExpr:
    return type(role)(mapping.get(role.name, role.name))
