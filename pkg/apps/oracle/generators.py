"""
Generadores aleatorios reproducibles (random.Random con semilla).

Límites por defecto del fragmento de prueba: ≤3 clases, ≤2 roles,
≤2 individuos, ≤4 axiomas, profundidad ≤2, sin nominales.
"""

import random
from decimal import Decimal

from apps.measures.models import REGISTRY
from apps.ontology.models import (
    BOTTOM,
    TOP,
    All,
    And,
    ClassAssertion,
    DataAssertion,
    Declaration,
    DisjointClasses,
    EquivalentClasses,
    InverseRole,
    KnowledgeBase,
    Named,
    NamedRole,
    Nominal,
    Not,
    Or,
    RoleAssertion,
    RoleDeclaration,
    RoleDomain,
    RoleRange,
    Some,
    SourceModule,
    SubClassOf,
    SubRoleOf,
)
from apps.utils.constants import (
    DATATYPE_DECIMAL,
    DATATYPE_STRING,
    KIND_ATTRIBUTE,
    KIND_CLASS,
    KIND_INDIVIDUAL,
    KIND_ROLE,
)

CLASS_NAMES = ("A", "B", "C", "D")
ROLE_NAMES = ("r", "s", "t")
INDIVIDUAL_NAMES = ("a", "b", "c")


def make_rng(seed):
    return random.Random(seed)


def random_role(rng, roles, allow_inverse=True):
    name = rng.choice(roles)
    if allow_inverse and rng.random() < 0.3:
        return InverseRole(name)
    return NamedRole(name)


def random_concept(rng, classes, roles, depth, individuals=(), allow_inverse=True):
    """Árbol de expresión de profundidad ≤ depth (nominales solo si hay individuos)"""
    leaves = ["named"] * 4 + ["top", "bot"]
    if individuals:
        leaves.append("nominal")
    if depth <= 0 or (not roles and rng.random() < 0.5):
        kind = rng.choice(leaves)
    else:
        kind = rng.choice(leaves + ["not", "and", "or", "some", "all"] * 2)
        if kind in ("some", "all") and not roles:
            kind = "not"

    if kind == "named":
        return Named(rng.choice(classes))
    if kind == "top":
        return TOP
    if kind == "bot":
        return BOTTOM
    if kind == "nominal":
        return Nominal(rng.choice(individuals))

    def child():
        return random_concept(rng, classes, roles, depth - 1, individuals, allow_inverse)

    if kind == "not":
        return Not(child())
    if kind in ("and", "or"):
        operands = [child() for _ in range(rng.randint(2, 3))]
        return And(operands) if kind == "and" else Or(operands)
    role = random_role(rng, roles, allow_inverse)
    return Some(role, child()) if kind == "some" else All(role, child())


def random_axiom(rng, classes, roles, individuals, depth):
    def concept():
        return random_concept(rng, classes, roles, depth)

    choices = ["subclass"] * 4 + ["equiv", "instance", "instance"]
    if len(classes) >= 2:
        choices.append("disjoint")
    if roles:
        choices += ["domain", "range", "rel", "subrole"]
    kind = rng.choice(choices)

    if kind == "subclass":
        return SubClassOf(concept(), concept())
    if kind == "equiv":
        return EquivalentClasses(concept(), concept())
    if kind == "disjoint":
        return DisjointClasses(tuple(rng.sample(classes, 2)))
    if kind == "instance":
        return ClassAssertion(rng.choice(individuals), concept())
    if kind == "domain":
        return RoleDomain(random_role(rng, roles), concept())
    if kind == "range":
        return RoleRange(random_role(rng, roles), concept())
    if kind == "rel":
        return RoleAssertion(rng.choice(individuals), rng.choice(roles), rng.choice(individuals))
    return SubRoleOf(random_role(rng, roles), random_role(rng, roles))


def random_kb(
    rng, max_classes=3, max_roles=2, max_individuals=2, max_axioms=4, depth=2
) -> KnowledgeBase:
    """KB pequeña sin nominales para comparar el tableau con el oráculo"""
    classes = list(CLASS_NAMES[: rng.randint(1, max_classes)])
    roles = list(ROLE_NAMES[: rng.randint(0, max_roles)])
    individuals = list(INDIVIDUAL_NAMES[: rng.randint(1, max_individuals)])
    declarations = []
    for name in roles:
        inverse = None
        symmetric = rng.random() < 0.15
        declarations.append(RoleDeclaration(name, inverse, symmetric))
    if len(roles) == 2 and rng.random() < 0.15:
        declarations[0] = RoleDeclaration(roles[0], roles[1], declarations[0].symmetric)
    axioms = [
        random_axiom(rng, classes, roles, individuals, depth)
        for _ in range(rng.randint(1, max_axioms))
    ]
    return KnowledgeBase(
        classes=classes,
        roles=declarations,
        individuals=individuals,
        axioms=axioms,
        origins=("random",) * len(axioms),
    )


def random_module(rng, name="generated", depth=3) -> SourceModule:
    """Módulo aleatorio bien formado para las pruebas de ida y vuelta del parser"""
    classes = list(CLASS_NAMES[: rng.randint(1, len(CLASS_NAMES))])
    roles = list(ROLE_NAMES[: rng.randint(1, len(ROLE_NAMES))])
    individuals = list(INDIVIDUAL_NAMES[: rng.randint(1, len(INDIVIDUAL_NAMES))])

    declarations = [Declaration(KIND_CLASS, c) for c in classes]
    for index, role in enumerate(roles):
        inverse = None
        if rng.random() < 0.3:
            inverse = f"{role}Inv"
        declarations.append(
            Declaration(KIND_ROLE, role, inverse=inverse, symmetric=rng.random() < 0.2)
        )
        if inverse:
            declarations.append(Declaration(KIND_ROLE, inverse))
    declarations.append(Declaration(KIND_ATTRIBUTE, "size", datatype=DATATYPE_DECIMAL))
    declarations.append(Declaration(KIND_ATTRIBUTE, "label", datatype=DATATYPE_STRING))
    declarations += [Declaration(KIND_INDIVIDUAL, i) for i in individuals]
    rng.shuffle(declarations)

    axioms = []
    for _ in range(rng.randint(0, 8)):
        if rng.random() < 0.85:
            axiom = random_axiom(rng, classes, roles, individuals, rng.randint(0, depth))
            if isinstance(axiom, ClassAssertion) and rng.random() < 0.3:
                axiom = ClassAssertion(
                    axiom.individual,
                    random_concept(rng, classes, roles, depth, individuals=individuals),
                )
        elif rng.random() < 0.5:
            value = Decimal(rng.randint(-5000, 5000)).scaleb(-rng.randint(0, 4))
            unit = rng.choice([None] + REGISTRY.codes())
            axiom = DataAssertion(rng.choice(individuals), "size", value, unit)
        else:
            text = rng.choice(["plain", 'with "quotes"', "back\\slash", "µm ünïcode"])
            axiom = DataAssertion(rng.choice(individuals), "label", text)
        axioms.append(axiom)

    imports = tuple(f"dep{i}" for i in range(rng.randint(0, 2)))
    return SourceModule(
        name=name,
        imports=imports,
        declarations=tuple(declarations),
        axioms=tuple(axioms),
    )
