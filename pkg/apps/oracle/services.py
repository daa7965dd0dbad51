"""
Oráculo por fuerza bruta: enumera interpretaciones finitas pequeñas.

¿Para qué?
- Comprobar el tableau en KBs diminutas generadas al azar.
- Las extensiones se representan como máscaras de bits sobre el dominio;
  los axiomas se evalúan con semántica directa.

Simetría: los individuos se asignan en forma canónica (el i-ésimo
individuo usa como mucho un elemento nuevo respecto a los anteriores).
"""

import logging
from dataclasses import dataclass

from apps.ontology.models import (
    All,
    And,
    Bottom,
    ClassAssertion,
    DataAssertion,
    InverseRole,
    InverseRoles,
    Interpretation,
    Named,
    Nominal,
    Not,
    Or,
    RoleAssertion,
    Some,
    SubClassOf,
    SubRoleOf,
    Top,
    concept_signature,
    to_gcis,
)
from apps.utils.exceptions import OracleError
from apps.utils.helpers import toolkit_setting

logger = logging.getLogger(__name__)

VERDICT_CONSISTENT = "consistent"
VERDICT_NO_MODEL = "no-model-up-to-bound"


@dataclass(frozen=True)
class Verdict:
    consistent: bool
    bound: int
    model: Interpretation | None = None

    def __str__(self):
        return VERDICT_CONSISTENT if self.consistent else VERDICT_NO_MODEL


class _State:
    """Interpretación en curso: máscaras de clases y sucesores por rol."""

    __slots__ = ("size", "full", "classes", "succ", "pred", "assignment")

    def __init__(self, size, assignment):
        self.size = size
        self.full = (1 << size) - 1
        self.assignment = assignment
        self.classes = []
        self.succ = []
        self.pred = []


class _Compiler:
    def __init__(self, kb):
        self.classes = {name: i for i, name in enumerate(kb.classes)}
        self.roles = {role.name: i for i, role in enumerate(kb.roles)}
        self.individuals = {name: i for i, name in enumerate(kb.individuals)}

    def relation(self, role):
        index = self.roles[role.name]
        if isinstance(role, InverseRole):
            return lambda state: state.pred[index]
        return lambda state: state.succ[index]

    def concept(self, concept):
        """Función state -> máscara de la extensión"""
        if isinstance(concept, Top):
            return lambda state: state.full
        if isinstance(concept, Bottom):
            return lambda state: 0
        if isinstance(concept, Named):
            index = self.classes[concept.name]
            return lambda state: state.classes[index]
        if isinstance(concept, Nominal):
            raise OracleError(
                "El oráculo no admite nominales", code="fragment",
            )
        if isinstance(concept, Not):
            inner = self.concept(concept.operand)
            return lambda state: state.full & ~inner(state)
        if isinstance(concept, (And, Or)):
            parts = [self.concept(operand) for operand in concept.operands]
            if isinstance(concept, And):
                def conjunction(state):
                    mask = state.full
                    for part in parts:
                        mask &= part(state)
                    return mask
                return conjunction

            def disjunction(state):
                mask = 0
                for part in parts:
                    mask |= part(state)
                return mask
            return disjunction
        if isinstance(concept, (Some, All)):
            relation = self.relation(concept.role)
            filler = self.concept(concept.filler)
            existential = isinstance(concept, Some)

            def restriction(state):
                target = filler(state)
                outside = state.full & ~target
                mask = 0
                for element, successors in enumerate(relation(state)):
                    if existential and successors & target:
                        mask |= 1 << element
                    elif not existential and not successors & outside:
                        mask |= 1 << element
                return mask
            return restriction
        raise OracleError(
            "Constructor fuera del fragmento: %(value)r", code="fragment",
            params={"value": concept},
        )

    def axiom(self, axiom):
        """(usa roles, función state -> bool)"""
        if isinstance(axiom, SubClassOf):
            sub, sup = self.concept(axiom.sub), self.concept(axiom.sup)
            uses_roles = bool(
                concept_signature(axiom.sub)[1] or concept_signature(axiom.sup)[1]
            )
            return uses_roles, lambda state: not sub(state) & ~sup(state)
        if isinstance(axiom, ClassAssertion):
            concept = self.concept(axiom.concept)
            individual = self.individuals[axiom.individual]
            return bool(concept_signature(axiom.concept)[1]), (
                lambda state: concept(state) >> state.assignment[individual] & 1 == 1
            )
        if isinstance(axiom, RoleAssertion):
            role = self.roles[axiom.role]
            subject = self.individuals[axiom.subject]
            obj = self.individuals[axiom.object]
            return True, lambda state: (
                state.succ[role][state.assignment[subject]] >> state.assignment[obj] & 1 == 1
            )
        if isinstance(axiom, SubRoleOf):
            sub, sup = self.relation(axiom.sub), self.relation(axiom.sup)
            return True, lambda state: all(
                not low & ~high for low, high in zip(sub(state), sup(state))
            )
        if isinstance(axiom, InverseRoles):
            first, second = self.roles[axiom.first], self.roles[axiom.second]
            return True, lambda state: state.succ[second] == state.pred[first]
        if isinstance(axiom, DataAssertion):
            return False, lambda state: True
        raise OracleError(
            "Axioma fuera del fragmento: %(axiom)s", code="fragment",
            params={"axiom": type(axiom).__name__},
        )


def _assignments(count, size):
    # Asignaciones canónicas de individuos a elementos (restricted growth)
    if count == 0:
        yield ()
        return

    def extend(prefix, used):
        if len(prefix) == count:
            yield tuple(prefix)
            return
        for element in range(min(used + 1, size)):
            yield from extend(prefix + [element], max(used, element + 1))

    yield from extend([], 0)


def _to_interpretation(kb, state):
    elements = range(state.size)
    classes = {
        name: frozenset(e for e in elements if state.classes[i] >> e & 1)
        for i, name in enumerate(kb.classes)
    }
    roles = {
        role.name: frozenset(
            (a, b) for a in elements for b in elements if state.succ[i][a] >> b & 1
        )
        for i, role in enumerate(kb.roles)
    }
    individuals = {name: state.assignment[i] for i, name in enumerate(kb.individuals)}
    return Interpretation(state.size, classes, roles, individuals)


def enumerate_models(kb, max_size):
    """
    Genera todas las interpretaciones modelo de kb con dominio 1..max_size.

    Solo la asignación de individuos es canónica: los elementos anónimos
    no se reducen por isomorfismo y un mismo modelo sale varias veces.
    """
    compiler = _Compiler(kb)
    checks = [compiler.axiom(axiom) for axiom in to_gcis(kb).axioms]
    early = [check for uses_roles, check in checks if not uses_roles]
    late = [check for uses_roles, check in checks if uses_roles]
    class_count, role_count = len(kb.classes), len(kb.roles)

    for size in range(1, max_size + 1):
        full = (1 << size) - 1
        for assignment in _assignments(len(kb.individuals), size):
            state = _State(size, assignment)
            for class_bits in range(1 << (class_count * size)):
                state.classes = [
                    (class_bits >> (i * size)) & full for i in range(class_count)
                ]
                state.succ = [[0] * size for _ in range(role_count)]
                state.pred = [[0] * size for _ in range(role_count)]
                if not all(check(state) for check in early):
                    continue
                for role_bits in range(1 << (role_count * size * size)):
                    _fill_roles(state, role_bits, role_count, size)
                    if all(check(state) for check in late):
                        yield _to_interpretation(kb, state)


def _fill_roles(state, bits, role_count, size):
    full = (1 << size) - 1
    for role in range(role_count):
        block = bits >> (role * size * size)
        succ = [(block >> (a * size)) & full for a in range(size)]
        pred = [0] * size
        for a, successors in enumerate(succ):
            for b in range(size):
                if successors >> b & 1:
                    pred[b] |= 1 << a
        state.succ[role] = succ
        state.pred[role] = pred


def oracle_consistent(kb, bound=None, witness=None):
    """
    Veredicto del oráculo.

    Si se pasa el modelo testigo del tableau y lo es de verdad, su tamaño
    basta como cota; si no, se enumera hasta `bound`.
    """
    if witness is not None and witness.is_model_of(kb):
        return Verdict(True, witness.size, witness)
    bound = bound or toolkit_setting("ORACLE_MAX_DOMAIN")
    for model in enumerate_models(kb, bound):
        logger.debug("Oráculo: modelo de tamaño %d", model.size)
        return Verdict(True, bound, model)
    return Verdict(False, bound)
