"""
Respuestas a las preguntas de competencia.

¿Para qué?
- instance?: entailment de instancia.
- fillers? / instances?: respuestas ciertas sobre individuos declarados
  (nunca testigos anónimos). El modelo de consistencia filtra candidatos
  y cada superviviente se confirma con una prueba de entailment.
- value?: la única aserción de dato, convertida a la unidad pedida.
"""

import logging

from apps.measures.models import Quantity
from apps.measures.services import convert
from apps.reasoner.services import Reasoner
from apps.utils.exceptions import QueryError

from .models import FillersQuery, InstanceQuery, InstancesQuery, ValueQuery
from .parser import parse_query

logger = logging.getLogger(__name__)

ANSWER_TRUE = "true"
ANSWER_FALSE = "false"


def _reasoner(kb, reasoner):
    reasoner = reasoner or Reasoner(kb)
    reasoner.require_consistent()
    return reasoner


def ask_instance(kb, query: InstanceQuery, reasoner=None) -> bool:
    reasoner = _reasoner(kb, reasoner)
    return reasoner.entails_instance(query.individual, query.concept)


def certain_fillers(kb, query: FillersQuery, reasoner=None):
    """Individuos b con kb ⊨ R(a, b), ordenados"""
    reasoner = _reasoner(kb, reasoner)
    reasoner.check_individual(query.individual)
    witness = reasoner.consistency_witness()
    pairs = witness.role_pairs(query.role)
    source = witness.individuals[query.individual]
    candidates = [
        name for name in kb.individuals
        if (source, witness.individuals[name]) in pairs
    ]
    fillers = sorted(
        name for name in candidates
        if reasoner.entails_role(query.individual, query.role, name)
    )
    logger.debug(
        "fillers? %s %s: %d candidatos, %d ciertos",
        query.individual, query.role, len(candidates), len(fillers),
    )
    return fillers


def retrieve_instances(kb, query: InstancesQuery, reasoner=None):
    """Individuos declarados a con kb ⊨ C(a), ordenados"""
    reasoner = _reasoner(kb, reasoner)
    reasoner.check_concept(query.concept)
    witness = reasoner.consistency_witness()
    extension = witness.extension(query.concept)
    return sorted(
        name for name in kb.individuals
        if witness.individuals[name] in extension
        and reasoner.entails_instance(name, query.concept)
    )


def attribute_value(kb, query: ValueQuery) -> Quantity:
    assertions = kb.data_assertions(query.individual, query.attribute)
    params = {"individual": query.individual, "attr": query.attribute}
    if not assertions:
        raise QueryError(
            "%(individual)s no tiene valor para %(attr)s", code="no-value", params=params,
        )
    if len(assertions) > 1:
        values = ", ".join(
            f"{assertion.value} {assertion.unit or ''}".strip() for assertion in assertions
        )
        raise QueryError(
            "%(individual)s tiene varios valores para %(attr)s: %(values)s",
            code="ambiguous-value",
            params={**params, "values": values},
        )
    assertion = assertions[0]
    if not assertion.is_numeric or assertion.unit is None:
        raise QueryError(
            "El valor de %(attr)s en %(individual)s no es una cantidad con unidad",
            code="no-value",
            params=params,
        )
    return convert(Quantity(assertion.value, assertion.unit), query.unit)


def answer(kb, query, reasoner=None):
    if isinstance(query, InstanceQuery):
        return ask_instance(kb, query, reasoner)
    if isinstance(query, FillersQuery):
        return certain_fillers(kb, query, reasoner)
    if isinstance(query, InstancesQuery):
        return retrieve_instances(kb, query, reasoner)
    return attribute_value(kb, query)


def format_answer(result) -> str:
    """true|false, nombres uno por línea, o "VALOR UNIDAD"; sin salto final"""
    if isinstance(result, bool):
        return ANSWER_TRUE if result else ANSWER_FALSE
    if isinstance(result, Quantity):
        return str(result)
    return "\n".join(sorted(result))


def ask(kb, text, reasoner=None) -> str:
    query = parse_query(text, kb)
    logger.info("Consulta: %s", " ".join(text.split()))
    return format_answer(answer(kb, query, reasoner))
