"""
Diagnóstico por eliminación sobre los axiomas puente.

¿Para qué?
- Un axioma puente dice que un tipo de defecto está inducido por alguna
  de varias fuentes (A ⊑ C1 ⊔ ... ⊔ Cn).
- El controlador descarta fuentes una a una (¬Ci(d)); lo que quede
  demostrado sale del razonador, no de una regla especial.
"""

import logging

from apps.ontology.models import ClassAssertion, Named, Not, Or, SubClassOf
from apps.reasoner.services import Reasoner
from apps.utils.constants import (
    KIND_CLASS,
    KIND_INDIVIDUAL,
    ORIGIN_BRIDGE,
    ORIGIN_ELIMINATION,
)
from apps.utils.exceptions import DiagnosisError
from apps.utils.helpers import render_json

from .models import Diagnosis
from .serializers import DiagnosisSerializer

logger = logging.getLogger(__name__)

FORMAT_TEXT = "text"
FORMAT_JSON = "json"


def _require(kb, name, kind):
    if kb.kind_of(name) != kind:
        raise DiagnosisError(
            "%(name)s no está declarado como %(kind)s", code="unknown-name",
            params={"name": name, "kind": kind},
        )


def _covering(axiom, name):
    return (
        isinstance(axiom, SubClassOf)
        and axiom.sub == Named(name)
        and isinstance(axiom.sup, Or)
        and all(isinstance(operand, Named) for operand in axiom.sup.operands)
    )


def bridge_disjuncts(kb, defect_class):
    """
    Clases C1..Cn del axioma puente `defect_class ⊑ C1 ⊔ ... ⊔ Cn`,
    en el orden del archivo.

    Se prefieren los axiomas con origen "bridge"; una KB sin reetiquetar
    usa el primer axioma de cobertura de la clase.
    """
    _require(kb, defect_class, KIND_CLASS)
    covering = [
        axiom for axiom in kb.axioms_from(ORIGIN_BRIDGE) if _covering(axiom, defect_class)
    ]
    if not covering:
        covering = [axiom for axiom in kb.axioms if _covering(axiom, defect_class)]
        if covering:
            logger.debug("Sin origen bridge para %s: se usa el axioma de cobertura", defect_class)
    if not covering:
        raise DiagnosisError(
            "%(name)s no tiene axioma puente", code="no-bridge",
            params={"name": defect_class},
        )
    return [operand.name for operand in covering[0].sup.operands]


def eliminate(kb, defect, ruled_out):
    """KB más ¬C(defect) por cada clase descartada (origen "elimination")"""
    _require(kb, defect, KIND_INDIVIDUAL)
    names = list(dict.fromkeys(ruled_out))
    for name in names:
        _require(kb, name, KIND_CLASS)
    if names:
        logger.info("Descartadas para %s: %s", defect, ", ".join(names))
    return kb.extend(
        [ClassAssertion(defect, Not(Named(name))) for name in names], ORIGIN_ELIMINATION
    )


def diagnose(kb, defect, defect_class, ruled_out=(), reasoner=None):
    """
    Candidatos y causas demostradas tras descartar `ruled_out`.

    Precondición: kb ⊨ defect_class(defect).
    `entailed` omite defect_class y sus superclases: solo lista lo que
    aportan los descartes.
    """
    disjuncts = bridge_disjuncts(kb, defect_class)
    _require(kb, defect, KIND_INDIVIDUAL)
    reasoner = reasoner or Reasoner(kb)
    reasoner.require_consistent()
    if not reasoner.entails_instance(defect, Named(defect_class)):
        raise DiagnosisError(
            "%(defect)s no es instancia implicada de %(cls)s", code="precondition",
            params={"defect": defect, "cls": defect_class},
        )
    ruled_out = tuple(dict.fromkeys(ruled_out))
    reduced = eliminate(kb, defect, ruled_out)
    after = Reasoner(reduced, reasoner.tableau.max_nodes)
    if not after.is_consistent():
        logger.info("Diagnóstico de %s: los descartes son inconsistentes", defect)
        return Diagnosis(
            defect, defect_class, ruled_out, consistent=False, disjuncts=tuple(disjuncts)
        )

    candidates = tuple(
        name for name in disjuncts
        if not after.entails_instance(defect, Not(Named(name)))
    )
    # Disyuntos y sus superclases nombradas, salvo las ya conocidas por defect_class
    known = set(after.subsumers(defect_class)) | {defect_class}
    scope = list(disjuncts)
    for name in disjuncts:
        scope.extend(after.subsumers(name))
    scope = [name for name in dict.fromkeys(scope) if name not in known]
    entailed = tuple(
        sorted(name for name in scope if after.entails_instance(defect, Named(name)))
    )
    logger.info(
        "Diagnóstico de %s: %d candidatos, %d causas implicadas",
        defect, len(candidates), len(entailed),
    )
    return Diagnosis(
        defect, defect_class, ruled_out, candidates, entailed, True, tuple(disjuncts)
    )


def trace(kb, defect, defect_class, ruled_out):
    """Un Diagnosis tras cada descarte sucesivo"""
    reasoner = Reasoner(kb)
    steps = []
    ruled_out = list(ruled_out)
    for position in range(1, len(ruled_out) + 1):
        steps.append(diagnose(kb, defect, defect_class, ruled_out[:position], reasoner))
    return steps


# ---- Informes ----
def _render_text(diagnosis):
    lines = [
        f"defect: {diagnosis.defect} ({diagnosis.defect_class})",
        f"ruled out: {', '.join(diagnosis.ruled_out) or '-'}",
        f"consistent: {'true' if diagnosis.consistent else 'false'}",
        f"candidates ({len(diagnosis.candidates)} of {len(diagnosis.disjuncts)}):",
    ]
    lines.extend(f"  {name}" for name in diagnosis.candidates)
    lines.append("entailed:")
    lines.extend(f"  {name}" for name in diagnosis.entailed)
    return "\n".join(lines) + "\n"


def render_report(result, output_format=FORMAT_TEXT):
    """Informe de un Diagnosis o de una lista (traza)"""
    many = isinstance(result, (list, tuple))
    if output_format == FORMAT_JSON:
        return render_json(DiagnosisSerializer, result, many=many)
    if output_format != FORMAT_TEXT:
        raise ValueError(output_format)
    if not many:
        return _render_text(result)
    blocks = [
        f"step {position}\n{_render_text(step)}" for position, step in enumerate(result, start=1)
    ]
    return "\n".join(blocks)
