"""
Exportación a OWL 2 Functional-Style Syntax.

¿Para qué?
- Contrastar la base con un razonador OWL externo.
- Cubre exactamente los constructores del modelo; una línea por axioma.
"""

from decimal import Decimal

from apps.utils.constants import DATATYPE_DECIMAL

from .models import (
    All,
    And,
    Bottom,
    ClassAssertion,
    DataAssertion,
    DisjointClasses,
    EquivalentClasses,
    InverseRole,
    InverseRoles,
    KnowledgeBase,
    Named,
    Nominal,
    Not,
    Or,
    RoleAssertion,
    RoleDomain,
    RoleRange,
    Some,
    SubClassOf,
    SubRoleOf,
    SymmetricRole,
    Top,
)
from .parser import escape

PREFIXES = (
    ("owl", "http://www.w3.org/2002/07/owl#"),
    ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
    ("rdfs", "http://www.w3.org/2000/01/rdf-schema#"),
    ("xsd", "http://www.w3.org/2001/XMLSchema#"),
)
UNIT_ANNOTATION = "unitCode"
XSD_TYPES = {DATATYPE_DECIMAL: "xsd:decimal"}


def iri(name):
    return f":{name}"


def role_expression(role):
    if isinstance(role, InverseRole):
        return f"ObjectInverseOf({iri(role.name)})"
    return iri(role.name)


def class_expression(concept):
    if isinstance(concept, Top):
        return "owl:Thing"
    if isinstance(concept, Bottom):
        return "owl:Nothing"
    if isinstance(concept, Named):
        return iri(concept.name)
    if isinstance(concept, Nominal):
        return f"ObjectOneOf({iri(concept.individual)})"
    if isinstance(concept, Not):
        return f"ObjectComplementOf({class_expression(concept.operand)})"
    if isinstance(concept, (And, Or)):
        keyword = "ObjectIntersectionOf" if isinstance(concept, And) else "ObjectUnionOf"
        inner = " ".join(class_expression(operand) for operand in concept.operands)
        return f"{keyword}({inner})"
    keyword = "ObjectSomeValuesFrom" if isinstance(concept, Some) else "ObjectAllValuesFrom"
    return f"{keyword}({role_expression(concept.role)} {class_expression(concept.filler)})"


def literal(value):
    if isinstance(value, Decimal):
        return f'"{value}"^^xsd:decimal'
    return f'"{escape(value)}"^^xsd:string'


def axiom_line(axiom):
    if isinstance(axiom, SubClassOf):
        return f"SubClassOf({class_expression(axiom.sub)} {class_expression(axiom.sup)})"
    if isinstance(axiom, EquivalentClasses):
        return (
            f"EquivalentClasses({class_expression(axiom.left)} "
            f"{class_expression(axiom.right)})"
        )
    if isinstance(axiom, DisjointClasses):
        return "DisjointClasses(" + " ".join(iri(name) for name in axiom.classes) + ")"
    if isinstance(axiom, SubRoleOf):
        return (
            f"SubObjectPropertyOf({role_expression(axiom.sub)} "
            f"{role_expression(axiom.sup)})"
        )
    if isinstance(axiom, InverseRoles):
        return f"InverseObjectProperties({iri(axiom.first)} {iri(axiom.second)})"
    if isinstance(axiom, SymmetricRole):
        return f"SymmetricObjectProperty({iri(axiom.role)})"
    if isinstance(axiom, RoleDomain):
        return (
            f"ObjectPropertyDomain({role_expression(axiom.role)} "
            f"{class_expression(axiom.concept)})"
        )
    if isinstance(axiom, RoleRange):
        return (
            f"ObjectPropertyRange({role_expression(axiom.role)} "
            f"{class_expression(axiom.concept)})"
        )
    if isinstance(axiom, ClassAssertion):
        return f"ClassAssertion({class_expression(axiom.concept)} {iri(axiom.individual)})"
    if isinstance(axiom, RoleAssertion):
        return (
            f"ObjectPropertyAssertion({iri(axiom.role)} "
            f"{iri(axiom.subject)} {iri(axiom.object)})"
        )
    if isinstance(axiom, DataAssertion):
        annotation = ""
        if axiom.unit is not None:
            annotation = f'Annotation({iri(UNIT_ANNOTATION)} "{axiom.unit}") '
        return (
            f"DataPropertyAssertion({annotation}{iri(axiom.attribute)} "
            f"{iri(axiom.individual)} {literal(axiom.value)})"
        )
    raise TypeError(f"axioma no soportado: {axiom!r}")


def export_interchange(kb: KnowledgeBase, name="defectont") -> str:
    """Documento funcional OWL 2 con declaraciones, RBox derivada y axiomas"""
    lines = [f"Prefix(:=<urn:defectont:{name}#>)"]
    lines += [f"Prefix({prefix}:=<{url}>)" for prefix, url in PREFIXES]
    lines.append("")
    lines.append(f"Ontology(<urn:defectont:{name}>")

    # ---- Declaraciones ----
    lines += [f"Declaration(Class({iri(name)}))" for name in kb.classes]
    lines += [f"Declaration(ObjectProperty({iri(role.name)}))" for role in kb.roles]
    lines += [
        f"Declaration(DataProperty({iri(attribute.name)}))" for attribute in kb.attributes
    ]
    lines += [f"Declaration(NamedIndividual({iri(name)}))" for name in kb.individuals]
    if any(isinstance(a, DataAssertion) and a.unit for a in kb.axioms):
        lines.append(f"Declaration(AnnotationProperty({iri(UNIT_ANNOTATION)}))")

    # ---- Rangos de datos ----
    for attribute in kb.attributes:
        xsd = XSD_TYPES.get(attribute.datatype, "xsd:string")
        lines.append(f"DataPropertyRange({iri(attribute.name)} {xsd})")

    # ---- Axiomas ----
    explicit_rbox = {axiom for axiom in kb.axioms if axiom.box == "rbox"}
    lines += [axiom_line(axiom) for axiom in kb.rbox_axioms() if axiom not in explicit_rbox]
    lines += [axiom_line(axiom) for axiom in kb.axioms]
    lines.append(")")
    return "\n".join(lines) + "\n"
