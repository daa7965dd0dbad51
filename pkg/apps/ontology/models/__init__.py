# Importa todo el modelo para usarlo como `from apps.ontology.models import ...`

from .concepts import (
    BOTTOM,
    TOP,
    All,
    And,
    Bottom,
    ConceptExpr,
    InverseRole,
    Named,
    NamedRole,
    Nominal,
    Not,
    Or,
    RoleExpr,
    Some,
    Top,
    as_role,
    concept_depth,
    concept_signature,
    inverse,
    is_nnf,
    negate,
    nnf,
    rename_concept,
    rename_role,
)
from .axioms import (
    Axiom,
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
from .knowledge_base import (
    AttributeDeclaration,
    KnowledgeBase,
    RoleDeclaration,
    Signature,
    is_gci_form,
    signature_of,
    to_gcis,
)
from .interpretation import Interpretation
from .source import Declaration, SourceModule, kb_from_module, module_from_kb

__all__ = [
    # Concepts
    'ConceptExpr',
    'Top',
    'Bottom',
    'Named',
    'Nominal',
    'Not',
    'And',
    'Or',
    'Some',
    'All',
    'TOP',
    'BOTTOM',
    'RoleExpr',
    'NamedRole',
    'InverseRole',
    'as_role',
    'inverse',
    'nnf',
    'negate',
    'is_nnf',
    'concept_depth',
    'concept_signature',
    'rename_concept',
    'rename_role',

    # Axioms
    'Axiom',
    'SubClassOf',
    'EquivalentClasses',
    'DisjointClasses',
    'SubRoleOf',
    'InverseRoles',
    'SymmetricRole',
    'RoleDomain',
    'RoleRange',
    'ClassAssertion',
    'RoleAssertion',
    'DataAssertion',

    # Knowledge base
    'KnowledgeBase',
    'RoleDeclaration',
    'AttributeDeclaration',
    'Signature',
    'signature_of',
    'to_gcis',
    'is_gci_form',

    # Semantics
    'Interpretation',

    # Source modules
    'Declaration',
    'SourceModule',
    'kb_from_module',
    'module_from_kb',
]
