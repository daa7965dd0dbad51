"""
Servicios de razonamiento sobre una KnowledgeBase.

¿Para qué?
- Consistencia, satisfacibilidad y entailment (clase, instancia, rol).
- Clasificación (Taxonomy) y realización de individuos.
- Testigo de consistencia: el modelo finito que sale del grafo de compleción.

Cada prueba construye su propio grafo; la KB nunca se modifica.
"""

import logging

from apps.ontology.models import (
    TOP,
    All,
    And,
    EquivalentClasses,
    Named,
    Nominal,
    Not,
    SubClassOf,
    as_role,
    concept_signature,
)
from apps.utils.constants import KIND_CLASS, KIND_INDIVIDUAL, KIND_ROLE
from apps.utils.exceptions import ReasonerError
from apps.utils.helpers import toolkit_setting

from .tableau import CompiledKB, Tableau
from .taxonomy import Taxonomy

logger = logging.getLogger(__name__)


class Reasoner:
    """Razonador sobre una KB fija; guarda solo el resultado de consistencia."""

    def __init__(self, kb, max_nodes=None):
        self.kb = kb
        self.compiled = CompiledKB(kb)
        self.tableau = Tableau(
            self.compiled, max_nodes or toolkit_setting("MAX_GRAPH_NODES")
        )
        self._consistent = None
        self._graph = None
        self._taxonomy = None

    # ---- Validación de entradas ----
    def check_concept(self, concept):
        classes, roles, individuals = concept_signature(concept)
        for kind, names in (
            (KIND_CLASS, classes), (KIND_ROLE, roles), (KIND_INDIVIDUAL, individuals)
        ):
            for name in sorted(names):
                if self.kb.kind_of(name) != kind:
                    raise ReasonerError(
                        "%(name)s no está declarado como %(kind)s", code="unknown-name",
                        params={"name": name, "kind": kind},
                    )
        return concept

    def check_individual(self, name):
        if self.kb.kind_of(name) != KIND_INDIVIDUAL:
            raise ReasonerError(
                "El individuo %(name)s no está declarado", code="unknown-individual",
                params={"name": name},
            )
        return self.kb.individual_ids[name]

    def check_class(self, name):
        if self.kb.kind_of(name) != KIND_CLASS:
            raise ReasonerError(
                "La clase %(name)s no está declarada", code="unknown-name",
                params={"name": name},
            )
        return name

    def require_consistent(self):
        if not self.is_consistent():
            raise ReasonerError("La base de conocimiento es inconsistente", code="inconsistent")

    # ---- Pruebas básicas ----
    def _run(self, extra=(), fresh=None):
        consistent, graph = self.tableau.run(extra, fresh)
        logger.debug(
            "Prueba %d: %s (ramas acumuladas %d)",
            self.tableau.runs, "sat" if consistent else "unsat", self.tableau.branches,
        )
        return consistent, graph

    def is_consistent(self):
        if self._consistent is None:
            # Sin individuos, la consistencia es la satisfacibilidad de top
            fresh = None if self.kb.individuals else self.compiled.pool.top
            self._consistent, self._graph = self._run(fresh=fresh)
        return self._consistent

    def is_satisfiable(self, concept):
        self.check_concept(concept)
        consistent, _ = self._run(fresh=self.compiled.pool.concept(concept))
        return consistent

    def entails_subsumption(self, sub, sup):
        self.check_concept(sub)
        self.check_concept(sup)
        return not self.is_satisfiable(And((sub, Not(sup))))

    def entails_instance(self, individual, concept):
        index = self.check_individual(individual)
        self.check_concept(concept)
        negated = self.compiled.pool.concept(Not(concept))
        consistent, _ = self._run(extra=[(index, negated)])
        return not consistent

    def entails_role(self, subject, role, obj):
        index = self.check_individual(subject)
        self.check_individual(obj)
        role = as_role(role)
        if self.kb.kind_of(role.name) != KIND_ROLE:
            raise ReasonerError(
                "El rol %(name)s no está declarado", code="unknown-name",
                params={"name": role.name},
            )
        blocker = self.compiled.pool.concept(All(role, Not(Nominal(obj))))
        consistent, _ = self._run(extra=[(index, blocker)])
        return not consistent

    # ---- Modelos ----
    def consistency_witness(self):
        """Interpretation que satisface la KB, sacada del grafo de compleción"""
        self.require_consistent()
        model, _ = self._graph.interpretation()
        return model

    def satisfiability_witness(self, concept):
        # (modelo, elemento) con el elemento en la extensión de concept, o None
        self.check_concept(concept)
        consistent, graph = self._run(fresh=self.compiled.pool.concept(concept))
        if not consistent:
            return None
        return graph.interpretation()

    def _model_candidates(self, concept):
        """
        Clases nombradas en la etiqueta del elemento testigo de concept.

        Una clase ausente queda refutada como subsumidora por ese modelo.
        None si concept es insatisfacible.
        """
        consistent, graph = self._run(fresh=self.compiled.pool.concept(concept))
        if not consistent:
            return None
        return graph.atoms(graph.fresh_node())

    # ---- Clasificación ----
    def classify(self):
        if self._taxonomy is not None:
            return self._taxonomy
        self.require_consistent()
        told = told_subsumers(self.kb)
        candidates, unsatisfiable = {}, []
        for name in self.kb.classes:
            found = self._model_candidates(Named(name))
            if found is None:
                unsatisfiable.append(name)
            else:
                candidates[name] = found - {name}

        top_candidates = self._model_candidates(TOP) or set()
        top_members = {
            name for name in top_candidates
            if name not in unsatisfiable and self.entails_subsumption(TOP, Named(name))
        }

        subsumers = {}
        for name, found in candidates.items():
            ups = set()
            for other in sorted(found):
                if other in top_members:
                    continue
                if other in told.get(name, ()) or self.entails_subsumption(
                    Named(name), Named(other)
                ):
                    ups.add(other)
            subsumers[name] = ups
        logger.debug(
            "Clasificación: %d clases, %d pruebas, %d ramas",
            len(self.kb.classes), self.tableau.runs, self.tableau.branches,
        )
        self._taxonomy = Taxonomy.build(
            self.kb.classes, subsumers, top_members, unsatisfiable
        )
        return self._taxonomy

    def subsumers(self, name):
        """Superclases nombradas (incluye equivalentes), ordenadas"""
        self.check_class(name)
        if self._taxonomy is not None:
            return self._taxonomy.ancestors(name)
        found = self._model_candidates(Named(name))
        if found is None:
            return sorted(set(self.kb.classes) - {name})
        told = told_subsumers(self.kb).get(name, set())
        return sorted(
            other for other in found - {name}
            if other in told or self.entails_subsumption(Named(name), Named(other))
        )

    def unsatisfiable_classes(self):
        if self._taxonomy is not None:
            return list(self._taxonomy.unsatisfiable)
        return sorted(
            name for name in self.kb.classes
            if self._model_candidates(Named(name)) is None
        )

    # ---- Realización ----
    def realize(self, individual):
        """Clases nombradas más específicas de las que individual es instancia"""
        index = self.check_individual(individual)
        self.require_consistent()
        # Solo las clases del modelo de consistencia pueden estar implicadas
        candidates = self._graph.atoms(self._graph.root_of(index))
        entailed = [
            name for name in sorted(candidates)
            if self.entails_instance(individual, Named(name))
        ]
        below = {}

        def strictly_below(sub, sup):
            key = (sub, sup)
            if key not in below:
                if self._taxonomy is not None:
                    taxonomy = self._taxonomy
                    below[key] = taxonomy.subsumes(sub, sup) and not taxonomy.subsumes(sup, sub)
                else:
                    below[key] = self.entails_subsumption(
                        Named(sub), Named(sup)
                    ) and not self.entails_subsumption(Named(sup), Named(sub))
            return below[key]

        return [
            name for name in entailed
            if not any(other != name and strictly_below(other, name) for other in entailed)
        ]


def told_subsumers(kb):
    """
    Superclases nombradas explícitas (A ⊑ B, A ⊑ B ⊓ ..., A ≡ B ⊓ ...),
    cerradas transitivamente.
    """
    direct = {}

    def named_parts(concept):
        if isinstance(concept, Named):
            return [concept.name]
        if isinstance(concept, And):
            return [part.name for part in concept.operands if isinstance(part, Named)]
        return []

    for axiom in kb.axioms:
        if isinstance(axiom, SubClassOf) and isinstance(axiom.sub, Named):
            direct.setdefault(axiom.sub.name, set()).update(named_parts(axiom.sup))
        elif isinstance(axiom, EquivalentClasses):
            for left, right in ((axiom.left, axiom.right), (axiom.right, axiom.left)):
                if isinstance(left, Named):
                    direct.setdefault(left.name, set()).update(named_parts(right))

    closed = {}
    for name in direct:
        seen, stack = set(), list(direct[name])
        while stack:
            current = stack.pop()
            if current in seen:
                continue
            seen.add(current)
            stack.extend(direct.get(current, ()))
        seen.discard(name)
        closed[name] = seen
    return closed


# ---- Atajos funcionales ----
def is_consistent(kb):
    return Reasoner(kb).is_consistent()


def is_satisfiable(kb, concept):
    return Reasoner(kb).is_satisfiable(concept)


def entails_subsumption(kb, sub, sup):
    return Reasoner(kb).entails_subsumption(sub, sup)


def entails_instance(kb, individual, concept):
    return Reasoner(kb).entails_instance(individual, concept)


def entails_role(kb, subject, role, obj):
    return Reasoner(kb).entails_role(subject, role, obj)


def classify(kb):
    return Reasoner(kb).classify()


def realize(kb, individual):
    return Reasoner(kb).realize(individual)


def subsumers(kb, name):
    return Reasoner(kb).subsumers(name)


def unsatisfiable_classes(kb):
    return Reasoner(kb).unsatisfiable_classes()


def consistency_witness(kb):
    return Reasoner(kb).consistency_witness()
