"""
Tableau para ALCHOI con nominales, dominio/rango y roles simétricos.

¿Cómo funciona?
- Los conceptos (en NNF) se internan como enteros en un ConceptPool.
- Cada GCI C ⊑ D entra en la etiqueta de todos los nodos como ¬C ⊔ D.
- Las disyunciones se evalúan de forma perezosa: si un disyunto ya es
  verdadero en el grafo actual (¬A con A ausente, ∀r.C con todos los
  vecinos etiquetados con C) no se ramifica; se vigila el átomo o las
  aristas que podrían falsearlo.
- Bloqueo por pares entre ancestros; los nodos de individuos nunca se
  bloquean.
- Ramificación con copia del grafo y retroceso dirigido por dependencias.
"""

import logging
from collections import deque

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
    NamedRole,
    Nominal,
    Not,
    Or,
    RoleAssertion,
    Some,
    SubClassOf,
    SubRoleOf,
    Top,
    nnf,
    to_gcis,
)
from apps.utils.exceptions import ReasonerError

logger = logging.getLogger(__name__)

# ---- Conceptos internos ----
TOP_TAG, BOT_TAG, ATOM, NATOM, NOM, NNOM, AND, OR, SOME, ALL = range(10)
LITERAL_TAGS = (ATOM, NATOM, NOM, NNOM)
EDGE_WATCH = -1
EMPTY = frozenset()
INDIRECT = -1


class Clash(Exception):
    """Contradicción en la rama actual; `deps` son los puntos de ramificación responsables."""

    def __init__(self, deps):
        super().__init__()
        self.deps = deps


class ConceptPool:
    """
    Conceptos NNF como enteros (hash-consing).

    Las conjunciones se aplanan, se ordenan y se deduplican; las
    disyunciones se aplanan conservando el orden de origen.
    """

    def __init__(self, kb):
        self.kb = kb
        self.tags = []
        self.first = []
        self.second = []
        self.index = {}
        self.complements = {}
        self.top = self.intern(TOP_TAG)
        self.bottom = self.intern(BOT_TAG)

    def intern(self, tag, first=None, second=None):
        key = (tag, first, second)
        cid = self.index.get(key)
        if cid is None:
            cid = len(self.tags)
            self.tags.append(tag)
            self.first.append(first)
            self.second.append(second)
            self.index[key] = cid
        return cid

    def complement(self, cid):
        # Solo para literales: A <-> ¬A, {i} <-> ¬{i}
        found = self.complements.get(cid)
        if found is None:
            tag = self.tags[cid]
            opposite = {ATOM: NATOM, NATOM: ATOM, NOM: NNOM, NNOM: NOM}[tag]
            found = self.intern(opposite, self.first[cid])
            self.complements[cid] = found
            self.complements[found] = cid
        return found

    # ---- Desde expresiones ----
    def class_id(self, name):
        try:
            return self.kb.class_ids[name]
        except KeyError:
            raise ReasonerError(
                "La clase %(name)s no está declarada", code="unknown-name",
                params={"name": name},
            )

    def individual_id(self, name):
        try:
            return self.kb.individual_ids[name]
        except KeyError:
            raise ReasonerError(
                "El individuo %(name)s no está declarado", code="unknown-individual",
                params={"name": name},
            )

    def role_id(self, role):
        try:
            index = self.kb.role_ids[role.name]
        except KeyError:
            raise ReasonerError(
                "El rol %(name)s no está declarado", code="unknown-name",
                params={"name": role.name},
            )
        return 2 * index + (1 if isinstance(role, InverseRole) else 0)

    def concept(self, expr):
        """Internar una expresión (se pasa a NNF si hace falta)"""
        if isinstance(expr, Top):
            return self.top
        if isinstance(expr, Bottom):
            return self.bottom
        if isinstance(expr, Named):
            return self.intern(ATOM, self.class_id(expr.name))
        if isinstance(expr, Nominal):
            return self.intern(NOM, self.individual_id(expr.individual))
        if isinstance(expr, Not):
            if isinstance(expr.operand, Named):
                return self.intern(NATOM, self.class_id(expr.operand.name))
            if isinstance(expr.operand, Nominal):
                return self.intern(NNOM, self.individual_id(expr.operand.individual))
            return self.concept(nnf(expr))
        if isinstance(expr, And):
            return self.conjunction(self.concept(operand) for operand in expr.operands)
        if isinstance(expr, Or):
            return self.disjunction(self.concept(operand) for operand in expr.operands)
        if isinstance(expr, (Some, All)):
            role = self.role_id(expr.role)
            filler = self.concept(expr.filler)
            if isinstance(expr, Some):
                if filler == self.bottom:
                    return self.bottom
                return self.intern(SOME, role, filler)
            if filler == self.top:
                return self.top
            return self.intern(ALL, role, filler)
        raise ReasonerError(
            "Constructor no soportado: %(value)r", code="unsupported",
            params={"value": expr},
        )

    def conjunction(self, cids):
        parts = set()
        for cid in cids:
            if self.tags[cid] == AND:
                parts.update(self.first[cid])
            else:
                parts.add(cid)
        if self.bottom in parts:
            return self.bottom
        parts.discard(self.top)
        if not parts:
            return self.top
        if len(parts) == 1:
            return parts.pop()
        return self.intern(AND, tuple(sorted(parts)))

    def disjunction(self, cids):
        parts = []
        for cid in cids:
            parts.extend(self.first[cid] if self.tags[cid] == OR else (cid,))
        parts = list(dict.fromkeys(parts))
        if self.top in parts:
            return self.top
        parts = [cid for cid in parts if cid != self.bottom]
        if not parts:
            return self.bottom
        if len(parts) == 1:
            return parts[0]
        return self.intern(OR, tuple(parts))


def role_closure(role_count, inclusions):
    """
    Cierre reflexivo-transitivo de la jerarquía de roles.

    Ids: 2i para el rol i, 2i+1 para su inverso; r ⊑ s implica inv(r) ⊑ inv(s).
    """
    size = 2 * role_count
    direct = [set() for _ in range(size)]
    for sub, sup in inclusions:
        direct[sub].add(sup)
        direct[sub ^ 1].add(sup ^ 1)
    supers = []
    for start in range(size):
        seen = {start}
        stack = [start]
        while stack:
            for nxt in direct[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        supers.append(frozenset(seen))
    return supers


class CompiledKB:
    """KB normalizada e internada, lista para el tableau."""

    def __init__(self, kb):
        self.kb = kb
        self.pool = ConceptPool(kb)
        self.class_names = list(kb.class_ids)
        self.role_names = list(kb.role_ids)
        self.individual_names = list(kb.individual_ids)
        gcis, inclusions = [], []
        self.class_assertions = []
        self.role_assertions = []
        pool = self.pool
        for axiom in to_gcis(kb).axioms:
            if isinstance(axiom, SubClassOf):
                gcis.append(pool.concept(nnf(Or((Not(axiom.sub), axiom.sup)))))
            elif isinstance(axiom, SubRoleOf):
                inclusions.append((pool.role_id(axiom.sub), pool.role_id(axiom.sup)))
            elif isinstance(axiom, InverseRoles):
                first = pool.role_id(NamedRole(axiom.first))
                second = pool.role_id(NamedRole(axiom.second))
                # second ≡ inv(first)
                inclusions.append((second, first ^ 1))
                inclusions.append((first ^ 1, second))
            elif isinstance(axiom, ClassAssertion):
                self.class_assertions.append(
                    (pool.individual_id(axiom.individual), pool.concept(nnf(axiom.concept)))
                )
            elif isinstance(axiom, RoleAssertion):
                self.role_assertions.append(
                    (
                        pool.individual_id(axiom.subject),
                        pool.role_id(NamedRole(axiom.role)),
                        pool.individual_id(axiom.object),
                    )
                )
            elif isinstance(axiom, DataAssertion):
                continue
            else:
                raise ReasonerError(
                    "Axioma no soportado por el tableau: %(axiom)s", code="unsupported",
                    params={"axiom": type(axiom).__name__},
                )
        self.gcis = [cid for cid in dict.fromkeys(gcis) if cid != pool.top]
        self.supers = role_closure(len(self.role_names), inclusions)
        logger.debug(
            "KB compilada: %d GCIs, %d aserciones, %d roles",
            len(self.gcis), len(self.class_assertions) + len(self.role_assertions),
            len(self.role_names),
        )


# ---- Grafo de compleción ----
class Node:
    __slots__ = ("id", "parent", "individual", "label", "out", "edge_deps", "foralls", "watchers")

    def __init__(self, nid, parent=None, individual=None):
        self.id = nid
        self.parent = parent
        self.individual = individual
        self.label = {}
        self.out = {}
        self.edge_deps = {}
        self.foralls = []
        self.watchers = {}

    def copy(self):
        clone = Node(self.id, self.parent, self.individual)
        clone.label = dict(self.label)
        clone.out = {nid: set(roles) for nid, roles in self.out.items()}
        clone.edge_deps = dict(self.edge_deps)
        clone.foralls = list(self.foralls)
        clone.watchers = {key: set(ors) for key, ors in self.watchers.items()}
        return clone

    @property
    def blockable(self):
        return self.individual is None


class CompletionGraph:
    """
    Estado de una rama: nodos, colas de trabajo y fusiones de nominales.

    Las etiquetas guardan concepto -> dependencias (frozenset de ramas).
    Las aristas se guardan en ambos sentidos, ya cerradas bajo la
    jerarquía de roles: `x.out[y]` contiene r si (x, y) ∈ r.
    """

    def __init__(self, compiled, max_nodes):
        self.kb = compiled
        self.pool = compiled.pool
        self.max_nodes = max_nodes
        self.nodes = {}
        self.next_id = 0
        self.queue = deque()
        self.pending = []
        self.undecided = []
        self.roots = {}
        self.merged = {}
        self.fresh = None

    def copy(self):
        clone = CompletionGraph.__new__(CompletionGraph)
        clone.kb = self.kb
        clone.pool = self.pool
        clone.max_nodes = self.max_nodes
        clone.nodes = {nid: node.copy() for nid, node in self.nodes.items()}
        clone.next_id = self.next_id
        clone.queue = deque(self.queue)
        clone.pending = list(self.pending)
        clone.undecided = list(self.undecided)
        clone.roots = dict(self.roots)
        clone.merged = dict(self.merged)
        clone.fresh = self.fresh
        return clone

    # ---- Construcción inicial ----
    def initialize(self, extra=(), fresh=None):
        for index in range(len(self.kb.individual_names)):
            node = self.new_node(individual=index)
            self.roots[index] = node.id
            self.add(node, self.pool.intern(NOM, index), EMPTY)
        for index, cid in self.kb.class_assertions:
            self.add(self.nodes[self.roots[index]], cid, EMPTY)
        for subject, role, obj in self.kb.role_assertions:
            self.add_edge(self.root_of(subject), self.root_of(obj), role, EMPTY)
        for index, cid in extra:
            self.add(self.root_of(index), cid, EMPTY)
        if fresh is not None:
            node = self.new_node()
            self.fresh = node.id
            self.add(node, fresh, EMPTY)

    def new_node(self, parent=None, individual=None):
        if self.next_id >= self.max_nodes:
            raise ReasonerError(
                "El grafo de compleción superó %(limit)s nodos", code="resource-limit",
                params={"limit": self.max_nodes},
            )
        node = Node(self.next_id, parent, individual)
        self.next_id += 1
        self.nodes[node.id] = node
        node.label[self.pool.top] = EMPTY
        for cid in self.kb.gcis:
            self.add(node, cid, EMPTY)
        return node

    def root_of(self, individual):
        nid = self.roots[individual]
        while nid in self.merged:
            nid = self.merged[nid]
        return self.nodes[nid]

    def fresh_node(self):
        nid = self.fresh
        while nid in self.merged:
            nid = self.merged[nid]
        return self.nodes[nid]

    # ---- Reglas básicas ----
    def add(self, node, cid, deps):
        label = node.label
        if cid in label:
            return
        tags = self.pool.tags
        tag = tags[cid]
        if tag == BOT_TAG:
            raise Clash(deps)
        if tag in LITERAL_TAGS:
            other = label.get(self.pool.complement(cid))
            if other is not None:
                raise Clash(deps | other)
        label[cid] = deps
        if tag == ALL:
            node.foralls.append(cid)
            self.queue.append((node.id, cid))
        elif tag in (AND, OR, NOM):
            self.queue.append((node.id, cid))
        elif tag == SOME:
            self.pending.append((node.id, cid))
        if tag == ATOM or tag == NOM:
            self.wake(node, cid)

    def wake(self, node, key):
        ors = node.watchers.pop(key, None)
        if ors:
            self.queue.extend((node.id, cid) for cid in ors)

    def add_edge(self, source, target, role, deps):
        supers = self.kb.supers[role]
        current = source.out.get(target.id)
        new = supers if current is None else supers - current
        if not new:
            return
        backward = {r ^ 1 for r in new}
        if source is target:
            source.out.setdefault(source.id, set()).update(new | backward)
            source.edge_deps[source.id] = source.edge_deps.get(source.id, EMPTY) | deps
        else:
            source.out.setdefault(target.id, set()).update(new)
            target.out.setdefault(source.id, set()).update(backward)
            source.edge_deps[target.id] = source.edge_deps.get(target.id, EMPTY) | deps
            target.edge_deps[source.id] = source.edge_deps[target.id]
        edge_deps = source.edge_deps[target.id]
        first, second = self.pool.first, self.pool.second
        for cid in list(source.foralls):
            if first[cid] in new:
                self.add(target, second[cid], source.label[cid] | edge_deps)
        for cid in list(target.foralls):
            if first[cid] in backward:
                self.add(source, second[cid], target.label[cid] | edge_deps)
        self.wake(source, EDGE_WATCH)
        self.wake(target, EDGE_WATCH)

    def neighbours(self, node, role):
        for nid, roles in node.out.items():
            if role in roles:
                yield self.nodes[nid]

    # ---- Cola determinista ----
    def saturate(self):
        pool = self.pool
        while self.queue:
            nid, cid = self.queue.popleft()
            node = self.nodes.get(nid)
            if node is None:
                continue
            tag = pool.tags[cid]
            deps = node.label[cid]
            if tag == AND:
                for conjunct in pool.first[cid]:
                    self.add(node, conjunct, deps)
            elif tag == ALL:
                role, filler = pool.first[cid], pool.second[cid]
                for other in list(self.neighbours(node, role)):
                    self.add(other, filler, deps | node.edge_deps[other.id])
            elif tag == OR:
                if self.evaluate(node, cid) is not None:
                    self.undecided.append((nid, cid))
            elif tag == NOM:
                target = self.root_of(pool.first[cid])
                if target is not node:
                    self.merge(node, target, deps)

    def evaluate(self, node, cid):
        """
        Resolver una disyunción sin ramificar si se puede.

        Devuelve None si quedó satisfecha (presente, perezosa o forzada) y
        (abiertos, razones) si hay que elegir entre dos o más disyuntos.
        """
        disjuncts = self.pool.first[cid]
        label = node.label
        for disjunct in disjuncts:
            if disjunct in label:
                return None
        for disjunct in disjuncts:
            keys = []
            if self.holds(node, disjunct, keys):
                for key in keys:
                    node.watchers.setdefault(key, set()).add(cid)
                return None
        reasons = label[cid]
        open_disjuncts = []
        for disjunct in disjuncts:
            falsifier = self.falsifier(node, disjunct)
            if falsifier is None:
                open_disjuncts.append(disjunct)
            else:
                reasons = reasons | falsifier
        if not open_disjuncts:
            raise Clash(reasons)
        if len(open_disjuncts) == 1:
            self.add(node, open_disjuncts[0], reasons)
            return None
        return open_disjuncts, reasons

    def holds(self, node, cid, keys):
        # ¿Es verdadero cid en el modelo que se extraería ahora mismo?
        if cid in node.label:
            return True
        pool = self.pool
        tag = pool.tags[cid]
        if tag == TOP_TAG:
            return True
        if tag == NATOM or tag == NNOM:
            positive = pool.complement(cid)
            if positive in node.label:
                return False
            keys.append(positive)
            return True
        if tag == AND:
            return all(self.holds(node, part, keys) for part in pool.first[cid])
        if tag == OR:
            return any(self.holds(node, part, keys) for part in pool.first[cid])
        if tag == ALL:
            filler = pool.second[cid]
            for other in self.neighbours(node, pool.first[cid]):
                if filler not in other.label:
                    return False
            keys.append(EDGE_WATCH)
            return True
        return False

    def falsifier(self, node, cid):
        tag = self.pool.tags[cid]
        if tag == BOT_TAG:
            return EMPTY
        if tag in LITERAL_TAGS:
            return node.label.get(self.pool.complement(cid))
        return None

    # ---- Nominales ----
    def merge(self, node, target, deps):
        """Fusionar `node` en el nodo raíz `target` (ambos son el mismo elemento)"""
        logger.debug("Fusión de nodo %s en %s", node.id, target.id)
        self.merged[node.id] = target.id
        del self.nodes[node.id]
        for nid, roles in node.out.items():
            edge_deps = node.edge_deps[nid] | deps
            if nid == node.id:
                other = target
            else:
                other = self.nodes[nid]
                del other.out[node.id]
                del other.edge_deps[node.id]
            for role in roles:
                self.add_edge(target, other, role, edge_deps)
        for other in self.nodes.values():
            if other.parent == node.id:
                other.parent = target.id
        for cid, concept_deps in node.label.items():
            self.add(target, cid, concept_deps | deps)

    # ---- Disyunciones pendientes ----
    def next_choice(self):
        """Primera disyunción que exige ramificar, o None si no queda ninguna"""
        while self.undecided:
            nid, cid = self.undecided.pop(0)
            node = self.nodes.get(nid)
            if node is None:
                continue
            found = self.evaluate(node, cid)
            if found is not None:
                return node, cid, found
            if self.queue:
                return None
        return None

    # ---- Existenciales ----
    def satisfied(self, node, cid):
        filler = self.pool.second[cid]
        return any(filler in other.label for other in self.neighbours(node, self.pool.first[cid]))

    def generate(self):
        """Aplicar la regla ∃ una vez; False si no queda nada aplicable"""
        status = None
        keep, chosen = [], None
        for nid, cid in self.pending:
            node = self.nodes.get(nid)
            if node is None or self.satisfied(node, cid):
                continue
            keep.append((nid, cid))
            if chosen is not None:
                continue
            if status is None:
                status = self.blocking_status()
            if nid not in status:
                chosen = (node, cid)
        self.pending = keep
        if chosen is None:
            return False
        node, cid = chosen
        pool = self.pool
        role, filler = pool.first[cid], pool.second[cid]
        deps = node.label[cid]
        if pool.tags[filler] == NOM:
            self.add_edge(node, self.root_of(pool.first[filler]), role, deps)
            return True
        child = self.new_node(parent=node.id)
        self.add_edge(node, child, role, deps)
        self.add(child, filler, deps)
        return True

    def blocking_status(self):
        """
        nid -> nodo bloqueante (bloqueo directo) o INDIRECT.

        Bloqueo por pares: x con padre x' queda bloqueado por un ancestro y
        con padre y' si L(x)=L(y), L(x')=L(y') y L(x',x)=L(y',y).
        """
        status = {}
        keys = {}

        def key(node):
            found = keys.get(node.id)
            if found is None:
                found = keys[node.id] = frozenset(node.label)
            return found

        for nid in sorted(self.nodes):
            node = self.nodes[nid]
            if not node.blockable or node.parent is None:
                continue
            parent = self.nodes[node.parent]
            if parent.id in status:
                status[nid] = INDIRECT
                continue
            if not parent.blockable:
                continue
            edge = parent.out[nid]
            ancestor = parent
            while ancestor.parent is not None:
                above = self.nodes[ancestor.parent]
                if not above.blockable:
                    break
                if (
                    key(ancestor) == key(node)
                    and key(above) == key(parent)
                    and above.out[ancestor.id] == edge
                ):
                    status[nid] = ancestor.id
                    break
                ancestor = above
        return status

    def unsatisfied_disjunctions(self):
        # Comprobación final: toda disyunción presente debe cumplirse
        found = False
        for node in self.nodes.values():
            for cid in list(node.label):
                if self.pool.tags[cid] != OR:
                    continue
                if any(d in node.label for d in self.pool.first[cid]):
                    continue
                if not any(self.holds(node, d, []) for d in self.pool.first[cid]):
                    self.queue.append((node.id, cid))
                    found = True
        return found

    # ---- Modelo ----
    def atoms(self, node):
        names = self.kb.class_names
        return {
            names[self.pool.first[cid]]
            for cid in node.label
            if self.pool.tags[cid] == ATOM
        }

    def interpretation(self):
        """
        Modelo finito a partir de un grafo completo sin contradicciones.

        Dominio: nodos no bloqueados; las aristas hacia un nodo bloqueado
        apuntan a su bloqueante.
        """
        status = self.blocking_status()
        domain = [nid for nid in sorted(self.nodes) if nid not in status]
        index = {nid: position for position, nid in enumerate(domain)}

        def image(nid):
            if nid in index:
                return index[nid]
            blocker = status.get(nid, INDIRECT)
            return None if blocker == INDIRECT else index[blocker]

        classes = {name: set() for name in self.kb.class_names}
        roles = {name: set() for name in self.kb.role_names}
        for nid in domain:
            node = self.nodes[nid]
            element = index[nid]
            for name in self.atoms(node):
                classes[name].add(element)
            for other, role_ids in node.out.items():
                target = image(other)
                if target is None:
                    continue
                for role in role_ids:
                    pair = (element, target) if role % 2 == 0 else (target, element)
                    roles[self.kb.role_names[role >> 1]].add(pair)
        individuals = {
            name: index[self.root_of(position).id]
            for position, name in enumerate(self.kb.individual_names)
        }
        model = Interpretation(
            size=len(domain),
            classes={name: frozenset(members) for name, members in classes.items()},
            roles={name: frozenset(pairs) for name, pairs in roles.items()},
            individuals=individuals,
        )
        element = index[self.fresh_node().id] if self.fresh is not None else None
        return model, element


# ---- Búsqueda ----
class Tableau:
    """Búsqueda con copia de grafo por rama y retroceso dirigido por dependencias."""

    def __init__(self, compiled, max_nodes):
        self.compiled = compiled
        self.max_nodes = max_nodes
        self.branches = 0
        self.runs = 0

    def run(self, extra=(), fresh=None):
        """(consistente, grafo final) para la KB más las aserciones extra"""
        self.runs += 1
        graph = CompletionGraph(self.compiled, self.max_nodes)
        try:
            graph.initialize(extra, fresh)
        except Clash:
            return False, None
        deps, final = self.expand(graph)
        return deps is None, final

    def expand(self, graph):
        while True:
            try:
                graph.saturate()
                choice = graph.next_choice()
                if choice is not None:
                    return self.branch(graph, *choice)
                if graph.queue:
                    continue
                if graph.generate():
                    continue
                if graph.unsatisfied_disjunctions():
                    continue
                return None, graph
            except Clash as clash:
                return clash.deps, None

    def branch(self, graph, node, cid, found):
        disjuncts, reasons = found
        self.branches += 1
        point = self.branches
        collected = set()
        for disjunct in disjuncts:
            child = graph.copy()
            try:
                child.add(child.nodes[node.id], disjunct, reasons | {point})
            except Clash as clash:
                deps = clash.deps
            else:
                deps, final = self.expand(child)
                if deps is None:
                    return None, final
            if point not in deps:
                return deps, None
            collected |= deps - {point}
        return frozenset(collected) | reasons, None
