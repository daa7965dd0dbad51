"""
Pipeline de módulos: importaciones, poda por firma, normalización de
nombres y puentes entre clases.

Todas las funciones son puras: reciben una KnowledgeBase y devuelven
otra nueva.
"""

import logging
from dataclasses import replace

from apps.ontology.models import (
    TOP,
    AttributeDeclaration,
    ClassAssertion,
    DataAssertion,
    DisjointClasses,
    EquivalentClasses,
    InverseRoles,
    KnowledgeBase,
    Named,
    RoleAssertion,
    RoleDeclaration,
    RoleDomain,
    RoleRange,
    Signature,
    SubClassOf,
    SubRoleOf,
    SymmetricRole,
    rename_concept,
    rename_role,
)
from apps.utils.constants import (
    KIND_ATTRIBUTE,
    KIND_CLASS,
    KIND_INDIVIDUAL,
    KIND_ROLE,
    ORIGIN_BRIDGE,
    ORIGIN_DESIGN,
    TOP_KEYWORD,
)
from apps.utils.exceptions import LinkError

logger = logging.getLogger(__name__)


# ---- Importaciones ----
class _Merger:
    """Acumula declaraciones y axiomas de varios módulos."""

    def __init__(self):
        self.kinds = {}
        self.first_seen = {}
        self.classes = []
        self.roles = {}
        self.attributes = {}
        self.individuals = []
        self.axioms = []
        self.origins = []

    def declare(self, declaration, module_name):
        name, kind = declaration.name, declaration.kind
        previous = self.kinds.get(name)
        if previous is not None and previous != kind:
            raise LinkError(
                "%(name)s es %(first)s en %(first_module)s y %(second)s en %(second_module)s",
                code="kind-clash",
                position=declaration.position,
                params={
                    "name": name,
                    "first": previous,
                    "first_module": self.first_seen[name],
                    "second": kind,
                    "second_module": module_name,
                },
            )
        if previous is None:
            self.kinds[name] = kind
            self.first_seen[name] = module_name
            if kind == KIND_CLASS:
                self.classes.append(name)
            elif kind == KIND_INDIVIDUAL:
                self.individuals.append(name)

        if kind == KIND_ROLE:
            self.merge_role(declaration, module_name)
        elif kind == KIND_ATTRIBUTE:
            current = self.attributes.get(name)
            if current is not None and current.datatype != declaration.datatype:
                raise LinkError(
                    "El atributo %(name)s tiene tipos distintos (%(first)s, %(second)s)",
                    code="kind-clash",
                    position=declaration.position,
                    params={
                        "name": name,
                        "first": current.datatype,
                        "second": declaration.datatype,
                    },
                )
            self.attributes[name] = AttributeDeclaration(name, declaration.datatype)

    def merge_role(self, declaration, module_name):
        current = self.roles.get(declaration.name, RoleDeclaration(declaration.name))
        inverse = current.inverse
        if declaration.inverse is not None:
            if inverse not in (None, declaration.inverse):
                raise LinkError(
                    "El rol %(name)s declara inversos distintos (%(first)s, %(second)s)",
                    code="kind-clash",
                    position=declaration.position,
                    params={
                        "name": declaration.name,
                        "first": inverse,
                        "second": declaration.inverse,
                    },
                )
            inverse = declaration.inverse
        self.roles[declaration.name] = RoleDeclaration(
            declaration.name, inverse, current.symmetric or declaration.symmetric
        )
        if declaration.inverse is not None and declaration.inverse not in self.kinds:
            self.kinds[declaration.inverse] = KIND_ROLE
            self.first_seen[declaration.inverse] = module_name
            self.roles.setdefault(declaration.inverse, RoleDeclaration(declaration.inverse))
        elif self.kinds.get(declaration.inverse, KIND_ROLE) != KIND_ROLE:
            raise LinkError(
                "%(name)s se usa como rol inverso pero es %(kind)s",
                code="kind-clash",
                position=declaration.position,
                params={"name": declaration.inverse, "kind": self.kinds[declaration.inverse]},
            )

    def add_module(self, module):
        for declaration in module.declarations:
            self.declare(declaration, module.name)
        self.axioms.extend(module.axioms)
        self.origins.extend([module.name] * len(module.axioms))

    def build(self) -> KnowledgeBase:
        return KnowledgeBase(
            classes=self.classes,
            roles=tuple(self.roles.values()),
            attributes=tuple(self.attributes.values()),
            individuals=self.individuals,
            axioms=self.axioms,
            origins=self.origins,
        )


def resolve_imports(root_name, loader) -> KnowledgeBase:
    """
    Resolver las importaciones desde `root_name` en profundidad.

    `loader(nombre)` devuelve el SourceModule o lanza LookupError.
    Cada módulo se carga una vez aunque se importe por varios caminos;
    cada axioma queda etiquetado con su módulo de origen.
    """
    merger = _Merger()
    loaded = {}
    path = []

    def load(name, importer=None, position=None):
        if name in path:
            cycle = path[path.index(name):] + [name]
            raise LinkError(
                "Ciclo de importaciones: %(cycle)s",
                code="import-cycle",
                position=position,
                params={"cycle": " -> ".join(cycle)},
            )
        if name in loaded:
            return
        try:
            module = loader(name)
        except LookupError:
            raise LinkError(
                "No se encontró el módulo %(name)s importado por %(importer)s",
                code="missing-module",
                position=position,
                params={"name": name, "importer": importer or "(raíz)"},
            )
        if module.name != name:
            raise LinkError(
                "El archivo de %(name)s declara 'ontology %(found)s'",
                code="name-mismatch",
                position=module.position,
                params={"name": name, "found": module.name},
            )
        loaded[name] = module
        path.append(name)
        positions = module.import_positions or (None,) * len(module.imports)
        for imported, import_position in zip(module.imports, positions):
            load(imported, name, import_position)
        path.pop()
        merger.add_module(module)
        logger.info(
            "Módulo %s: %d declaraciones, %d axiomas",
            name, len(module.declarations), len(module.axioms),
        )

    load(root_name)
    kb = merger.build()
    logger.info("KB enlazada desde %s: %r", root_name, kb)
    return kb


# ---- Poda por firma ----
def _check_seed(kb, seed):
    unknown = sorted(seed.names() - kb.signature().names())
    if unknown:
        raise LinkError(
            "La firma semilla contiene nombres ausentes: %(names)s",
            code="unknown-name",
            params={"names": ", ".join(unknown)},
        )
    for name in seed.names():
        if seed.kind_of(name) != kb.kind_of(name):
            raise LinkError(
                "%(name)s no es %(kind)s en la KB",
                code="kind-clash",
                params={"name": name, "kind": seed.kind_of(name)},
            )


def prune_to_signature(kb: KnowledgeBase, seed: Signature) -> KnowledgeBase:
    """
    Conservar el cierre de alcanzabilidad de la firma semilla.

    Un axioma se conserva si menciona un nombre conservado; sus nombres
    pasan a conservarse. Las banderas de inverso cuentan como menciones.
    Los axiomas sin nombres solo sobreviven con semilla no vacía.
    """
    _check_seed(kb, seed)
    kept = set(seed.names())
    inverse_links = [(role.name, role.inverse) for role in kb.roles if role.inverse]
    mentions = [{name for _, name in axiom.names()} for axiom in kb.axioms]
    selected = [False] * len(kb.axioms)

    changed = True
    while changed:
        changed = False
        for first, second in inverse_links:
            if (first in kept) != (second in kept):
                kept.update((first, second))
                changed = True
        for index, names in enumerate(mentions):
            if selected[index]:
                continue
            if names & kept or (not names and kept):
                selected[index] = True
                kept |= names
                changed = True

    pruned = replace(
        kb,
        classes=tuple(c for c in kb.classes if c in kept),
        roles=tuple(r for r in kb.roles if r.name in kept),
        attributes=tuple(a for a in kb.attributes if a.name in kept),
        individuals=tuple(i for i in kb.individuals if i in kept),
        axioms=tuple(a for a, keep in zip(kb.axioms, selected) if keep),
        origins=tuple(o for o, keep in zip(kb.origins, selected) if keep),
    )
    logger.info(
        "Poda: %d de %d axiomas, %d nombres", len(pruned.axioms), len(kb.axioms), len(kept)
    )
    return pruned


# ---- Normalización de nombres ----
def rename_axiom(axiom, mapping):
    def name(value):
        return mapping.get(value, value)

    if isinstance(axiom, SubClassOf):
        return SubClassOf(rename_concept(axiom.sub, mapping), rename_concept(axiom.sup, mapping))
    if isinstance(axiom, EquivalentClasses):
        return EquivalentClasses(
            rename_concept(axiom.left, mapping), rename_concept(axiom.right, mapping)
        )
    if isinstance(axiom, DisjointClasses):
        return DisjointClasses(tuple(name(c) for c in axiom.classes))
    if isinstance(axiom, SubRoleOf):
        return SubRoleOf(rename_role(axiom.sub, mapping), rename_role(axiom.sup, mapping))
    if isinstance(axiom, InverseRoles):
        return InverseRoles(name(axiom.first), name(axiom.second))
    if isinstance(axiom, SymmetricRole):
        return SymmetricRole(name(axiom.role))
    if isinstance(axiom, (RoleDomain, RoleRange)):
        return type(axiom)(rename_role(axiom.role, mapping), rename_concept(axiom.concept, mapping))
    if isinstance(axiom, ClassAssertion):
        return ClassAssertion(name(axiom.individual), rename_concept(axiom.concept, mapping))
    if isinstance(axiom, RoleAssertion):
        return RoleAssertion(name(axiom.subject), name(axiom.role), name(axiom.object))
    if isinstance(axiom, DataAssertion):
        return DataAssertion(name(axiom.individual), name(axiom.attribute), axiom.value, axiom.unit)
    raise LinkError(
        "Axioma no soportado: %(axiom)s", code="unsupported",
        params={"axiom": type(axiom).__name__},
    )


def normalize_names(kb: KnowledgeBase, rename_map) -> KnowledgeBase:
    """
    Renombrar nombres en declaraciones y axiomas (normalización terminológica).

    Los renombres conservan el tipo; un nombre nuevo no puede chocar con
    otro nombre existente que no se esté renombrando.
    """
    mapping = dict(rename_map)
    if not mapping:
        return kb
    for old in mapping:
        if kb.kind_of(old) is None:
            raise LinkError(
                "No se puede renombrar %(name)s: no está declarado",
                code="unknown-name",
                params={"name": old},
            )
    targets = {}
    for old, new in mapping.items():
        if new in targets:
            raise LinkError(
                "%(first)s y %(second)s se renombran ambos a %(new)s",
                code="collision",
                params={"first": targets[new], "second": old, "new": new},
            )
        targets[new] = old
        if kb.kind_of(new) is not None and new not in mapping:
            raise LinkError(
                "El nuevo nombre %(new)s ya existe en la KB",
                code="collision",
                params={"new": new},
            )

    def name(value):
        return mapping.get(value, value)

    renamed = replace(
        kb,
        classes=tuple(name(c) for c in kb.classes),
        roles=tuple(
            RoleDeclaration(name(r.name), name(r.inverse) if r.inverse else None, r.symmetric)
            for r in kb.roles
        ),
        attributes=tuple(AttributeDeclaration(name(a.name), a.datatype) for a in kb.attributes),
        individuals=tuple(name(i) for i in kb.individuals),
        axioms=tuple(rename_axiom(axiom, mapping) for axiom in kb.axioms),
    )
    logger.info("Normalización: %d nombres renombrados", len(mapping))
    return renamed


# ---- Puentes ----
def _require_class(kb, name):
    kind = kb.kind_of(name)
    if kind is None:
        raise LinkError(
            "%(name)s no está declarado", code="unknown-name", params={"name": name}
        )
    if kind != KIND_CLASS:
        raise LinkError(
            "%(name)s es %(kind)s, se esperaba una clase",
            code="kind-clash",
            params={"name": name, "kind": kind},
        )


def bridge_equivalences(kb: KnowledgeBase, pairs) -> KnowledgeBase:
    """Añadir A ≡ B por cada par, con origen "bridge" (fase de fusión)"""
    axioms = []
    for first, second in pairs:
        _require_class(kb, first)
        _require_class(kb, second)
        axioms.append(EquivalentClasses(Named(first), Named(second)))
    return kb.extend(axioms, ORIGIN_BRIDGE)


def bridge_subclasses(kb: KnowledgeBase, pairs) -> KnowledgeBase:
    """Añadir sub ⊑ super por cada par, con origen "bridge" (subjerarquías de enlace)"""
    axioms = []
    for sub, sup in pairs:
        _require_class(kb, sub)
        _require_class(kb, sup)
        axioms.append(SubClassOf(Named(sub), Named(sup)))
    return kb.extend(axioms, ORIGIN_BRIDGE)


def reparent_classes(kb: KnowledgeBase, moves) -> KnowledgeBase:
    """
    Mover clases en la jerarquía: quita `clase ⊑ padre_viejo` y añade
    `clase ⊑ padre_nuevo` (origen "design"). `top` como padre nuevo deja
    la clase directamente bajo ⊤.
    """
    for cls, old_parent, new_parent in moves:
        _require_class(kb, cls)
        _require_class(kb, old_parent)
        if new_parent != TOP_KEYWORD:
            _require_class(kb, new_parent)
        told = SubClassOf(Named(cls), Named(old_parent))
        if told not in kb.axioms:
            raise LinkError(
                "No hay un axioma %(cls)s ⊑ %(parent)s que mover",
                code="no-subsumption",
                params={"cls": cls, "parent": old_parent},
            )
        target = TOP if new_parent == TOP_KEYWORD else Named(new_parent)
        kb = kb.without_axioms(lambda axiom, _tag, told=told: axiom == told)
        kb = kb.extend([SubClassOf(Named(cls), target)], ORIGIN_DESIGN)
        logger.info("Reubicada %s: %s -> %s", cls, old_parent, new_parent)
    return kb
