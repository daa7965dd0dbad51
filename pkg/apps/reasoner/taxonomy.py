"""
Taxonomía de clases nombradas como DAG de networkx.

Aristas sub -> super ya reducidas transitivamente; cada nodo es un grupo
de clases equivalentes. "top" y "bot" son nodos propios.
"""

import networkx as nx

from apps.utils.constants import BOTTOM_KEYWORD, TOP_KEYWORD

TOP_NODE = TOP_KEYWORD
BOTTOM_NODE = BOTTOM_KEYWORD


class Taxonomy:
    def __init__(self, graph, groups, top_members=(), unsatisfiable=()):
        self.graph = graph
        self.groups = groups
        self.top_members = tuple(sorted(top_members))
        self.unsatisfiable = tuple(sorted(unsatisfiable))
        self.node_of = {}
        for node, members in groups.items():
            for name in members:
                self.node_of[name] = node
        for name in self.top_members:
            self.node_of[name] = TOP_NODE
        for name in self.unsatisfiable:
            self.node_of[name] = BOTTOM_NODE

    # ---- Construcción ----
    @classmethod
    def build(cls, classes, subsumers, top_members=(), unsatisfiable=()):
        """
        subsumers: clase satisfacible -> conjunto de superclases nombradas
        (sin incluir las equivalentes a top).
        """
        top_members = set(top_members)
        unsatisfiable = set(unsatisfiable)
        groups, group_of = {}, {}
        for name in sorted(classes):
            if name in top_members or name in unsatisfiable or name in group_of:
                continue
            members = {name} | {
                other for other in subsumers.get(name, ())
                if name in subsumers.get(other, ())
            }
            node = min(members)
            groups[node] = tuple(sorted(members))
            for member in members:
                group_of[member] = node

        graph = nx.DiGraph()
        graph.add_nodes_from([TOP_NODE, BOTTOM_NODE])
        graph.add_edge(BOTTOM_NODE, TOP_NODE)
        for node, members in groups.items():
            graph.add_edge(node, TOP_NODE)
            graph.add_edge(BOTTOM_NODE, node)
            for sup in subsumers.get(members[0], ()):
                target = group_of.get(sup)
                if target is not None and target != node:
                    graph.add_edge(node, target)
        reduced = nx.transitive_reduction(graph)
        return cls(reduced, groups, top_members, unsatisfiable)

    # ---- Consultas ----
    def members(self, node):
        if node == TOP_NODE:
            return self.top_members
        if node == BOTTOM_NODE:
            return self.unsatisfiable
        return self.groups[node]

    def label(self, node):
        names = self.members(node)
        if node in (TOP_NODE, BOTTOM_NODE):
            return " = ".join((node,) + names)
        return " = ".join(names)

    def parents(self, name):
        return sorted(self.graph.successors(self.node_of[name]))

    def children(self, name):
        return sorted(self.graph.predecessors(self.node_of[name]))

    def equivalents(self, name):
        return [other for other in self.members(self.node_of[name]) if other != name]

    def ancestors(self, name):
        """Superclases nombradas estrictas más las equivalentes, ordenadas"""
        node = self.node_of[name]
        if node == BOTTOM_NODE:
            return sorted(set(self.node_of) - {name})
        found = set(self.equivalents(name))
        for above in nx.descendants(self.graph, node):
            found.update(self.members(above))
        return sorted(found)

    def subsumes(self, sub, sup):
        # ¿sub ⊑ sup según la taxonomía?
        sub_node, sup_node = self.node_of[sub], self.node_of[sup]
        return sub_node == sup_node or nx.has_path(self.graph, sub_node, sup_node)

    def subsumption_pairs(self):
        """Pares (A, B) de clases nombradas distintas con A ⊑ B"""
        pairs = set()
        names = sorted(self.node_of)
        for sub in names:
            for sup in self.ancestors(sub):
                pairs.add((sub, sup))
        return pairs

    # ---- Salida ----
    def render_text(self):
        """
        Árbol indentado desde top (dos espacios por nivel, hijos
        ordenados); un nodo con varios padres aparece bajo cada uno.
        La última línea es el nodo bot con las clases insatisfacibles.
        """
        lines = []

        def visit(node, depth):
            lines.append("  " * depth + self.label(node))
            below = [n for n in self.graph.predecessors(node) if n != BOTTOM_NODE]
            for child in sorted(below, key=self.label):
                visit(child, depth + 1)

        visit(TOP_NODE, 0)
        lines.append(self.label(BOTTOM_NODE))
        return "\n".join(lines) + "\n"

    def render_dot(self):
        lines = ["digraph taxonomy {", "  rankdir=BT;", "  node [shape=box];"]
        edges = sorted(
            (self.label(sub), self.label(sup)) for sub, sup in self.graph.edges
        )
        for sub, sup in edges:
            lines.append(f'  "{sub}" -> "{sup}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def summary(self):
        return {
            "classes": len(self.node_of),
            "nodes": self.graph.number_of_nodes(),
            "edges": self.graph.number_of_edges(),
            "top": list(self.top_members),
            "unsatisfiable": list(self.unsatisfiable),
        }
