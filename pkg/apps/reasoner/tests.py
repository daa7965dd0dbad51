from django.test import SimpleTestCase

from apps.ontology.models import (
    TOP,
    And,
    KnowledgeBase,
    Named,
    NamedRole,
    Nominal,
    Not,
    Some,
    SubClassOf,
    kb_from_module,
)
from apps.ontology.parser import parse_module
from apps.oracle.generators import make_rng, random_axiom, random_concept, random_kb
from apps.utils.exceptions import ReasonerError

from .metrics import expressivity, kb_metrics
from .services import (
    Reasoner,
    classify,
    consistency_witness,
    entails_instance,
    entails_role,
    entails_subsumption,
    is_consistent,
    is_satisfiable,
    realize,
    subsumers,
    unsatisfiable_classes,
)

A, B, C = Named("A"), Named("B"), Named("C")


def kb_of(text):
    return kb_from_module(parse_module(text))


SMALL = """\
ontology small
class A
class B
class C
class D
class U
subclass A B
subclass C B
equiv D C
subclass U bot
"""

VOID = """\
ontology void
class PhysicalObject
class VoidRegion
role hasPart inverse isPartOf
equiv VoidRegion (and PhysicalObject (all hasPart VoidRegion))
subclass PhysicalObject (some hasPart PhysicalObject)
subclass PhysicalObject (some isPartOf PhysicalObject)
"""

NOMINALS = """\
ontology nominals
class Material
class Solid
role hasMaterialState
role r inverse s
individual m
individual solidState
individual a
individual b
rel m hasMaterialState solidState
instance solidState Solid
rel a r b
instance b (all s Material)
"""


class ConsistencyTests(SimpleTestCase):
    def test_empty_kb_is_consistent(self):
        self.assertTrue(is_consistent(KnowledgeBase()))

    def test_forced_clash(self):
        kb = kb_of("ontology m\nclass A\nindividual d\ninstance d A\nsubclass A bot\n")
        self.assertFalse(is_consistent(kb))

    def test_disjointness_clash(self):
        kb = kb_of(
            "ontology m\nclass A\nclass B\nindividual d\n"
            "disjoint A B\ninstance d (and A B)\n"
        )
        self.assertFalse(is_consistent(kb))

    def test_disjunction_needs_backtracking(self):
        kb = kb_of(
            "ontology m\nclass A\nclass B\nclass C\nindividual d\n"
            "instance d (or A B)\ninstance d (not A)\nsubclass B C\n"
        )
        self.assertTrue(is_consistent(kb))
        self.assertTrue(entails_instance(kb, "d", C))

    def test_inconsistent_after_all_branches_fail(self):
        kb = kb_of(
            "ontology m\nclass A\nclass B\nindividual d\n"
            "instance d (or A B)\ninstance d (not A)\ninstance d (not B)\n"
        )
        self.assertFalse(is_consistent(kb))

    def test_existential_against_universal(self):
        kb = kb_of(
            "ontology m\nclass A\nrole r\nindividual d\n"
            "instance d (some r A)\ninstance d (all r (not A))\n"
        )
        self.assertFalse(is_consistent(kb))

    def test_resource_guard(self):
        kb = kb_of(
            "ontology m\nclass A\nclass B\nrole r\nindividual d\n"
            "subclass top (some r A)\nsubclass A (some r B)\ninstance d A\n"
        )
        with self.assertRaises(ReasonerError) as raised:
            Reasoner(kb, max_nodes=2).is_consistent()
        self.assertEqual(raised.exception.code, "resource-limit")
        self.assertEqual(raised.exception.exit_code, 2)


class EntailmentTests(SimpleTestCase):
    def test_satisfiability_basics(self):
        kb = kb_of("ontology m\nclass A\n")
        self.assertTrue(is_satisfiable(kb, TOP))
        self.assertFalse(is_satisfiable(kb, And((A, Not(A)))))

    def test_subsumption(self):
        kb = kb_of(SMALL)
        self.assertTrue(entails_subsumption(kb, A, A))
        self.assertTrue(entails_subsumption(kb, A, Named("B")))
        self.assertTrue(entails_subsumption(kb, Named("D"), Named("B")))
        self.assertFalse(entails_subsumption(kb, Named("B"), A))

    def test_covering_definition(self):
        kb = kb_of(
            "ontology m\nclass P\nclass S\nclass I\nequiv P (or S I)\n"
        )
        self.assertTrue(entails_subsumption(kb, Named("I"), Named("P")))
        self.assertTrue(entails_subsumption(kb, And((Named("P"), Not(Named("S")))), Named("I")))

    def test_domain_and_range(self):
        kb = kb_of(
            "ontology m\nclass Defect\nclass Product\nrole affects\n"
            "domain affects Defect\nrange affects Product\n"
        )
        r = NamedRole("affects")
        self.assertTrue(entails_subsumption(kb, Some(r, TOP), Named("Defect")))
        self.assertTrue(entails_subsumption(kb, Some(r, TOP), Some(r, Named("Product"))))

    def test_subrole_propagates_existentials(self):
        kb = kb_of(
            "ontology m\nclass A\nrole hasPart\nrole hasDirectPart\n"
            "subrole hasDirectPart hasPart\n"
        )
        self.assertTrue(
            entails_subsumption(
                kb, Some(NamedRole("hasDirectPart"), A), Some(NamedRole("hasPart"), A)
            )
        )

    def test_symmetric_role(self):
        kb = kb_of(
            "ontology m\nrole sfOverlaps symmetric\nindividual x\nindividual y\n"
            "rel x sfOverlaps y\n"
        )
        self.assertTrue(entails_role(kb, "y", "sfOverlaps", "x"))

    def test_instance_with_asserted_class(self):
        kb = kb_of("ontology m\nclass C\nindividual d\ninstance d C\n")
        self.assertTrue(entails_instance(kb, "d", Named("C")))

    def test_nominal_filler(self):
        kb = kb_of(NOMINALS)
        role = NamedRole("hasMaterialState")
        self.assertTrue(entails_instance(kb, "m", Some(role, Nominal("solidState"))))
        self.assertTrue(entails_instance(kb, "m", Some(role, Named("Solid"))))

    def test_inverse_assertion_reaches_subject(self):
        kb = kb_of(NOMINALS)
        self.assertTrue(entails_instance(kb, "a", Named("Material")))
        self.assertTrue(entails_role(kb, "b", "s", "a"))
        self.assertFalse(entails_role(kb, "a", "s", "b"))

    def test_nominal_equates_individuals(self):
        kb = kb_of(
            "ontology m\nclass A\nindividual a\nindividual b\n"
            "instance a (one b)\ninstance a A\n"
        )
        self.assertTrue(is_consistent(kb))
        self.assertTrue(entails_instance(kb, "b", A))

    def test_existential_to_nominal(self):
        kb = kb_of(
            "ontology m\nclass A\nrole r\nindividual a\nindividual b\n"
            "subclass A (some r (one b))\ninstance a A\n"
        )
        self.assertTrue(entails_role(kb, "a", "r", "b"))

    def test_unknown_names(self):
        kb = kb_of(SMALL)
        with self.assertRaises(ReasonerError) as raised:
            entails_instance(kb, "ghost", A)
        self.assertEqual(raised.exception.code, "unknown-individual")
        with self.assertRaises(ReasonerError) as raised:
            is_satisfiable(kb, Named("Ghost"))
        self.assertEqual(raised.exception.code, "unknown-name")


class BlockingTests(SimpleTestCase):
    def test_cyclic_definition_terminates(self):
        kb = kb_of(VOID)
        self.assertTrue(is_satisfiable(kb, Named("VoidRegion")))
        taxonomy = classify(kb)
        self.assertEqual(taxonomy.parents("VoidRegion"), ["PhysicalObject"])

    def test_witness_is_a_model(self):
        kb = kb_of(
            VOID.replace("ontology void\n", "ontology void\nindividual v\n")
            + "instance v VoidRegion\n"
        )
        model = consistency_witness(kb)
        self.assertTrue(model.is_model_of(kb))
        self.assertIn(model.individuals["v"], model.extension(Named("VoidRegion")))

    def test_witness_with_nominals(self):
        kb = kb_of(NOMINALS)
        self.assertTrue(consistency_witness(kb).is_model_of(kb))


class ClassificationTests(SimpleTestCase):
    def setUp(self):
        self.taxonomy = classify(kb_of(SMALL))

    def test_parents_and_groups(self):
        self.assertEqual(self.taxonomy.parents("A"), ["B"])
        self.assertEqual(self.taxonomy.parents("B"), ["top"])
        self.assertEqual(self.taxonomy.equivalents("D"), ["C"])
        self.assertEqual(self.taxonomy.ancestors("A"), ["B"])

    def test_unsatisfiable_in_bottom(self):
        self.assertEqual(self.taxonomy.unsatisfiable, ("U",))
        self.assertEqual(unsatisfiable_classes(kb_of(SMALL)), ["U"])

    def test_text_rendering(self):
        expected = "top\n  B\n    A\n    C = D\nbot = U\n"
        self.assertEqual(self.taxonomy.render_text(), expected)

    def test_dot_rendering(self):
        dot = self.taxonomy.render_dot()
        self.assertTrue(dot.startswith("digraph taxonomy {"))
        self.assertIn('  "A" -> "B";\n', dot)
        self.assertIn('  "C = D" -> "B";\n', dot)
        self.assertNotIn('"A" -> "top"', dot)

    def test_single_subsumption(self):
        taxonomy = classify(kb_of("ontology m\nclass A\nclass B\nsubclass A B\n"))
        self.assertEqual(taxonomy.parents("A"), ["B"])
        self.assertEqual(taxonomy.parents("B"), ["top"])

    def test_equivalence_shares_node(self):
        taxonomy = classify(kb_of("ontology m\nclass A\nclass B\nequiv A B\n"))
        self.assertEqual(taxonomy.node_of["A"], taxonomy.node_of["B"])

    def test_top_equivalent_class(self):
        taxonomy = classify(kb_of("ontology m\nclass Thing\nclass A\nsubclass top Thing\n"))
        self.assertEqual(taxonomy.top_members, ("Thing",))
        self.assertEqual(taxonomy.parents("A"), ["top"])

    def test_inconsistent_kb_cannot_be_classified(self):
        kb = kb_of("ontology m\nclass A\nindividual d\ninstance d bot\n")
        with self.assertRaises(ReasonerError) as raised:
            classify(kb)
        self.assertEqual(raised.exception.code, "inconsistent")

    def test_subsumers_without_taxonomy(self):
        self.assertEqual(subsumers(kb_of(SMALL), "D"), ["B", "C"])

    def test_agrees_with_pairwise_entailment(self):
        rng = make_rng(7)
        checked = 0
        while checked < 15:
            kb = random_kb(rng)
            reasoner = Reasoner(kb)
            if not reasoner.is_consistent():
                continue
            taxonomy = reasoner.classify()
            for sub in kb.classes:
                for sup in kb.classes:
                    self.assertEqual(
                        taxonomy.subsumes(sub, sup),
                        reasoner.entails_subsumption(Named(sub), Named(sup)),
                        f"{sub} ⊑ {sup} en {kb.axioms}",
                    )
            checked += 1


class RealizationTests(SimpleTestCase):
    def test_most_specific_only(self):
        kb = kb_of(SMALL + "individual d\ninstance d A\n")
        self.assertEqual(realize(kb, "d"), ["A"])

    def test_no_assertions(self):
        kb = kb_of(SMALL + "individual d\n")
        self.assertEqual(realize(kb, "d"), [])

    def test_equivalent_classes_both_returned(self):
        kb = kb_of(SMALL + "individual d\ninstance d D\n")
        self.assertEqual(realize(kb, "d"), ["C", "D"])


class RandomPropertyTests(SimpleTestCase):
    def test_duality(self):
        rng = make_rng(11)
        for _ in range(40):
            kb = random_kb(rng)
            classes = list(kb.classes)
            roles = [role.name for role in kb.roles]
            c = random_concept(rng, classes, roles, 2)
            d = random_concept(rng, classes, roles, 2)
            reasoner = Reasoner(kb)
            self.assertEqual(
                reasoner.entails_subsumption(c, d),
                not reasoner.is_satisfiable(And((c, Not(d)))),
            )

    def test_monotonicity(self):
        rng = make_rng(13)
        for _ in range(40):
            kb = random_kb(rng)
            classes = list(kb.classes)
            roles = [role.name for role in kb.roles]
            extra = random_axiom(rng, classes, roles, list(kb.individuals), 2)
            larger = kb.extend([extra], "random")
            small, large = Reasoner(kb), Reasoner(larger)
            if not large.is_consistent():
                continue
            for sub in classes:
                for sup in classes:
                    if small.entails_subsumption(Named(sub), Named(sup)):
                        self.assertTrue(
                            large.entails_subsumption(Named(sub), Named(sup)),
                            f"{sub} ⊑ {sup} perdido al añadir {extra}",
                        )


class MetricsTests(SimpleTestCase):
    def test_expressivity_label(self):
        kb = kb_of(
            NOMINALS
            + "class X\nrole p\nsubrole p hasMaterialState\nsubclass X (some p (one solidState))\n"
        )
        self.assertEqual(expressivity(kb), "ALCHOI")
        kb = kb_of("ontology m\nclass A\nclass B\nsubclass A B\nattr size : decimal\n")
        self.assertEqual(expressivity(kb), "AL(D)")

    def test_counts(self):
        kb = kb_of(SMALL)
        metrics = kb_metrics(kb)
        self.assertEqual(metrics["classes"], 5)
        self.assertEqual(metrics["tbox"], 4)
        self.assertEqual(metrics["origins"], {"small": 4})
        self.assertEqual(metrics["axiom_types"], {"EquivalentClasses": 1, "SubClassOf": 3})

    def test_gci_kb_classifies(self):
        kb = KnowledgeBase(classes=("A", "B"), axioms=(SubClassOf(A, B),), origins=("x",))
        self.assertTrue(classify(kb).subsumes("A", "B"))
