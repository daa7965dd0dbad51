from dataclasses import replace

from django.test import SimpleTestCase

from apps.assets.services import (
    load_knowledge_base,
    porosity_seed,
    read_concept_pairs,
)
from apps.diagnosis.services import bridge_disjuncts, diagnose, eliminate
from apps.linker.services import prune_to_signature
from apps.ontology.interchange import export_interchange
from apps.ontology.models import (
    ClassAssertion,
    KnowledgeBase,
    Named,
    Not,
    Or,
    SubClassOf,
)
from apps.oracle.services import oracle_consistent
from apps.queries.services import ask
from apps.reasoner.services import Reasoner
from apps.utils.constants import ORIGIN_BRIDGE

BRIDGED = (
    "BallingDefect",
    "CrackingDefect",
    "GeometricDefect",
    "MicrostructuralDefect",
    "PorosityDefect",
    "SurfaceRoughnessDefect",
)


class AcceptanceTestCase(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.kb = load_knowledge_base()
        cls.reasoner = Reasoner(cls.kb)


class TaxonomyAcceptanceTests(AcceptanceTestCase):
    def test_taxonomy_equals_pairwise_entailment(self):
        taxonomy = self.reasoner.classify()
        self.assertEqual(taxonomy.unsatisfiable, ())
        for sub in self.kb.classes:
            model, element = self.reasoner.satisfiability_witness(Named(sub))
            self.assertTrue(model.is_model_of(self.kb), sub)
            for sup in self.kb.classes:
                if sup == sub:
                    continue
                with self.subTest(sub=sub, sup=sup):
                    if taxonomy.subsumes(sub, sup):
                        self.assertTrue(
                            self.reasoner.entails_subsumption(Named(sub), Named(sup))
                        )
                    elif element in model.extension(Named(sup)):
                        # el testigo no refuta la subsunción: hace falta la prueba
                        self.assertFalse(
                            self.reasoner.entails_subsumption(Named(sub), Named(sup))
                        )

    def test_golden_named_pairs_in_taxonomy(self):
        taxonomy = self.reasoner.classify()
        for sub, sup in read_concept_pairs("subsumptions.tsv", self.kb):
            if isinstance(sub, Named) and isinstance(sup, Named):
                with self.subTest(sub=sub.name, sup=sup.name):
                    self.assertTrue(taxonomy.subsumes(sub.name, sup.name))

    def test_realization_of_sample_individuals(self):
        expected = {
            "d": ["InternalPorosityDefect"],
            "ball1": ["BuildChamberEnvironmentalControlInducedDefect", "SurfaceBallingDefect"],
            "crack": ["CrackingDefect"],
            "pr": ["AMProduct"],
            "pl": ["Platform"],
            "s1": ["Sensor"],
        }
        for individual, classes in expected.items():
            with self.subTest(individual=individual):
                self.assertEqual(self.reasoner.realize(individual), classes)


class DiagnosisAcceptanceTests(AcceptanceTestCase):
    def test_one_left_over_every_bridge(self):
        kb = replace(self.kb, individuals=self.kb.individuals + ("x",))
        for defect_class in BRIDGED:
            scenario = kb.extend([ClassAssertion("x", Named(defect_class))], "test")
            reasoner = Reasoner(scenario)
            sources = bridge_disjuncts(scenario, defect_class)
            for kept in sources:
                ruled_out = [name for name in sources if name != kept]
                with self.subTest(defect_class=defect_class, kept=kept):
                    result = diagnose(scenario, "x", defect_class, ruled_out, reasoner)
                    self.assertTrue(result.consistent)
                    self.assertIn(kept, result.entailed)

    def test_ruling_out_every_source_has_no_model(self):
        sources = bridge_disjuncts(self.kb, "PorosityDefect")
        self.assertFalse(Reasoner(eliminate(self.kb, "d", sources)).is_consistent())

        axioms = [SubClassOf(Named("PorosityDefect"), Or([Named(name) for name in sources]))]
        axioms.append(ClassAssertion("x", Named("PorosityDefect")))
        axioms.extend(ClassAssertion("x", Not(Named(name))) for name in sources)
        sub_kb = KnowledgeBase(
            classes=["PorosityDefect"] + sources,
            individuals=["x"],
            axioms=axioms,
            origins=[ORIGIN_BRIDGE] + ["elimination"] * (len(axioms) - 1),
        )
        self.assertFalse(Reasoner(sub_kb).is_consistent())
        self.assertFalse(oracle_consistent(sub_kb, bound=2).consistent)


class PipelineAcceptanceTests(AcceptanceTestCase):
    def test_pruned_kb_answers_porosity_questions(self):
        pruned = prune_to_signature(self.kb, porosity_seed(self.kb))
        self.assertLess(len(pruned.axioms), len(self.kb.axioms))
        self.assertEqual(ask(pruned, "instance? d PorosityDefect"), "true")
        self.assertEqual(ask(pruned, "instance? d BallingDefect"), "false")

    def test_interchange_declares_every_name(self):
        document = export_interchange(self.kb)
        for name in self.kb.classes:
            self.assertIn(f"Declaration(Class(:{name}))", document)
        self.assertTrue(document.rstrip().endswith(")"))
