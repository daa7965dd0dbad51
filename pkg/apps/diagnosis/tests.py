import json
from dataclasses import replace

from django.test import SimpleTestCase

from apps.assets.services import load_knowledge_base
from apps.ontology.models import ClassAssertion, Named, Not, Or, SubClassOf
from apps.queries.services import ask
from apps.reasoner.services import Reasoner
from apps.utils.constants import ORIGIN_ELIMINATION
from apps.utils.exceptions import DiagnosisError

from .services import (
    FORMAT_JSON,
    bridge_disjuncts,
    diagnose,
    eliminate,
    render_report,
    trace,
)

POROSITY_SOURCES = [
    "BeamScanningDeflectionSystemInducedDefect",
    "BuildChamberEnvironmentalControlInducedDefect",
    "PowderHandlingDepositionSystemInducedDefect",
    "ParameterScanStrategyInducedDefect",
    "ByproductMaterialEjectionInducedDefect",
    "FeedstockMaterialInducedDefect",
]
PROCESS_SOURCE = "ParameterScanStrategyInducedDefect"
NON_PROCESS = [name for name in POROSITY_SOURCES if name != PROCESS_SOURCE]


def with_defect(kb, individual, defect_class):
    """KB con un individuo nuevo que solo se sabe de la clase dada"""
    kb = replace(kb, individuals=kb.individuals + (individual,))
    return kb.extend([ClassAssertion(individual, Named(defect_class))], "test")


class DiagnosisTestCase(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.kb = load_knowledge_base()
        cls.reasoner = Reasoner(cls.kb)


class BridgeDisjunctsTests(DiagnosisTestCase):
    def test_porosity_sources_in_file_order(self):
        self.assertEqual(bridge_disjuncts(self.kb, "PorosityDefect"), POROSITY_SOURCES)

    def test_balling_sources(self):
        found = bridge_disjuncts(self.kb, "BallingDefect")
        self.assertEqual(len(found), 3)
        self.assertEqual(found[-1], "OrientationInducedDefect")

    def test_unknown_class(self):
        with self.assertRaises(DiagnosisError) as raised:
            bridge_disjuncts(self.kb, "NoSuchDefect")
        self.assertEqual(raised.exception.code, "unknown-name")

    def test_class_without_bridge(self):
        with self.assertRaises(DiagnosisError) as raised:
            bridge_disjuncts(self.kb, "InducedDefect")
        self.assertEqual(raised.exception.code, "no-bridge")

    def test_untagged_kb_uses_covering_axiom(self):
        untagged = load_knowledge_base(retagged=False)
        self.assertEqual(bridge_disjuncts(untagged, "PorosityDefect"), POROSITY_SOURCES)
        covering = SubClassOf(Named("PorosityDefect"), Or([Named(n) for n in POROSITY_SOURCES]))
        self.assertIn(covering, untagged.axioms)


class EliminateTests(DiagnosisTestCase):
    def test_nothing_ruled_out(self):
        self.assertIs(eliminate(self.kb, "d", []), self.kb)

    def test_one_negative_assertion(self):
        reduced = eliminate(self.kb, "d", ["EquipmentInducedDefect"])
        self.assertEqual(len(reduced.axioms), len(self.kb.axioms) + 1)
        self.assertEqual(
            reduced.axioms_from(ORIGIN_ELIMINATION),
            [ClassAssertion("d", Not(Named("EquipmentInducedDefect")))],
        )

    def test_unknown_names(self):
        with self.assertRaises(DiagnosisError):
            eliminate(self.kb, "nobody", [])
        with self.assertRaises(DiagnosisError):
            eliminate(self.kb, "d", ["NoSuchSource"])

    def test_all_sources_contradict_the_defect(self):
        reduced = eliminate(self.kb, "d", POROSITY_SOURCES)
        self.assertFalse(Reasoner(reduced).is_consistent())


class DiagnoseTests(DiagnosisTestCase):
    def test_no_information(self):
        result = diagnose(self.kb, "d", "PorosityDefect", [], self.reasoner)
        self.assertTrue(result.consistent)
        self.assertEqual(list(result.candidates), POROSITY_SOURCES)
        self.assertEqual(set(result.entailed) & set(POROSITY_SOURCES), set())

    def test_control_scenario(self):
        # Descartadas las fuentes de equipo, material y subproductos
        result = diagnose(self.kb, "d", "PorosityDefect", NON_PROCESS, self.reasoner)
        self.assertTrue(result.consistent)
        self.assertEqual(result.candidates, (PROCESS_SOURCE,))
        self.assertIn(PROCESS_SOURCE, result.entailed)
        self.assertIn("ProcessInducedDefect", result.entailed)

        reduced = eliminate(self.kb, "d", NON_PROCESS)
        checker = Reasoner(reduced)
        for name in result.entailed:
            self.assertTrue(checker.entails_instance("d", Named(name)), name)
        self.assertEqual(
            ask(reduced, "instance? d (some isInducedBy ProcessParameter)", checker), "true"
        )

    def test_known_superclasses_not_reported(self):
        result = diagnose(self.kb, "d", "PorosityDefect", [], self.reasoner)
        self.assertTrue(self.reasoner.entails_instance("d", Named("InducedDefect")))
        self.assertNotIn("InducedDefect", result.entailed)
        self.assertNotIn("PorosityDefect", result.entailed)
        self.assertEqual(result.entailed, ())

    def test_all_sources_ruled_out(self):
        result = diagnose(self.kb, "d", "PorosityDefect", POROSITY_SOURCES, self.reasoner)
        self.assertFalse(result.consistent)
        self.assertEqual(result.candidates, ())
        self.assertEqual(result.entailed, ())

    def test_precondition(self):
        with self.assertRaises(DiagnosisError) as raised:
            diagnose(self.kb, "pr", "PorosityDefect", [], self.reasoner)
        self.assertEqual(raised.exception.code, "precondition")

    def test_asserted_rule_outs(self):
        # ball1 ya tiene descartadas dos de sus tres fuentes en la ABox
        result = diagnose(self.kb, "ball1", "BallingDefect", [], self.reasoner)
        self.assertEqual(result.candidates, ("BuildChamberEnvironmentalControlInducedDefect",))
        self.assertIn("BuildChamberEnvironmentalControlInducedDefect", result.entailed)
        self.assertIn("EquipmentInducedDefect", result.entailed)

    def test_entailed_stays_within_sources_and_ancestors(self):
        result = diagnose(self.kb, "d", "PorosityDefect", NON_PROCESS, self.reasoner)
        allowed = set(POROSITY_SOURCES)
        for name in POROSITY_SOURCES:
            allowed.update(self.reasoner.subsumers(name))
        self.assertTrue(set(result.entailed) <= allowed)


class LeaveOneOutTests(DiagnosisTestCase):
    def check_bridge(self, defect_class):
        kb = with_defect(self.kb, "x", defect_class)
        reasoner = Reasoner(kb)
        sources = bridge_disjuncts(kb, defect_class)
        for kept in sources:
            with self.subTest(defect_class=defect_class, kept=kept):
                ruled_out = [name for name in sources if name != kept]
                result = diagnose(kb, "x", defect_class, ruled_out, reasoner)
                self.assertTrue(result.consistent)
                self.assertEqual(result.candidates, (kept,))
                self.assertIn(kept, result.entailed)

    def test_porosity(self):
        self.check_bridge("PorosityDefect")

    def test_balling(self):
        self.check_bridge("BallingDefect")


class TraceTests(DiagnosisTestCase):
    def test_candidates_never_grow(self):
        steps = trace(self.kb, "d", "PorosityDefect", NON_PROCESS)
        self.assertEqual(len(steps), len(NON_PROCESS))
        previous = set(POROSITY_SOURCES)
        for step in steps:
            self.assertTrue(set(step.candidates) <= previous)
            previous = set(step.candidates)
        self.assertEqual(steps[-1].candidates, (PROCESS_SOURCE,))
        self.assertEqual(len(steps[0].ruled_out), 1)

    def test_text_report(self):
        result = diagnose(self.kb, "d", "PorosityDefect", NON_PROCESS, self.reasoner)
        text = render_report(result)
        self.assertTrue(text.startswith("defect: d (PorosityDefect)\n"))
        self.assertIn("consistent: true\n", text)
        self.assertIn("candidates (1 of 6):\n  ParameterScanStrategyInducedDefect\n", text)
        self.assertTrue(text.endswith("\n"))

    def test_json_report(self):
        result = diagnose(self.kb, "d", "PorosityDefect", POROSITY_SOURCES, self.reasoner)
        payload = json.loads(render_report(result, FORMAT_JSON))
        self.assertEqual(
            payload, {"defect": "d", "candidates": [], "entailed": [], "consistent": False}
        )

    def test_trace_report_blocks(self):
        steps = trace(self.kb, "d", "PorosityDefect", NON_PROCESS[:2])
        text = render_report(steps)
        self.assertTrue(text.startswith("step 1\ndefect: d"))
        self.assertIn("\nstep 2\n", text)
        self.assertEqual(len(json.loads(render_report(steps, FORMAT_JSON))), 2)
