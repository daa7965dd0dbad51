from django.test import SimpleTestCase, override_settings

from apps.ontology.models import (
    BOTTOM,
    ClassAssertion,
    KnowledgeBase,
    Named,
    Nominal,
    SubClassOf,
    to_gcis,
)
from apps.reasoner.services import Reasoner
from apps.utils.exceptions import OracleError
from apps.utils.helpers import property_runs

from .generators import make_rng, random_kb, random_module
from .services import VERDICT_NO_MODEL, enumerate_models, oracle_consistent

A = Named("A")


class EnumerateModelsTests(SimpleTestCase):
    def test_forced_clash_has_no_models(self):
        kb = KnowledgeBase(
            classes=("A",),
            individuals=("d",),
            axioms=(SubClassOf(A, BOTTOM), ClassAssertion("d", A)),
            origins=("t", "t"),
        )
        self.assertEqual(list(enumerate_models(kb, 3)), [])
        verdict = oracle_consistent(kb, bound=3)
        self.assertFalse(verdict.consistent)
        self.assertEqual(str(verdict), VERDICT_NO_MODEL)

    def test_single_assertion_size_one(self):
        kb = KnowledgeBase(
            classes=("A",), individuals=("d",),
            axioms=(ClassAssertion("d", A),), origins=("t",),
        )
        models = list(enumerate_models(kb, 1))
        self.assertEqual(len(models), 1)
        self.assertEqual(models[0].classes["A"], frozenset({0}))

    def test_counts_with_free_class(self):
        # tamaño 1: A vacío o {0}; tamaño 2 (d -> 0): cuatro extensiones de A
        kb = KnowledgeBase(classes=("A",), individuals=("d",))
        self.assertEqual(len(list(enumerate_models(kb, 2))), 6)

    def test_anonymous_elements_are_not_deduplicated(self):
        # tamaño 2 sin individuos: A = {0} y A = {1} son isomorfos y salen ambos
        kb = KnowledgeBase(classes=("A",))
        sizes = [model.size for model in enumerate_models(kb, 2)]
        self.assertEqual(sizes, [1, 1, 2, 2, 2, 2])

    def test_nominals_are_rejected(self):
        kb = KnowledgeBase(
            classes=("A",), individuals=("d",),
            axioms=(SubClassOf(A, Nominal("d")),), origins=("t",),
        )
        with self.assertRaises(OracleError) as raised:
            list(enumerate_models(kb, 1))
        self.assertEqual(raised.exception.code, "fragment")

    def test_every_model_satisfies_the_kb(self):
        rng = make_rng(3)
        for _ in range(60):
            kb = random_kb(rng)
            for position, model in enumerate(enumerate_models(kb, 2)):
                self.assertTrue(model.is_model_of(kb))
                if position >= 20:
                    break


class AgreementTests(SimpleTestCase):
    def test_tableau_agrees_with_enumeration(self):
        disagreements = []
        for seed in range(property_runs(1000)):
            kb = random_kb(make_rng(seed))
            reasoner = Reasoner(kb)
            if reasoner.is_consistent():
                witness = reasoner.consistency_witness()
                verdict = oracle_consistent(kb, witness=witness)
                if verdict.model is not witness:
                    disagreements.append((seed, "witness is not a model"))
            elif oracle_consistent(kb, bound=2).consistent:
                disagreements.append((seed, "oracle found a model"))
        self.assertEqual(disagreements, [])

    def test_small_models_imply_consistency(self):
        for seed in range(1000, 1000 + property_runs(200)):
            kb = random_kb(make_rng(seed))
            if oracle_consistent(kb, bound=2).consistent:
                self.assertTrue(Reasoner(kb).is_consistent(), seed)

    def test_gci_normalization_preserves_consistency(self):
        for seed in range(2000, 2000 + property_runs(200)):
            kb = random_kb(make_rng(seed))
            normalized = to_gcis(kb)
            self.assertEqual(
                Reasoner(kb).is_consistent(), Reasoner(normalized).is_consistent(), seed
            )
            verdict = oracle_consistent(normalized, bound=2)
            if verdict.consistent:
                self.assertTrue(verdict.model.is_model_of(kb))


class GeneratorTests(SimpleTestCase):
    def test_seeded_generation_is_reproducible(self):
        first = random_kb(make_rng(42))
        second = random_kb(make_rng(42))
        self.assertEqual(first.structure(), second.structure())
        self.assertEqual(
            random_module(make_rng(5)).structure(), random_module(make_rng(5)).structure()
        )

    def test_generated_kbs_stay_in_bounds(self):
        rng = make_rng(9)
        for _ in range(100):
            kb = random_kb(rng)
            self.assertLessEqual(len(kb.classes), 3)
            self.assertLessEqual(len(kb.roles), 2)
            self.assertLessEqual(len(kb.individuals), 2)
            self.assertLessEqual(len(kb.axioms), 4)


class PropertyRunsTests(SimpleTestCase):
    @override_settings(DEFECTONT={"PROPERTY_RUNS": 50})
    def test_runs_are_capped_by_setting(self):
        self.assertEqual(property_runs(1000), 50)
        self.assertEqual(property_runs(20), 20)

    @override_settings(DEFECTONT={"PROPERTY_RUNS": 0})
    def test_at_least_one_run(self):
        self.assertEqual(property_runs(1000), 1)
