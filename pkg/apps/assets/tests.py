from django.test import SimpleTestCase

from apps.linker.loaders import load_root
from apps.linker.services import (
    bridge_equivalences,
    bridge_subclasses,
    normalize_names,
    prune_to_signature,
    reparent_classes,
)
from apps.ontology.models import (
    And,
    ClassAssertion,
    KnowledgeBase,
    Named,
    kb_from_module,
)
from apps.ontology.parser import EOF, NAME, RPAREN, parse_concept, parse_module, tokenize
from apps.ontology.writer import serialize_module
from apps.oracle.services import oracle_consistent
from apps.reasoner.services import Reasoner
from apps.utils.constants import (
    KIND_CLASS,
    KIND_ROLE,
    ORIGIN_BRIDGE,
    ORIGIN_DESIGN,
    ORIGIN_SUPPLEMENT,
)
from apps.utils.exceptions import ParseError
from apps.utils.helpers import assets_dir, inventory_file

from .inventory import BRIDGED_CLASSES, REQUIRED_ANCHORS, read_inventory, retag
from .services import (
    load_inventory,
    load_knowledge_base,
    module_path,
    pipeline_inputs,
    pipeline_path,
    porosity_seed,
    read_concept_pairs,
    read_golden_text,
    read_prune_expectation,
    read_questions,
)

MODULES = (
    "defectont", "mam", "nist", "onto4add", "spatial",
    "geosparql", "mason", "measure", "sensor", "sample_abox",
)


class AssetsTestCase(SimpleTestCase):
    """Comparte la KB fusionada y su razonador entre los tests de la clase."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.linked = load_root(module_path())
        cls.inventory = read_inventory(inventory_file(), cls.linked)
        cls.kb = retag(cls.linked, cls.inventory)
        cls.reasoner = Reasoner(cls.kb)


class InventoryTests(AssetsTestCase):
    def test_every_axiom_listed_exactly_once(self):
        missing = [
            (module, str(axiom)) for axiom, module in self.linked.tagged_axioms()
            if self.inventory.count(module, axiom) != 1
        ]
        self.assertEqual(missing, [])
        self.assertEqual(len(self.inventory), len(self.linked.axioms))

    def test_required_anchors_present_once(self):
        self.assertEqual(self.inventory.missing_anchors(), [])
        self.assertEqual(self.inventory.duplicated_anchors(), [])
        self.assertEqual(len(REQUIRED_ANCHORS), 35)

    def test_counts_per_module(self):
        counts = self.inventory.per_module()
        self.assertEqual(set(counts), set(MODULES))
        self.assertEqual(counts["mam"], 72)
        self.assertEqual(counts["sample_abox"], 26)
        self.assertEqual(counts["defectont"], 4)

    def test_supplements_carry_a_note(self):
        supplements = self.inventory.supplements()
        self.assertEqual(len(supplements), 13)
        for entry in supplements:
            with self.subTest(axiom=str(entry.axiom)):
                self.assertTrue(entry.note)

    def test_retagged_origins(self):
        bridges = self.kb.axioms_from(ORIGIN_BRIDGE)
        self.assertEqual(len(bridges), 6)
        self.assertEqual(
            sorted(axiom.sub.name for axiom in bridges), sorted(BRIDGED_CLASSES)
        )
        self.assertEqual(len(self.kb.axioms_from(ORIGIN_SUPPLEMENT)), 13)
        self.assertEqual(len(self.kb.axioms_from("sample_abox")), 26)

    def test_services_load_the_same_kb(self):
        kb = load_knowledge_base()
        self.assertEqual(kb.structure(), self.kb.structure())
        self.assertEqual(kb.origins, self.kb.origins)
        self.assertEqual(load_knowledge_base(retagged=False).origins, self.linked.origins)
        self.assertEqual(len(load_inventory(kb)), len(self.inventory))

    def test_inventory_of_a_partial_kb(self):
        # Solo se leen las filas de los módulos enlazados
        small = load_knowledge_base("spatial")
        self.assertEqual(set(small.origins), {"spatial", "geosparql", "mason"})
        self.assertEqual(len(load_inventory(small)), len(small.axioms))


class SourceFileTests(SimpleTestCase):
    def test_every_module_round_trips(self):
        for name in MODULES:
            with self.subTest(module=name):
                module = parse_module(module_path(name).read_text(encoding="utf-8"))
                self.assertEqual(module.name, name)
                again = parse_module(serialize_module(module))
                self.assertTrue(again.same_structure(module))

    def assertReportedOn(self, text, number, path, must_fail):
        try:
            parse_module(text, str(path))
        except ParseError as error:
            self.assertEqual(error.position.line, number)
        else:
            self.assertFalse(must_fail, "la corrupción no produjo error")

    def test_corrupted_line_is_reported(self):
        checked = 0
        for name in MODULES:
            path = module_path(name)
            lines = path.read_text(encoding="utf-8").splitlines()
            for number, line in enumerate(lines, start=1):
                code = line.split("#", 1)[0].rstrip()
                tokens = [token for token in tokenize(code) if token.kind != EOF]
                if not tokens:
                    continue

                def variant(replacement, target=None, code=code, lines=lines, number=number):
                    if target is None:
                        changed = replacement
                    else:
                        start = target.position.column - 1
                        changed = code[:start] + replacement + code[start + len(target.value):]
                    corrupted = list(lines)
                    corrupted[number - 1] = changed
                    return "\n".join(corrupted) + "\n"

                names = [token for token in tokens if token.kind == NAME]
                closing = [token for token in tokens if token.kind == RPAREN]
                with self.subTest(module=name, line=number):
                    self.assertReportedOn(variant(code + " )"), number, path, True)
                    self.assertReportedOn(variant("(", names[-1]), number, path, True)
                    if closing:
                        self.assertReportedOn(variant("", closing[0]), number, path, True)
                    if len(tokens) > 1:
                        self.assertReportedOn(variant("", tokens[1]), number, path, False)
                checked += 1
        self.assertGreater(checked, 200)

    def test_file_layout(self):
        self.assertEqual(
            sorted(path.stem for path in assets_dir().glob("*.dlo")), sorted(MODULES)
        )


class MergedAssetsTests(AssetsTestCase):
    def test_ten_modules_merged(self):
        self.assertEqual(set(self.linked.origins), set(MODULES))

    def test_consistent(self):
        self.assertTrue(self.reasoner.is_consistent())

    def test_signature(self):
        self.assertEqual(self.kb.kind_of("PorosityDefect"), KIND_CLASS)
        self.assertEqual(self.kb.kind_of("isInducedBy"), KIND_ROLE)
        self.assertEqual(self.kb.kind_of("solidState"), "individual")

    def test_no_unsatisfiable_classes(self):
        self.assertEqual(self.reasoner.unsatisfiable_classes(), [])

    def test_cyclic_void_region_terminates(self):
        void = Named("VoidRegion")
        self.assertTrue(self.reasoner.is_satisfiable(void))
        self.assertTrue(
            self.reasoner.entails_subsumption(void, Named("PhysicalObject"))
        )


class GoldenTests(AssetsTestCase):
    def test_subsumptions(self):
        pairs = read_concept_pairs("subsumptions.tsv", self.kb)
        self.assertGreaterEqual(len(pairs), 20)
        for sub, sup in pairs:
            with self.subTest(sub=str(sub), sup=str(sup)):
                self.assertTrue(self.reasoner.entails_subsumption(sub, sup))

    def test_non_subsumptions(self):
        pairs = read_concept_pairs("non_subsumptions.tsv", self.kb)
        self.assertGreaterEqual(len(pairs), 5)
        for sub, sup in pairs:
            with self.subTest(sub=str(sub), sup=str(sup)):
                self.assertFalse(self.reasoner.entails_subsumption(sub, sup))

    def test_unsatisfiable_conjunctions(self):
        for first, second in read_concept_pairs("unsatisfiable.tsv", self.kb):
            with self.subTest(first=str(first), second=str(second)):
                self.assertFalse(self.reasoner.is_satisfiable(And((first, second))))
                self.assertTrue(self.reasoner.is_satisfiable(first))

    def test_small_taxonomy(self):
        taxonomy = Reasoner(load_knowledge_base("spatial")).classify()
        self.assertEqual(taxonomy.render_text(), read_golden_text("classify_small.txt"))

    def test_porosity_prune(self):
        kept, dropped = read_prune_expectation()
        pruned = prune_to_signature(self.kb, porosity_seed(self.kb))
        names = pruned.signature().names()
        self.assertEqual(kept - names, set())
        self.assertEqual(dropped & names, set())
        self.assertTrue(Reasoner(pruned).is_consistent())

    def test_questions_file(self):
        questions = read_questions()
        self.assertEqual(len({ident for ident, _, _ in questions}), len(questions))
        self.assertIn(("CQSe.1", "fillers? pl hosts", "s1\ns2"), questions)


class OracleCrossCheckTests(AssetsTestCase):
    def sub_kb(self, anchors):
        axioms = [entry.axiom for entry in self.inventory if entry.anchor in anchors]
        names = {pair for axiom in axioms for pair in axiom.names()}
        witness = ClassAssertion("x", And((Named("InternalDefect"), Named("SurfaceDefect"))))
        return KnowledgeBase(
            classes=sorted(name for kind, name in names if kind == KIND_CLASS),
            roles=sorted(name for kind, name in names if kind == KIND_ROLE),
            individuals=("x",),
            axioms=axioms + [witness],
            origins=("mam",) * (len(axioms) + 1),
        )

    def test_located_defects_are_disjoint(self):
        kb = self.sub_kb({"def:InternalDefect", "def:SurfaceDefect", "disjoint:regions"})
        self.assertFalse(Reasoner(kb).is_consistent())
        self.assertFalse(oracle_consistent(kb, bound=2).consistent)
        internal, surface = Named("InternalDefect"), Named("SurfaceDefect")
        self.assertFalse(self.reasoner.is_satisfiable(And((internal, surface))))


class PipelineTests(SimpleTestCase):
    def test_merging_and_design_steps(self):
        kb = load_root(pipeline_path("upstream.dlo"))
        inputs = pipeline_inputs()
        kb = normalize_names(kb, inputs["renames"])
        kb = bridge_equivalences(kb, inputs["equivalences"])
        kb = bridge_subclasses(kb, inputs["subclasses"])
        kb = reparent_classes(kb, inputs["moves"])
        self.assertIsNone(kb.kind_of("influencedBy"))
        self.assertEqual(kb.kind_of("isInfluencedBy"), KIND_ROLE)
        self.assertEqual(kb.kind_of("GeometricEntity"), KIND_CLASS)
        self.assertEqual(len(kb.axioms_from(ORIGIN_BRIDGE)), 4)
        self.assertEqual(len(kb.axioms_from(ORIGIN_DESIGN)), 1)

        reasoner = Reasoner(kb)
        self.assertTrue(reasoner.is_consistent())

        def entails(sub, sup):
            return reasoner.entails_subsumption(parse_concept(sub, kb), parse_concept(sup, kb))

        self.assertTrue(entails("Defect", "Physical"))
        self.assertTrue(entails("ObservableCharacteristic", "(not Physical)"))
        self.assertTrue(entails("EquipmentParameter", "Parameter"))
        self.assertFalse(entails("EquipmentParameter", "ProcessParameter"))
        self.assertTrue(entails("(some isInfluencedBy top)", "Defect"))

    def test_seed_resolves_against_the_assets(self):
        kb = load_knowledge_base()
        self.assertEqual(porosity_seed(kb).classes, frozenset({"PorosityDefect"}))

    def test_merged_upstream_classifies(self):
        kb = kb_from_module(parse_module(pipeline_path("upstream.dlo").read_text(encoding="utf-8")))
        taxonomy = Reasoner(kb).classify()
        self.assertTrue(taxonomy.subsumes("EquipmentParameter", "ProcessParameter"))
