import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from apps.ontology.models import (
    TOP,
    EquivalentClasses,
    Named,
    Signature,
    SubClassOf,
)
from apps.ontology.parser import parse_module
from apps.utils.exceptions import LinkError, ParseError

from .loaders import directory_loader, load_root, read_pairs, read_signature, read_triples
from .services import (
    bridge_equivalences,
    bridge_subclasses,
    normalize_names,
    prune_to_signature,
    reparent_classes,
    resolve_imports,
)

SOURCES = {
    "root": (
        "ontology root\nimport left\nimport right\n"
        "class Defect\nclass Shared\nsubclass Defect Shared\n"
    ),
    "left": "ontology left\nimport base\nclass Shared\nclass Left\nsubclass Left Shared\n",
    "right": "ontology right\nimport base\nclass Right\nclass Base\nsubclass Right Base\n",
    "base": (
        "ontology base\nclass Base\nrole hasPart inverse isPartOf\n"
        "subclass Base (all hasPart Base)\n"
    ),
}


def dict_loader(sources):
    modules = {name: parse_module(text, name) for name, text in sources.items()}
    return modules.__getitem__


class ResolveImportsTests(SimpleTestCase):
    def test_single_module(self):
        kb = resolve_imports("base", dict_loader(SOURCES))
        self.assertEqual(len(kb.axioms), 1)
        self.assertEqual(set(kb.origins), {"base"})

    def test_diamond_loaded_once(self):
        kb = resolve_imports("root", dict_loader(SOURCES))
        self.assertEqual(kb.origins.count("base"), 1)
        self.assertEqual(set(kb.classes), {"Defect", "Shared", "Left", "Right", "Base"})
        self.assertEqual(kb.role("hasPart").inverse, "isPartOf")
        self.assertEqual(len(kb.axioms), 4)

    def test_order_independent(self):
        swapped = dict(SOURCES)
        swapped["root"] = SOURCES["root"].replace(
            "import left\nimport right", "import right\nimport left"
        )
        first = resolve_imports("root", dict_loader(SOURCES))
        second = resolve_imports("root", dict_loader(swapped))
        self.assertEqual(first.structure(), second.structure())

    def test_missing_module_names_importer(self):
        sources = {"root": "ontology root\nimport nist\n"}
        with self.assertRaises(LinkError) as caught:
            resolve_imports("root", dict_loader(sources))
        self.assertEqual(caught.exception.code, "missing-module")
        self.assertIn("nist", str(caught.exception))
        self.assertIn("root", str(caught.exception))

    def test_cycle(self):
        sources = {"a": "ontology a\nimport b\n", "b": "ontology b\nimport a\n"}
        with self.assertRaises(LinkError) as caught:
            resolve_imports("a", dict_loader(sources))
        self.assertEqual(caught.exception.code, "import-cycle")
        self.assertIn("a -> b -> a", str(caught.exception))

    def test_kind_clash_across_modules(self):
        sources = {
            "a": "ontology a\nimport b\nclass hosts\n",
            "b": "ontology b\nrole hosts\n",
        }
        with self.assertRaises(LinkError) as caught:
            resolve_imports("a", dict_loader(sources))
        self.assertEqual(caught.exception.code, "kind-clash")


class PruneTests(SimpleTestCase):
    def setUp(self):
        self.kb = resolve_imports("root", dict_loader(SOURCES))

    def test_full_seed_keeps_everything(self):
        pruned = prune_to_signature(self.kb, self.kb.signature())
        self.assertEqual(pruned.structure(), self.kb.structure())

    def test_empty_seed(self):
        pruned = prune_to_signature(self.kb, Signature())
        self.assertTrue(pruned.signature().is_empty())
        self.assertEqual(len(pruned), 0)

    def test_closure_follows_mentions(self):
        pruned = prune_to_signature(self.kb, Signature(classes={"Right"}))
        self.assertEqual(set(pruned.classes), {"Right", "Base"})
        self.assertEqual(set(pruned.role_ids), {"hasPart", "isPartOf"})
        self.assertEqual(len(pruned), 2)

    def test_idempotent_and_monotone(self):
        small = prune_to_signature(self.kb, Signature(classes={"Left"}))
        again = prune_to_signature(small, Signature(classes={"Left"}))
        self.assertEqual(small.structure(), again.structure())
        large = prune_to_signature(self.kb, Signature(classes={"Left", "Right"}))
        self.assertTrue(small.signature().issubset(large.signature()))

    def test_unknown_seed_name(self):
        with self.assertRaises(LinkError) as caught:
            prune_to_signature(self.kb, Signature(classes={"Nope"}))
        self.assertEqual(caught.exception.code, "unknown-name")


class NormalizeTests(SimpleTestCase):
    def setUp(self):
        self.kb = resolve_imports("base", dict_loader(SOURCES))

    def test_rename_role_everywhere(self):
        renamed = normalize_names(self.kb, {"isPartOf": "isPartOfWhole"})
        self.assertEqual(renamed.role("hasPart").inverse, "isPartOfWhole")

    def test_inverse_map_restores_structure(self):
        mapping = {"Base": "GeometricEntity", "hasPart": "hasComponent"}
        back = {new: old for old, new in mapping.items()}
        renamed = normalize_names(self.kb, mapping)
        self.assertIn("GeometricEntity", renamed.classes)
        self.assertEqual(normalize_names(renamed, back).structure(), self.kb.structure())

    def test_empty_map_is_identity(self):
        self.assertIs(normalize_names(self.kb, {}), self.kb)

    def test_collision(self):
        with self.assertRaises(LinkError) as caught:
            normalize_names(self.kb, {"hasPart": "isPartOf"})
        self.assertEqual(caught.exception.code, "collision")

    def test_unknown_old_name(self):
        with self.assertRaises(LinkError) as caught:
            normalize_names(self.kb, {"influencedBy": "isInfluencedBy"})
        self.assertEqual(caught.exception.code, "unknown-name")


class BridgeTests(SimpleTestCase):
    def setUp(self):
        self.kb = resolve_imports("root", dict_loader(SOURCES))

    def test_equivalence_bridge(self):
        bridged = bridge_equivalences(self.kb, [("Shared", "Base")])
        self.assertEqual(
            bridged.axioms_from("bridge"), [EquivalentClasses(Named("Shared"), Named("Base"))]
        )

    def test_empty_bridge_list(self):
        self.assertIs(bridge_equivalences(self.kb, []), self.kb)

    def test_bridge_kind_mismatch(self):
        with self.assertRaises(LinkError) as caught:
            bridge_equivalences(self.kb, [("Shared", "hasPart")])
        self.assertEqual(caught.exception.code, "kind-clash")

    def test_subclass_bridge(self):
        bridged = bridge_subclasses(self.kb, [("Left", "Base")])
        self.assertIn(SubClassOf(Named("Left"), Named("Base")), bridged.axioms)

    def test_reparent(self):
        moved = reparent_classes(self.kb, [("Left", "Shared", "top")])
        self.assertNotIn(SubClassOf(Named("Left"), Named("Shared")), moved.axioms)
        self.assertEqual(moved.axioms_from("design"), [SubClassOf(Named("Left"), TOP)])

    def test_reparent_requires_told_subsumption(self):
        with self.assertRaises(LinkError) as caught:
            reparent_classes(self.kb, [("Left", "Base", "Shared")])
        self.assertEqual(caught.exception.code, "no-subsumption")


class LoaderTests(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.base = Path(self.directory.name)
        for name, text in SOURCES.items():
            (self.base / f"{name}.dlo").write_text(text, encoding="utf-8")

    def tearDown(self):
        self.directory.cleanup()

    def test_load_root_from_sibling_files(self):
        kb = load_root(self.base / "root.dlo")
        self.assertEqual(len(kb.axioms), 4)

    def test_parse_error_carries_file(self):
        (self.base / "broken.dlo").write_text("ontology broken\nclass (\n", encoding="utf-8")
        with self.assertRaises(ParseError) as caught:
            directory_loader(self.base)("broken")
        self.assertIn("broken.dlo:2:7", str(caught.exception))

    def test_tables(self):
        pairs = self.base / "pairs.tsv"
        pairs.write_text("# old\tnew\ninfluencedBy\tisInfluencedBy\n", encoding="utf-8")
        self.assertEqual(read_pairs(pairs), [("influencedBy", "isInfluencedBy")])
        triples = self.base / "moves.tsv"
        triples.write_text("EquipmentParameter\tProcessParameter\ttop\n", encoding="utf-8")
        self.assertEqual(read_triples(triples), [("EquipmentParameter", "ProcessParameter", "top")])
        with self.assertRaises(ParseError):
            read_pairs(triples)

    def test_signature_kinds_inferred(self):
        kb = load_root(self.base / "root.dlo")
        seed = self.base / "seed.txt"
        seed.write_text("Base  # clase\nhasPart\n", encoding="utf-8")
        self.assertEqual(read_signature(seed, kb), Signature(classes={"Base"}, roles={"hasPart"}))
