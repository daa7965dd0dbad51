import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from apps.assets.services import module_path, pipeline_path, read_golden_text
from apps.linker.loaders import load_root
from apps.reasoner.services import Reasoner
from apps.utils.constants import EXIT_LOGICAL, EXIT_USAGE

ROOT = str(module_path())

NON_PROCESS = ",".join([
    "BeamScanningDeflectionSystemInducedDefect",
    "BuildChamberEnvironmentalControlInducedDefect",
    "PowderHandlingDepositionSystemInducedDefect",
    "ByproductMaterialEjectionInducedDefect",
    "FeedstockMaterialInducedDefect",
])


def run(*args):
    out = StringIO()
    call_command("defectont", *args, stdout=out, stderr=StringIO())
    return out.getvalue()


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.base = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, text):
        path = self.base / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as raised:
            run(*args)
        self.assertEqual(raised.exception.returncode, code)
        return str(raised.exception)


class CheckCommandTests(CommandTestCase):
    def test_assets_are_consistent(self):
        self.assertEqual(run("check", ROOT), "consistent\n")

    def test_inconsistent_exit_code(self):
        path = self.write(
            "bad.dlo", "ontology bad\nclass A\nindividual a\nsubclass A bot\ninstance a A\n"
        )
        self.assertExitCode(EXIT_LOGICAL, "check", path)

    def test_parse_error_has_position(self):
        path = self.write("broken.dlo", "ontology broken\nclass A\nsubclass A (and A\n")
        message = self.assertExitCode(EXIT_USAGE, "check", path)
        self.assertIn("parse error", message)
        self.assertIn("broken.dlo:", message)

    def test_missing_import(self):
        path = self.write("lonely.dlo", "ontology lonely\nimport nowhere\n")
        message = self.assertExitCode(EXIT_USAGE, "check", path)
        self.assertIn("missing-module", message)


class ClassifyCommandTests(CommandTestCase):
    def test_small_taxonomy_matches_golden(self):
        output = run("classify", str(module_path("spatial")))
        self.assertEqual(output, read_golden_text("classify_small.txt"))

    def test_output_is_deterministic(self):
        first = run("classify", str(module_path("spatial")), "--dot")
        second = run("classify", str(module_path("spatial")), "--dot")
        self.assertEqual(first, second)
        self.assertTrue(first.startswith("digraph taxonomy {\n"))
        self.assertIn('"Ball" -> "GeometricEntity";', first)

    def test_json_summary(self):
        summary = json.loads(run("classify", str(module_path("spatial")), "--json"))
        self.assertEqual(summary["unsatisfiable"], [])
        self.assertEqual(summary["classes"], 11)


class QueryCommandTests(CommandTestCase):
    def test_competency_question(self):
        self.assertEqual(run("ask", ROOT, "instance? d PorosityDefect"), "true\n")
        self.assertEqual(run("ask", ROOT, "value? crack hasLength m"), "1.5 m\n")
        self.assertEqual(run("ask", ROOT, "fillers? pl hosts"), "s1\ns2\n")

    def test_query_errors(self):
        self.assertExitCode(EXIT_USAGE, "ask", ROOT, "which? d")
        self.assertExitCode(EXIT_LOGICAL, "ask", ROOT, "value? pr hasLength m")

    def test_realize(self):
        self.assertEqual(run("realize", ROOT, "d"), "InternalPorosityDefect\n")
        self.assertEqual(
            run("realize", ROOT, "ball1"),
            "BuildChamberEnvironmentalControlInducedDefect\nSurfaceBallingDefect\n",
        )


class DiagnoseCommandTests(CommandTestCase):
    def test_control_scenario_report(self):
        output = run("diagnose", ROOT, "d", "PorosityDefect", "--rule-out", NON_PROCESS)
        entailed = output.split("entailed:\n", 1)[1]
        self.assertIn("  ProcessInducedDefect\n", entailed)
        self.assertIn("  ParameterScanStrategyInducedDefect\n", entailed)

    def test_json_report(self):
        payload = json.loads(
            run("diagnose", ROOT, "d", "PorosityDefect", "--rule-out", NON_PROCESS, "--json")
        )
        self.assertEqual(set(payload), {"defect", "candidates", "entailed", "consistent"})
        self.assertEqual(payload["candidates"], ["ParameterScanStrategyInducedDefect"])

    def test_trace_blocks(self):
        output = run(
            "diagnose", ROOT, "d", "PorosityDefect", "--rule-out", NON_PROCESS, "--trace"
        )
        self.assertEqual(output.count("step "), 5)

    def test_precondition_exit_code(self):
        message = self.assertExitCode(EXIT_LOGICAL, "diagnose", ROOT, "pr", "PorosityDefect")
        self.assertIn("precondition", message)


class MergeCommandTests(CommandTestCase):
    def test_pipeline_round_trip(self):
        target = str(self.base / "merged.dlo")
        run(
            "merge", str(pipeline_path("upstream.dlo")),
            "--rename", str(pipeline_path("renames.tsv")),
            "--bridge", str(pipeline_path("equivalences.tsv")),
            "--subclass", str(pipeline_path("subclasses.tsv")),
            "--reparent", str(pipeline_path("reparent.tsv")),
            "-o", target,
        )
        kb = load_root(target)
        self.assertEqual(kb.kind_of("isInfluencedBy"), "role")
        self.assertTrue(Reasoner(kb).is_consistent())
        self.assertEqual(run("check", target), "consistent\n")

    def test_prune_to_stdout(self):
        output = run("merge", ROOT, "--prune-to", str(pipeline_path("porosity_seed.txt")))
        self.assertTrue(output.startswith("ontology defectont\n"))
        self.assertIn("class VoidRegion\n", output)
        self.assertNotIn("class CelsiusTemperature\n", output)

    def test_interchange_export(self):
        output = run("merge", str(module_path("spatial")), "--interchange")
        self.assertTrue(output.startswith("Prefix("))
        self.assertIn("Ontology(<urn:defectont:spatial>", output)


class StatsCommandTests(CommandTestCase):
    def test_text_and_json(self):
        text = run("stats", ROOT)
        self.assertIn("expressivity: ALCHOI(D)\n", text)
        metrics = json.loads(run("stats", ROOT, "--json"))
        self.assertEqual(metrics["axioms"], 141)
        self.assertEqual(metrics["abox"], 27)
